"""Ego 3-profiles: the triple census of each center's neighborhood-induced subgraph.

Two routes produce identical results. The serial route materializes each
neighborhood subgraph and runs the profile pipeline on it. The parallel route
never builds the subgraphs: shared per-edge scalars feed three pivot sums per
center, a per-edge clique count supplies the one count the pivots cannot
separate, and the remaining entries follow by exact arithmetic.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .engine import Engine
from .errors import IntegrityError, UsageError
from .graph import EdgeRef, UndirectedGraph, common_neighbors, induced_subgraph
from .profiles import EdgeScalars, compute_profile, scatter_edge_scalars


@dataclass(frozen=True)
class EgoProfile:
    """Counts of a center's neighbor triples with 0, 1, 2, 3 edges among them."""

    f0: int
    f1: int
    f2: int
    f3: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.f0, self.f1, self.f2, self.f3)

    def total(self) -> int:
        return self.f0 + self.f1 + self.f2 + self.f3


@dataclass(frozen=True)
class PivotSums:
    """Per-center pivot accumulators over incident edges.

    p1 = sum of C(own-side wedge count, 2)  -> 3*f0 + f1
    p2 = sum of C(triangle count, 2)        -> f2 + 3*f3
    p3 = sum of own-side wedge * triangle   -> 2*f1 + 2*f2
    """

    p1: int
    p2: int
    p3: int


def _dedup_centers(g: UndirectedGraph, centers) -> list[int]:
    seen: dict[int, None] = {}
    for c in centers:
        c = int(c)
        if not 0 <= c < g.vertex_count:
            raise UsageError(f"center out of range: {c}")
        seen.setdefault(c, None)
    return list(seen)


def ego_serial(g: UndirectedGraph, centers, engine: Engine | None = None) -> dict[int, EgoProfile]:
    """One center at a time: induce the neighborhood subgraph and profile it."""
    engine = engine or Engine()
    start = time.perf_counter()
    out: dict[int, EgoProfile] = {}
    for v in _dedup_centers(g, centers):
        sub = induced_subgraph(g, g.neighbors(v))
        prof, _ = compute_profile(sub, Engine(workers=1))
        out[v] = EgoProfile(prof.n0, prof.n1, prof.n2, prof.n3)
    engine.record("ego-serial", time.perf_counter() - start)
    return out


def per_edge_clique_count(g: UndirectedGraph, e: EdgeRef, cn) -> int:
    """4-cliques on an edge: common-neighbor pairs that are edges of one endpoint's
    neighborhood, membership tested by sorted lookup."""
    both = common_neighbors(g, e.u, e.w)
    count = 0
    for i in range(len(both)):
        for j in range(i + 1, len(both)):
            pair = (both[i], both[j])
            k = bisect_left(cn, pair)
            if k < len(cn) and cn[k] == pair:
                count += 1
    return count


def ego_parallel(g: UndirectedGraph, centers, engine: Engine | None = None,
                 scalars: EdgeScalars | None = None) -> dict[int, EgoProfile]:
    """All centers in shared phases; identical results to ego_serial.

    Common-neighbor lists are materialized only for edges incident to a
    requested center, which bounds memory by the total neighborhood edge count.
    """
    engine = engine or Engine()
    order = _dedup_centers(g, centers)
    if scalars is None:
        scalars = scatter_edge_scalars(g, engine)

    center_mask = np.zeros(g.vertex_count, dtype=bool)
    center_mask[order] = True
    relevant = np.flatnonzero(center_mask[g.edge_u] | center_mask[g.edge_w])

    # Scatter: common-neighbor lists for center-incident edges.
    start = time.perf_counter()
    cn_lists: dict[int, list[int]] = {}
    list_bytes = 0
    for e in relevant:
        lst = common_neighbors(g, int(g.edge_u[e]), int(g.edge_w[e]))
        cn_lists[int(e)] = lst
        list_bytes += 8 * len(lst)
    engine.record("ego:scatter-neighbor-lists", time.perf_counter() - start,
                  bytes_scattered=list_bytes)

    # Gather: pivot sums and each center's neighborhood edge list.
    start = time.perf_counter()
    pivots: dict[int, PivotSums] = {}
    neighborhood_edges: dict[int, list[tuple[int, int]]] = {}
    gathered = 0
    for v in order:
        lo, hi = g.indptr[v], g.indptr[v + 1]
        eids = g.pos_to_edge[lo:hi]
        own = np.where(g.edge_u[eids] == v,
                       scalars.wedge_at_u[eids], scalars.wedge_at_w[eids])
        tri = scalars.tri[eids]
        p1 = int(np.sum(own * (own - 1) // 2))
        p2 = int(np.sum(tri * (tri - 1) // 2))
        p3 = int(np.sum(own * tri))
        pivots[v] = PivotSums(p1, p2, p3)
        pairs: set[tuple[int, int]] = set()
        for p in range(lo, hi):
            a = int(g.indices[p])
            for x in cn_lists[int(g.pos_to_edge[p])]:
                pairs.add((a, x) if a < x else (x, a))
        neighborhood_edges[v] = sorted(pairs)
        gathered += 16 * len(pairs) + 8 * 3 * (hi - lo)
    engine.record("ego:gather-pivots", time.perf_counter() - start,
                  bytes_gathered=int(gathered))

    # Scatter: per-edge 4-clique counts against one endpoint's neighborhood list.
    start = time.perf_counter()
    n4: dict[int, int] = {}
    for e in relevant:
        ref = g.edge_ref(int(e))
        host = ref.u if center_mask[ref.u] else ref.w
        n4[int(e)] = per_edge_clique_count(g, ref, neighborhood_edges[host])
    engine.record("ego:scatter-clique-counts", time.perf_counter() - start,
                  bytes_scattered=8 * len(relevant))

    # Gather: solve for the four counts per center.
    start = time.perf_counter()
    out: dict[int, EgoProfile] = {}
    for v in order:
        eids = g.pos_to_edge[g.indptr[v]:g.indptr[v + 1]]
        n4_sum = sum(n4[int(e)] for e in eids)
        piv = pivots[v]
        out[v] = _solve_pivots(g, v, piv, n4_sum)
    engine.record("ego:gather-cliques", time.perf_counter() - start,
                  bytes_gathered=8 * sum(g.degree(v) for v in order))
    return out


def _solve_pivots(g: UndirectedGraph, v: int, piv: PivotSums, n4_sum: int) -> EgoProfile:
    name = f"center {g.label_of(v)} (id {v})"
    if n4_sum % 3:
        raise IntegrityError(f"4-clique sum not divisible by 3 at {name}")
    f3 = n4_sum // 3
    f2 = piv.p2 - 3 * f3
    if piv.p3 % 2:
        raise IntegrityError(f"odd wedge-triangle pivot at {name}")
    f1 = piv.p3 // 2 - f2
    rem = piv.p1 - f1
    if rem % 3:
        raise IntegrityError(f"indivisible endpoint pivot at {name}")
    f0 = rem // 3
    if min(f0, f1, f2, f3) < 0:
        raise IntegrityError(f"negative neighborhood count at {name}")
    return EgoProfile(f0, f1, f2, f3)
