"""Exact per-vertex and global 3-profiles via per-edge scatter and vertex gather.

The scatter computes, for every edge {u, w}: the number of triangles on the
edge, the wedges centered at each endpoint through the edge, and the vertices
isolated from both endpoints. The gather turns those scalars into each
vertex's six-way triple census, and the global profile is one third of the
vertex sums. All arithmetic is exact integer arithmetic, so results are
independent of reduction order.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .engine import Engine, endpoint_sums
from .errors import IntegrityError
from .graph import UndirectedGraph


@dataclass(frozen=True)
class ProfileVector:
    """Counts of 3-vertex configurations: empty, one edge, wedge, triangle.

    Exact profiles carry ints; estimates carry reals (possibly negative).
    """

    n0: object
    n1: object
    n2: object
    n3: object

    def as_tuple(self) -> tuple:
        return (self.n0, self.n1, self.n2, self.n3)

    def as_floats(self) -> tuple[float, float, float, float]:
        return tuple(float(x) for x in self.as_tuple())

    def total(self):
        return self.n0 + self.n1 + self.n2 + self.n3

    def as_json(self) -> dict:
        def num(x):
            return int(x) if isinstance(x, int) else float(x)
        return {"n0": num(self.n0), "n1": num(self.n1),
                "n2": num(self.n2), "n3": num(self.n3)}


@dataclass(frozen=True)
class EdgeScalars:
    """Per-edge scatter results, one array entry per canonical edge.

    tri[e]         triangles containing edge e
    wedge_at_u[e]  wedges centered at the smaller endpoint through e
    wedge_at_w[e]  wedges centered at the larger endpoint through e
    iso[e]         vertices adjacent to neither endpoint
    """

    tri: np.ndarray
    wedge_at_u: np.ndarray
    wedge_at_w: np.ndarray
    iso: np.ndarray

    def row(self, e: int) -> tuple[int, int, int, int]:
        return (int(self.tri[e]), int(self.wedge_at_u[e]),
                int(self.wedge_at_w[e]), int(self.iso[e]))


@dataclass(frozen=True)
class LocalProfile:
    """Per-vertex triple census split by the vertex's role, arrays of length |V|.

    n0    triples at v with no edges
    n1_e  v is an endpoint of the lone edge
    n1_d  v is disconnected from the lone edge
    n2_e  v is a wedge endpoint
    n2_c  v is a wedge center
    n3    triangles at v
    """

    n0: np.ndarray
    n1_e: np.ndarray
    n1_d: np.ndarray
    n2_e: np.ndarray
    n2_c: np.ndarray
    n3: np.ndarray

    def row(self, v: int) -> tuple[int, int, int, int, int, int]:
        return (int(self.n0[v]), int(self.n1_e[v]), int(self.n1_d[v]),
                int(self.n2_e[v]), int(self.n2_c[v]), int(self.n3[v]))


def _exact_sum(arr: np.ndarray) -> int:
    """Sum an integer array without silent 64-bit overflow."""
    if arr.size == 0:
        return 0
    hi = int(np.abs(arr).max())
    if hi and arr.size > (2 ** 62) // hi:
        return int(arr.sum(dtype=object))
    return int(arr.sum(dtype=np.int64))


def edge_triangle_counts(g: UndirectedGraph, engine: Engine | None = None) -> np.ndarray:
    """Triangles containing each edge, i.e. the common-neighbor count of its endpoints.

    Computed per row-aligned edge chunk as a sparse product masked to the
    adjacency pattern, which aggregates all sorted-intersection work into
    vectorized kernels.
    """
    engine = engine or Engine()
    m = g.edge_count
    tri = np.zeros(m, dtype=np.int64)
    if m == 0:
        return tri
    adj = g.sparse_adjacency()
    indptr = g.indptr
    edge_pos_u = g.edge_pos_u

    def run(e_lo: int, e_hi: int) -> None:
        # chunks are row-aligned, so the first edge's smaller endpoint opens the row span
        r_lo = int(g.edge_u[e_lo])
        r_hi = int(g.edge_u[e_hi - 1]) + 1
        sub = adj[r_lo:r_hi]
        counts = (sub @ adj).multiply(sub).tocsr()
        aligned = counts + sub  # restores zero-count edges; pattern == sub pattern
        aligned.sort_indices()
        local = edge_pos_u[e_lo:e_hi] - indptr[r_lo]
        tri[e_lo:e_hi] = aligned.data[local].astype(np.int64) - 1

    bounds = engine.edge_chunk_bounds(g)
    engine.run_chunks(bounds, run)
    return tri


def scatter_edge_scalars(g: UndirectedGraph, engine: Engine | None = None) -> EdgeScalars:
    """Per-edge scalars: triangle count, both directional wedge counts, isolated count."""
    engine = engine or Engine()
    start = time.perf_counter()
    tri = edge_triangle_counts(g, engine)
    deg = g.degrees
    du = deg[g.edge_u]
    dw = deg[g.edge_w]
    wedge_at_u = du - tri - 1
    wedge_at_w = dw - tri - 1
    iso = g.vertex_count - (du + dw - tri)
    engine.record("scatter:edge-scalars", time.perf_counter() - start,
                  bytes_scattered=g.edge_count * 4 * 8)
    return EdgeScalars(tri, wedge_at_u, wedge_at_w, iso)


def _halved(sums: np.ndarray, what: str, g: UndirectedGraph) -> np.ndarray:
    odd = np.flatnonzero(sums % 2)
    if odd.size:
        v = int(odd[0])
        raise IntegrityError(
            f"odd {what} sum at vertex {g.label_of(v)} (id {v}): {int(sums[v])}")
    return sums // 2


def gather_local_profiles(g: UndirectedGraph, scalars: EdgeScalars,
                          engine: Engine | None = None) -> LocalProfile:
    """Accumulate edge scalars at each endpoint into the six local counts.

    Centers halve their own-side wedge sums (each centered wedge is seen from
    both of its edges), endpoints sum the far-side scalars, and triangle sums
    are halved for the same double-counting reason.
    """
    engine = engine or Engine()
    start = time.perf_counter()
    n, m = g.vertex_count, g.edge_count
    sum_tri = endpoint_sums(g, scalars.tri, scalars.tri)
    sum_own = endpoint_sums(g, scalars.wedge_at_u, scalars.wedge_at_w)
    sum_far = endpoint_sums(g, scalars.wedge_at_w, scalars.wedge_at_u)
    sum_iso = endpoint_sums(g, scalars.iso, scalars.iso)

    n3 = _halved(sum_tri, "triangle", g)
    n2_c = _halved(sum_own, "centered-wedge", g)
    n2_e = sum_far
    n1_e = sum_iso
    n1_d = m - g.degrees - n3 - n2_e
    bad = np.flatnonzero(n1_d < 0)
    if bad.size:
        v = int(bad[0])
        raise IntegrityError(
            f"negative detached-edge count at vertex {g.label_of(v)} (id {v})")
    triples_per_vertex = math.comb(n - 1, 2) if n >= 1 else 0
    n0 = triples_per_vertex - n1_e - n1_d - n2_e - n2_c - n3
    bad = np.flatnonzero(n0 < 0)
    if bad.size:
        v = int(bad[0])
        raise IntegrityError(
            f"negative empty-triple count at vertex {g.label_of(v)} (id {v})")
    engine.record("gather:local-profiles", time.perf_counter() - start,
                  bytes_gathered=2 * m * 4 * 8)
    return LocalProfile(n0, n1_e, n1_d, n2_e, n2_c, n3)


def global_profile_from_local(locals_: LocalProfile) -> ProfileVector:
    """Global profile as one third of the vertex sums (each triple has 3 vertices)."""
    sums = [
        _exact_sum(locals_.n0),
        _exact_sum(locals_.n1_e) + _exact_sum(locals_.n1_d),
        _exact_sum(locals_.n2_e) + _exact_sum(locals_.n2_c),
        _exact_sum(locals_.n3),
    ]
    out = []
    for i, s in enumerate(sums):
        if s % 3:
            raise IntegrityError(f"vertex sum for profile entry {i} not divisible by 3: {s}")
        out.append(s // 3)
    return ProfileVector(*out)


def compute_profile(g: UndirectedGraph,
                    engine: Engine | None = None) -> tuple[ProfileVector, LocalProfile]:
    """Full pipeline: scatter, gather, aggregate."""
    engine = engine or Engine()
    scalars = scatter_edge_scalars(g, engine)
    locals_ = gather_local_profiles(g, scalars, engine)
    return global_profile_from_local(locals_), locals_


def count_triangles_only(g: UndirectedGraph,
                         engine: Engine | None = None) -> tuple[np.ndarray, int]:
    """Per-vertex and global triangle counts, skipping all non-triangle scalars.

    Baseline for the runtime-overhead comparison; its n3 values always match
    the full pipeline's.
    """
    engine = engine or Engine()
    start = time.perf_counter()
    tri = edge_triangle_counts(g, engine)
    n, m = g.vertex_count, g.edge_count
    per_vertex = _halved(endpoint_sums(g, tri, tri), "triangle", g)
    total = _exact_sum(tri)
    if total % 3:
        raise IntegrityError(f"edge triangle sum not divisible by 3: {total}")
    engine.record("triangles-only", time.perf_counter() - start,
                  bytes_scattered=m * 8, bytes_gathered=2 * m * 8)
    return per_vertex, total // 3
