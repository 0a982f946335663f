"""Executable sparsifier analysis: per-edge extremes, feasibility conditions, and
the indicator polynomials whose concentration drives the sampling guarantee.

The polynomial evaluator enumerates the original graph's lone edges, wedges,
and triangles explicitly, so it is deliberately desk-scale; callers can cap
the wedge budget. Everything here is pure integer or float arithmetic over an
immutable graph plus a sample mask.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .graph import UndirectedGraph
from .profiles import EdgeScalars, ProfileVector, _exact_sum, scatter_edge_scalars

A1 = 8.0
A2 = 8.0 ** 2 * math.sqrt(2.0)
A3 = 8.0 ** 3 * math.sqrt(6.0)


@dataclass(frozen=True)
class EdgeExtremes:
    """Largest number of lone-edge triples, wedges, and triangles on any one edge."""

    alpha: int
    beta: int
    delta: int


def edge_extremes(g: UndirectedGraph, scalars: EdgeScalars | None = None,
                  engine=None) -> EdgeExtremes:
    """Maxima of the per-edge scalars over all edges."""
    if g.edge_count == 0:
        raise UsageError("edge extremes are undefined for an empty edge set")
    if scalars is None:
        scalars = scatter_edge_scalars(g, engine)
    return EdgeExtremes(
        alpha=int(scalars.iso.max()),
        beta=int((scalars.wedge_at_u + scalars.wedge_at_w).max()),
        delta=int(scalars.tri.max()),
    )


@dataclass(frozen=True)
class TermTables:
    """Edge-id tables for every lone-edge triple, wedge, and triangle of a graph."""

    n0: int
    iso_weight: np.ndarray   # per edge: lone-edge triples whose edge it is
    wedge_e1: np.ndarray
    wedge_e2: np.ndarray
    tri_e1: np.ndarray
    tri_e2: np.ndarray
    tri_e3: np.ndarray

    @property
    def wedge_count(self) -> int:
        return len(self.wedge_e1)

    @property
    def triangle_count(self) -> int:
        return len(self.tri_e1)


def census_terms(g: UndirectedGraph, max_wedges: int | None = None) -> TermTables:
    """Enumerate the indicator-term structure of a graph once, for reuse across masks."""
    n, m = g.vertex_count, g.edge_count
    edge_key = {}
    for e in range(m):
        edge_key[(int(g.edge_u[e]), int(g.edge_w[e]))] = e

    tri_edges: list[tuple[int, int, int]] = []
    tri_per_edge = np.zeros(m, dtype=np.int64)
    for e in range(m):
        a, b = int(g.edge_u[e]), int(g.edge_w[e])
        na, nb = g.neighbors(a), g.neighbors(b)
        i = j = 0
        while i < len(na) and j < len(nb):
            x, y = na[i], nb[j]
            if x == y:
                c = int(x)
                tri_per_edge[e] += 1
                if c > b:  # each triangle recorded once, at its sorted orientation
                    tri_edges.append((e, edge_key[(a, c)], edge_key[(b, c)]))
                i += 1
                j += 1
            elif x < y:
                i += 1
            else:
                j += 1

    wedge_e1: list[int] = []
    wedge_e2: list[int] = []
    for c in range(n):
        nb = g.neighbors(c)
        for i in range(len(nb)):
            x = int(nb[i])
            ex = edge_key[(min(c, x), max(c, x))]
            for j in range(i + 1, len(nb)):
                y = int(nb[j])
                if g.has_edge(x, y):
                    continue
                wedge_e1.append(ex)
                wedge_e2.append(edge_key[(min(c, y), max(c, y))])
                if max_wedges is not None and len(wedge_e1) > max_wedges:
                    raise UsageError(
                        f"wedge count exceeds the configured budget of {max_wedges}")

    deg = g.degrees
    iso_weight = (n - (deg[g.edge_u] + deg[g.edge_w] - tri_per_edge)).astype(np.int64)
    total = math.comb(n, 3)
    n1 = _exact_sum(iso_weight)
    n2 = len(wedge_e1)
    n3 = len(tri_edges)
    tri_arr = np.array(tri_edges, dtype=np.int64).reshape(-1, 3)
    return TermTables(
        n0=total - n1 - n2 - n3,
        iso_weight=iso_weight,
        wedge_e1=np.array(wedge_e1, dtype=np.int64),
        wedge_e2=np.array(wedge_e2, dtype=np.int64),
        tri_e1=tri_arr[:, 0],
        tri_e2=tri_arr[:, 1],
        tri_e3=tri_arr[:, 2],
    )


@dataclass(frozen=True)
class PolynomialValues:
    """Exact values of the indicator polynomials on one mask."""

    y0: int
    y1: int
    y2: int
    y3: int
    s1: int
    d1: int
    d2: int
    t1: int
    t2: int

    def identity_residuals(self) -> tuple[int, int]:
        """Residuals of the two decomposition identities; zero when exact."""
        r1 = self.y1 - (self.s1 + self.d1 - 2 * self.d2 + self.t1 - 2 * self.t2 + 3 * self.y3)
        r2 = self.y2 - (self.d2 + self.t2 - 3 * self.y3)
        return r1, r2

    def as_json(self) -> dict:
        return {k: int(getattr(self, k))
                for k in ("y0", "y1", "y2", "y3", "s1", "d1", "d2", "t1", "t2")}


def evaluate_polynomials(g: UndirectedGraph, mask: np.ndarray,
                         terms: TermTables | None = None) -> PolynomialValues:
    """Evaluate every polynomial on one sample mask against the original graph."""
    if len(mask) != g.edge_count:
        raise UsageError(f"mask has {len(mask)} entries for {g.edge_count} edges")
    if terms is None:
        terms = census_terms(g)
    t = np.asarray(mask, dtype=np.int64)
    u = 1 - t

    s1 = int(terms.iso_weight @ t) if g.edge_count else 0
    y0 = terms.n0 + (int(terms.iso_weight @ u) if g.edge_count else 0)
    y1 = s1

    a, b = t[terms.wedge_e1], t[terms.wedge_e2]
    ua, ub = 1 - a, 1 - b
    d1 = int(np.sum(a + b))
    d2 = int(np.sum(a * b))
    y0 += int(np.sum(ua * ub))
    y1 += int(np.sum(ua * b + ub * a))
    y2 = d2

    ta, tb, tc = t[terms.tri_e1], t[terms.tri_e2], t[terms.tri_e3]
    va, vb, vc = 1 - ta, 1 - tb, 1 - tc
    t1 = int(np.sum(ta + tb + tc))
    t2 = int(np.sum(ta * tb + tb * tc + tc * ta))
    y3 = int(np.sum(ta * tb * tc))
    y0 += int(np.sum(va * vb * vc))
    y1 += int(np.sum(ta * vb * vc + tb * va * vc + tc * va * vb))
    y2 += int(np.sum(ta * tb * vc + tb * tc * va + ta * tc * vb))

    return PolynomialValues(y0, y1, y2, y3, s1, d1, d2, t1, t2)


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    lhs: float | None
    rhs: float
    satisfied: bool
    note: str | None = None

    def as_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "satisfied": self.satisfied, "note": self.note}


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of the four sampling-feasibility inequalities."""

    conditions: tuple[ConditionCheck, ...]
    feasible: bool
    p: float
    epsilon: float
    gamma: float
    log_base: float
    error_bound: float
    confidence: float
    a1: float = A1
    a2: float = A2
    a3: float = A3

    def as_json(self) -> dict:
        return {
            "conditions": [c.as_json() for c in self.conditions],
            "feasible": self.feasible,
            "p": self.p,
            "epsilon": self.epsilon,
            "gamma": self.gamma,
            "log_base": self.log_base,
            "error_bound": self.error_bound,
            "confidence": self.confidence,
            "constants": {"a1": self.a1, "a2": self.a2, "a3": self.a3},
        }


def _ratio_condition(name: str, numerator: float, denom_terms: list[tuple[float, int]],
                     rhs: float) -> ConditionCheck:
    """Condition of form numerator / max(denominator terms) >= rhs.

    A denominator term with a zero count is unsatisfiable as written, so the
    condition is reported vacuous-infeasible instead of dividing by zero.
    """
    for term, count in denom_terms:
        if count == 0:
            return ConditionCheck(name, None, rhs, False,
                                  note="vacuous: a required count is zero")
    denom = max(term for term, _ in denom_terms)
    if denom == 0:
        return ConditionCheck(name, None, rhs, True,
                              note="denominator zero: no extreme shares the edge")
    return ConditionCheck(name, numerator / denom, rhs, numerator / denom >= rhs)


def check_theorem_conditions(profile: ProfileVector, extremes: EdgeExtremes,
                             m: int, p: float, epsilon: float, gamma: float, *,
                             log_base: float = math.e,
                             form: str = "final") -> TheoremReport:
    """Evaluate the four sampling-feasibility inequalities for (p, epsilon, gamma).

    ``form="final"`` is the simplified system; ``form="prefinal"`` keeps the
    redundant max-terms that the simplification drops.
    """
    if not 0 < p <= 1:
        raise UsageError(f"sampling probability must be in (0, 1], got {p}")
    if epsilon <= 0 or gamma <= 0:
        raise UsageError("epsilon and gamma must be positive")
    if m < 1:
        raise UsageError("the condition system needs at least one edge")
    if form not in ("final", "prefinal"):
        raise UsageError(f"unknown condition form {form!r}")

    n0, n1, n2, n3 = (int(x) for x in profile.as_tuple())
    alpha, beta, delta = extremes.alpha, extremes.beta, extremes.delta
    logm = math.log(m) / math.log(log_base)
    rhs1 = A3 ** 2 * ((2 + gamma) * logm) ** 6 / epsilon ** 2
    rhs2 = rhs1
    rhs3 = A1 ** 2 * (gamma * logm) ** 2 / epsilon ** 2
    rhs4 = A2 ** 2 * ((1 + gamma) * logm) ** 4 / epsilon ** 2

    worst = max(alpha, beta, delta)
    if worst == 0:
        cond1 = ConditionCheck("empty-count-vs-extremes", None, rhs1, False,
                               note="vacuous: no edge carries any subgraph")
    else:
        cond1 = ConditionCheck("empty-count-vs-extremes", n0 / (3 * worst), rhs1,
                               n0 / (3 * worst) >= rhs1)

    cond2 = _ratio_condition(
        "triangle-sampling-rate", p,
        [(n3 ** (-1 / 3) if n3 else 0.0, n3),
         (delta / n3 if n3 else 0.0, n3)],
        rhs2)

    if form == "final":
        cond3 = _ratio_condition(
            "lone-edge-sampling-rate", p,
            [(alpha / n1 if n1 else 0.0, n1)],
            rhs3)
        cond4 = _ratio_condition(
            "wedge-sampling-rate", p,
            [(beta / n2 if n2 else 0.0, n2),
             (n2 ** (-1 / 2) if n2 else 0.0, n2)],
            rhs4)
    else:
        cond3 = _ratio_condition(
            "lone-edge-sampling-rate", p,
            [(alpha / n1 if n1 else 0.0, n1),
             (beta / (2 * n2) if n2 else 0.0, n2),
             (delta / (3 * n3) if n3 else 0.0, n3)],
            rhs3)
        cond4 = _ratio_condition(
            "wedge-sampling-rate", p,
            [(beta / n2 if n2 else 0.0, n2),
             (2 * delta / (3 * n3) if n3 else 0.0, n3),
             (n2 ** (-1 / 2) if n2 else 0.0, n2),
             (n3 ** (-1 / 2) if n3 else 0.0, n3)],
            rhs4)

    conditions = (cond1, cond2, cond3, cond4)
    total = profile.total()
    return TheoremReport(
        conditions=conditions,
        feasible=all(c.satisfied for c in conditions),
        p=p, epsilon=epsilon, gamma=gamma, log_base=log_base,
        error_bound=12.0 * epsilon * float(total),
        confidence=1.0 - m ** (-gamma),
    )
