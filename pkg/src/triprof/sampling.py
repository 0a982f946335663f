"""Bernoulli edge sparsifier and the estimator that inverts the sampling process.

Keeping each edge independently with probability p maps every 3-vertex
configuration to a smaller-or-equal one with known transition probabilities.
The estimator applies the inverse of that transition matrix to the sampled
graph's exact profile, which makes it unbiased. Estimates are computed in
exact rational arithmetic so the configuration total is preserved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import UsageError
from .graph import UndirectedGraph
from .profiles import ProfileVector

# splitmix64 mixing constants
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class SampleParams:
    """Edge-keep probability in (0, 1] and a 64-bit seed."""

    p: float
    seed: int

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise UsageError(f"sampling probability must be in (0, 1], got {self.p}")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("seed must fit in 64 bits")


def _uniform01(seed: int, indices: np.ndarray) -> np.ndarray:
    """Uniform [0,1) value per index, a pure function of (seed, index)."""
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + (indices.astype(np.uint64) + np.uint64(1)) * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def sample_mask(g: UndirectedGraph, params: SampleParams) -> np.ndarray:
    """Per-edge keep decisions; replaying the same seed is bit-identical."""
    return _uniform01(params.seed, np.arange(g.edge_count, dtype=np.int64)) < params.p


def sample_edges(g: UndirectedGraph,
                 params: SampleParams) -> tuple[UndirectedGraph, np.ndarray]:
    """Keep each edge independently; returns (subgraph, mask).

    The subgraph keeps the full vertex set so triple counts stay comparable.
    """
    mask = sample_mask(g, params)
    sub = subgraph_from_mask(g, mask)
    return sub, mask


def subgraph_from_mask(g: UndirectedGraph, mask: np.ndarray) -> UndirectedGraph:
    """Graph with the masked-in edges only, same vertex set and labels."""
    if len(mask) != g.edge_count:
        raise UsageError(f"mask has {len(mask)} entries for {g.edge_count} edges")
    pairs = np.stack([g.edge_u[mask], g.edge_w[mask]], axis=1)
    return UndirectedGraph.from_edges(pairs, vertex_count=g.vertex_count,
                                      labels=g.labels)


def _transition_rows(p: Fraction) -> list[list[Fraction]]:
    q = 1 - p
    return [
        [Fraction(1), q, q * q, q ** 3],
        [Fraction(0), p, 2 * p * q, 3 * p * q * q],
        [Fraction(0), Fraction(0), p * p, 3 * p * p * q],
        [Fraction(0), Fraction(0), Fraction(0), p ** 3],
    ]


def transition_matrix(p: float) -> np.ndarray:
    """4x4 upper-triangular matrix mapping a true profile to the expected sampled one."""
    if not 0 < p <= 1:
        raise UsageError(f"sampling probability must be in (0, 1], got {p}")
    rows = _transition_rows(Fraction(p))
    return np.array([[float(x) for x in row] for row in rows], dtype=np.float64)


def expected_sampled_profile(n: ProfileVector, p: float) -> ProfileVector:
    """Expected profile of the sampled graph: the transition matrix applied to n."""
    if not 0 < p <= 1:
        raise UsageError(f"sampling probability must be in (0, 1], got {p}")
    rows = _transition_rows(Fraction(p))
    vec = [Fraction(x) for x in n.as_tuple()]
    return ProfileVector(*(sum(row[j] * vec[j] for j in range(4)) for row in rows))


def unbiased_estimate(y: ProfileVector, p: float) -> ProfileVector:
    """Invert the sampling process on a sampled graph's exact profile.

    Exact rational arithmetic keeps the estimate total equal to the input
    total; entries may be negative under sampling noise and are reported
    unclamped, since clamping would bias the estimator.
    """
    if not 0 < p <= 1:
        raise UsageError(f"sampling probability must be in (0, 1], got {p}")
    pf = Fraction(p)
    q = 1 - pf
    y0, y1, y2, y3 = (Fraction(v) for v in y.as_tuple())
    x0 = y0 - (q / pf) * y1 + (q * q / pf ** 2) * y2 - (q ** 3 / pf ** 3) * y3
    x1 = y1 / pf - (2 * q / pf ** 2) * y2 + (3 * q * q / pf ** 3) * y3
    x2 = y2 / pf ** 2 - (3 * q / pf ** 3) * y3
    x3 = y3 / pf ** 3
    return ProfileVector(x0, x1, x2, x3)


def estimate_profile(g: UndirectedGraph, params: SampleParams,
                     engine=None) -> tuple[ProfileVector, ProfileVector]:
    """One sampled run: returns (estimate, sampled-graph profile)."""
    from .profiles import compute_profile

    sub, _ = sample_edges(g, params)
    sampled, _ = compute_profile(sub, engine)
    return unbiased_estimate(sampled, params.p), sampled
