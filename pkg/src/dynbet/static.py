"""Static betweenness: augmented SSSP, dependency accumulation, full Brandes.

Scores follow the ordered-pair convention for directed and undirected graphs
alike (no halving), matching the incremental engines. Predecessors are not
stored; backward passes rediscover them by scanning in-neighbors, which
benchmarks faster than maintaining predecessor lists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph

__all__ = [
    "SsspResult",
    "BetweennessState",
    "sssp_augmented",
    "accumulate_dependencies",
    "brandes_betweenness",
]


@dataclass
class SsspResult:
    """One source's augmented shortest-path data.

    ``dist`` uses +inf for unreachable nodes; ``sigma`` counts shortest paths
    (float64, exact up to 2**53); ``settle_order`` lists reached nodes in
    nondecreasing distance.
    """

    source: int
    dist: np.ndarray
    sigma: np.ndarray
    settle_order: np.ndarray


@dataclass
class BetweennessState:
    """Per-node betweenness scores, ordered-pair convention."""

    scores: np.ndarray

    def copy(self) -> "BetweennessState":
        return BetweennessState(self.scores.copy())

    def max_abs_diff(self, other: "BetweennessState") -> float:
        return float(np.max(np.abs(self.scores - other.scores))) if len(self.scores) else 0.0


def sssp_augmented(graph: Graph, s: int) -> SsspResult:
    """Exact distances and path counts from s (BFS if unit-weight, else Dijkstra)."""
    n = graph.n
    op, oi, ow = graph.out_arrays()
    dist = np.empty(n, dtype=np.float64)
    sigma = np.empty(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    cnt = _kernels.kern().sssp(op, oi, ow, n, s, graph.unit, dist, sigma, order)
    return SsspResult(s, dist, sigma, order[:cnt].copy())


def accumulate_dependencies(graph: Graph, res: SsspResult) -> np.ndarray:
    """One-side dependencies delta_{s.}(v) from a settled SSSP."""
    n = graph.n
    ip, ii, iw = graph.in_arrays()
    delta = np.empty(n, dtype=np.float64)
    _kernels.kern().accumulate(ip, ii, iw, n, res.source, graph.unit, res.dist,
                               res.sigma, res.settle_order, len(res.settle_order),
                               delta)
    return delta


def brandes_betweenness(graph: Graph) -> BetweennessState:
    """Full static betweenness: n augmented SSSPs + dependency accumulation."""
    n = graph.n
    op, oi, ow = graph.out_arrays()
    ip, ii, iw = graph.in_arrays()
    scores = np.empty(n, dtype=np.float64)
    _kernels.kern().static_pass(op, oi, ow, ip, ii, iw, n, graph.unit, scores)
    return BetweennessState(scores)
