"""Brute-force verification oracles.

``oracle_betweenness`` recomputes betweenness from the definition on top of
cubic all-pairs relaxation; it shares no code with the Brandes path (even the
tolerance helper is local) so the two can check each other. Intended for
small graphs (Theta(n^3) work).

``oracle_affected_pairs`` diffs two full augmented-APSP snapshots around one
incremental update, giving the exact affected-pair set the staged update
must reproduce.
"""

from __future__ import annotations

import numpy as np

from .apsp import init_apsp
from .graph import Graph
from .static import BetweennessState

__all__ = ["oracle_betweenness", "oracle_affected_pairs"]

_TOL = 1e-9


def _eq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    with np.errstate(invalid="ignore"):
        out = np.abs(a - b) <= _TOL * scale
    both_inf = np.isinf(a) & np.isinf(b)
    return np.where(np.isinf(a) | np.isinf(b), both_inf, out)


def _dense_weights(graph: Graph) -> np.ndarray:
    n = graph.n
    w = np.full((n, n), np.inf)
    np.fill_diagonal(w, 0.0)
    op, oi, ow = graph.out_arrays()
    for u in range(n):
        for k in range(op[u], op[u + 1]):
            w[u, oi[k]] = ow[k]
    return w


def oracle_betweenness(graph: Graph) -> BetweennessState:
    """Definition-level betweenness via cubic relaxation and penultimate-node
    path counting: c_B(v) = sum over s != v != t of sigma_sv * sigma_vt / sigma_st
    restricted to d(s,v) + d(v,t) = d(s,t)."""
    n = graph.n
    if n == 0:
        return BetweennessState(np.zeros(0))
    d = _dense_weights(graph)
    for k in range(n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)

    def close(a: float, b: float) -> bool:
        m = max(1.0, abs(a), abs(b))
        return abs(a - b) <= _TOL * m

    sigma = np.zeros((n, n))
    ip, ii, iw = graph.in_arrays()
    for s in range(n):
        sigma[s, s] = 1.0
        reach = [t for t in range(n) if t != s and np.isfinite(d[s, t])]
        reach.sort(key=lambda t: d[s, t])
        for t in reach:
            acc = 0.0
            # penultimate nodes: in-neighbors y with d(s,y) + w(y,t) = d(s,t)
            for k in range(ip[t], ip[t + 1]):
                y = int(ii[k])
                cand = d[s, y] + iw[k]
                if np.isfinite(cand) and close(cand, d[s, t]):
                    acc += sigma[s, y]
            sigma[s, t] = acc

    scores = np.zeros(n)
    with np.errstate(invalid="ignore", divide="ignore"):
        for v in range(n):
            through = d[:, v][:, None] + d[v, None, :]
            on_path = _eq(through, d) & np.isfinite(d) & (sigma > 0)
            num = sigma[:, v][:, None] * sigma[v, None, :]
            frac = np.where(on_path, num / np.where(sigma > 0, sigma, 1.0), 0.0)
            frac[v, :] = 0.0
            frac[:, v] = 0.0
            np.fill_diagonal(frac, 0.0)
            scores[v] = frac.sum()
    return BetweennessState(scores)


def oracle_affected_pairs(graph_before: Graph, graph_after: Graph) -> set[tuple[int, int]]:
    """Exact {(s, t): d or sigma changed} between two graph snapshots."""
    a = init_apsp(graph_before)
    b = init_apsp(graph_after)
    changed = (a.dist != b.dist) | (a.sigma != b.sigma)
    return {(int(s), int(t)) for s, t in zip(*np.nonzero(changed))}
