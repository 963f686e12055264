"""KDB baseline: per-source case dispatch with stored dependencies.

Unit-weight graphs only. For each source the update is one of: no change
(endpoints equidistant or wrong orientation), new-equal-paths (sigma gains
propagate down the source's shortest-path sub-DAG below v), or a partial BFS
re-relaxation that recomputes distances and counts in place. A bucket-list
dependency sweep then recomputes dependencies for every traversed node from
its successors, scoring the difference against the stored dependency matrix.

Directed unit graphs are supported: the closer-endpoint swap applies only to
undirected graphs, while directed graphs dispatch on d(s,v) - d(s,u) with no
swap; that extension is validated against the oracles.
"""

from __future__ import annotations

import time

import numpy as np

from .. import _kernels
from ..apsp import ApspState, check_matrix_budget, init_apsp
from ..counters import OpCounters
from ..errors import UnsupportedGraphError
from ..graph import Graph, UpdateEvent, UpdateResult
from ..static import BetweennessState
from .common import UpdateReport, classify_event

__all__ = ["KdbState", "init_kdb", "kdb_update"]


class KdbState:
    """APSP matrices plus the stored per-source dependency matrix."""

    def __init__(self, apsp: ApspState, deltas: np.ndarray):
        self.apsp = apsp
        self.deltas = deltas

    def copy(self) -> "KdbState":
        return KdbState(self.apsp.copy(), self.deltas.copy())


def init_kdb(graph: Graph) -> KdbState:
    if not graph.unit:
        raise UnsupportedGraphError("KDB supports unit-weight graphs only")
    n = graph.n
    check_matrix_budget(n, 3)
    dist = np.empty((n, n), dtype=np.float64)
    sigma = np.empty((n, n), dtype=np.float64)
    deltas = np.empty((n, n), dtype=np.float64)
    scores = np.empty(n, dtype=np.float64)
    op, oi, ow = graph.out_arrays()
    ip, ii, iw = graph.in_arrays()
    _kernels.kern().static_pass(op, oi, ow, ip, ii, iw, n, graph.unit, scores,
                                dist, sigma, deltas)
    return KdbState(ApspState(dist, sigma), deltas)


def kdb_update(graph: Graph, state: KdbState, bet: BetweennessState,
               event: UpdateEvent, counters: OpCounters | None = None) -> UpdateReport:
    if not graph.unit:
        raise UnsupportedGraphError("KDB supports unit-weight graphs only")
    result = classify_event(graph, event)
    if result == UpdateResult.NOOP:
        return UpdateReport("kdb", result, counters=counters)
    n = graph.n
    clock = time.perf_counter_ns
    c_apsp = counters.apsp if counters is not None else None
    c_dep = counters.dep if counters is not None else None

    t0 = clock()
    graph.apply_update(event)  # per-source traversal runs on the new graph
    op, oi, ow = graph.out_arrays()
    ip, ii, iw = graph.in_arrays()
    slist, toff, tflat = _kernels.kern().kdb_phase1(
        op, oi, ip, ii, n, event.u, event.v, not graph.directed,
        state.apsp.dist, state.apsp.sigma, c_apsp)
    t1 = clock()
    _kernels.kern().kdb_phase2(op, oi, ip, ii, n, slist, toff, tflat,
                               state.apsp.dist, state.apsp.sigma,
                               state.deltas, bet.scores, c_dep)
    t2 = clock()

    return UpdateReport(
        "kdb", result,
        n_affected_sources=len(slist),
        n_affected_targets=len(tflat),
        n_affected_pairs=len(tflat),
        apsp_ns=t1 - t0,
        dep_ns=t2 - t1,
        counters=counters,
    )
