"""KWCC baseline: per-source APSP re-traversals + per-pair predecessor walks.

APSP side: identifies affected sources once, then reruns a pruned traversal
from v for every affected source (the redundancy the single-traversal engine
removes). Dependency side: for each affected pair, walks old-shortest-path
predecessors subtracting score fractions, then new-path predecessors adding
them. Stores no dependencies.
"""

from __future__ import annotations

import time

import numpy as np

from .. import _kernels
from ..apsp import AffectedDelta, ApspState
from ..counters import OpCounters
from ..graph import Graph, UpdateEvent, UpdateResult
from ..static import BetweennessState
from .common import UpdateReport, classify_event
from .ibet import _dep_coeff, _guard_ok, find_affected_sources

__all__ = ["kwcc_update"]


def kwcc_update(graph: Graph, apsp: ApspState, bet: BetweennessState,
                event: UpdateEvent, counters: OpCounters | None = None) -> UpdateReport:
    result = classify_event(graph, event)
    if result == UpdateResult.NOOP:
        return UpdateReport("kwcc", result, counters=counters)
    u, v, wnew = event.u, event.v, float(event.new_weight)
    n = graph.n
    clock = time.perf_counter_ns

    t0 = clock()
    if not _guard_ok(apsp, u, v, wnew):
        graph.apply_update(event)
        return UpdateReport("kwcc", result, apsp_ns=clock() - t0, counters=counters)
    c_apsp = counters.apsp if counters is not None else None
    c_dep = counters.dep if counters is not None else None
    sources = find_affected_sources(graph, u, v, wnew, apsp, counters)
    op, oi, ow = graph.out_arrays()
    ip, ii, iw = graph.in_arrays()
    ps, pt, pnewd, pnews = _kernels.kern().kwcc_stage(
        op, oi, ow, ip, ii, iw, n, u, v, wnew, graph.unit,
        apsp.dist, apsp.sigma, sources, c_apsp)
    t1 = clock()

    _kernels.kern().kwcc_walk(ip, ii, iw, n, apsp.dist, apsp.sigma, ps, pt,
                              bet.scores, _dep_coeff(graph, -1), c_dep)
    t2 = clock()

    graph.apply_update(event)
    delta = AffectedDelta.empty(u, v, wnew)
    delta.pair_s, delta.pair_t = ps, pt
    delta.pair_new_dist, delta.pair_new_sigma = pnewd, pnews
    apsp.commit(delta, undirected=not graph.directed)
    t3 = clock()

    ip, ii, iw = graph.in_arrays()
    _kernels.kern().kwcc_walk(ip, ii, iw, n, apsp.dist, apsp.sigma, ps, pt,
                              bet.scores, _dep_coeff(graph, +1), c_dep)
    t4 = clock()

    return UpdateReport(
        "kwcc", result,
        n_affected_sources=len(sources),
        n_affected_targets=len(np.unique(pt)) if len(pt) else 0,
        n_affected_pairs=len(ps),
        apsp_ns=(t1 - t0) + (t3 - t2),
        dep_ns=(t2 - t1) + (t4 - t3),
        counters=counters,
    )
