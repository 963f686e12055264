"""Incremental betweenness update (single traversal + dependency-change passes).

Pipeline for one edge insertion / weight decrease (u, v, w'):

  1. find the affected sources S(v) by a pruned reverse traversal from u;
  2. one pruned forward traversal from v stages new (dist, sigma) for every
     affected pair, scanning each target's predecessor source list (this is
     the part prior engines redo once per source);
  3. per affected source, subtract old-path dependency contributions
     (max-distance-first sweep over pre-update values);
  4. mutate the graph, commit the staged pairs;
  5. per affected source, add new-path contributions (same sweep over the
     committed values).

Scores change by -Delta + Delta' per source, doubled on undirected graphs
to cover the mirrored pairs.
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

__all__ = [
    "find_affected_sources",
    "apsp_update",
    "dependency_decrease",
    "dependency_increase",
    "ibet_update",
]

_TOL = 1e-9


def _guard_ok(apsp: ApspState, u: int, v: int, new_weight: float) -> bool:
    """Update can touch shortest paths only if w'(u,v) <= d(u,v)."""
    duv = apsp.dist[u, v]
    if duv == np.inf:
        return True
    return new_weight <= duv + _TOL * max(1.0, abs(duv))


def find_affected_sources(graph: Graph, u: int, v: int, new_weight: float,
                          apsp: ApspState, counters: OpCounters | None = None) -> np.ndarray:
    """S(v) = {s : d(s,v) >= d(s,u) + w'}, via pruned reverse traversal from u."""
    ip, ii, iw = graph.in_arrays()
    c = counters.apsp if counters is not None else None
    return _kernels.kern().affected_sources(ip, ii, iw, graph.n, u, v,
                                            float(new_weight), apsp.dist, c)


def apsp_update(graph: Graph, u: int, v: int, new_weight: float,
                apsp: ApspState, counters: OpCounters | None = None) -> AffectedDelta:
    """Stage the augmented-APSP changes for one update; matrices untouched.

    Returns an empty delta when w'(u,v) > d(u,v) (no shortest path changes).
    """
    new_weight = float(new_weight)
    if not _guard_ok(apsp, u, v, new_weight):
        return AffectedDelta.empty(u, v, new_weight)
    c = counters.apsp if counters is not None else None
    sources = find_affected_sources(graph, u, v, new_weight, apsp, counters)
    op, oi, ow = graph.out_arrays()
    targets, preds, toff, tsrc, tnewd, tnews = _kernels.kern().stage_update(
        op, oi, ow, graph.n, u, v, new_weight, graph.unit,
        apsp.dist, apsp.sigma, sources, c)
    return AffectedDelta(u, v, new_weight, sources, targets, preds,
                         toff, tsrc, tnewd, tnews)


def _dep_coeff(graph: Graph, sign: int) -> float:
    return float(sign) * (1.0 if graph.directed else 2.0)


def dependency_decrease(graph: Graph, s: int, delta: AffectedDelta,
                        apsp: ApspState, bet: BetweennessState,
                        counters: OpCounters | None = None) -> np.ndarray:
    """Subtract source s's old-path contributions. Run BEFORE commit.

    Returns the per-node accumulator Delta_{s,.}.
    """
    return _dep_single(graph, s, delta, apsp, bet, -1, counters)


def dependency_increase(graph: Graph, s: int, delta: AffectedDelta,
                        apsp: ApspState, bet: BetweennessState,
                        counters: OpCounters | None = None) -> np.ndarray:
    """Add source s's new-path contributions. Run AFTER mutation + commit."""
    return _dep_single(graph, s, delta, apsp, bet, +1, counters)


def _dep_single(graph, s, delta, apsp, bet, sign, counters) -> np.ndarray:
    ip, ii, iw = graph.in_arrays()
    n = graph.n
    targets = delta.targets_of(s)
    acc = np.empty(n, dtype=np.float64)
    c = counters.dep if counters is not None else None
    _kernels.kern().dep_pass(ip, ii, iw, n, int(s), graph.unit, apsp.dist[s],
                             apsp.sigma[s], targets, bet.scores,
                             _dep_coeff(graph, sign), acc, c)
    return acc


def _tau_stats(graph: Graph, targets: np.ndarray, acc: np.ndarray) -> tuple[int, int, float]:
    """(|tau|, ||tau||, |tau| log2 |tau|) with tau = T(s) union {Delta > 0}."""
    mask = acc > 0.0
    mask[targets] = True
    nodes = np.nonzero(mask)[0]
    size = len(nodes)
    deg = graph.out_degrees()[nodes].sum()
    if graph.directed:
        deg += graph.in_degrees()[nodes].sum()
    ext = int(size + deg)
    logterm = size * float(np.log2(size)) if size > 1 else 0.0
    return size, ext, logterm


def ibet_update(graph: Graph, apsp: ApspState, bet: BetweennessState,
                event: UpdateEvent, counters: OpCounters | None = None) -> UpdateReport:
    """Full incremental update of (graph, apsp, scores) for one event."""
    result = classify_event(graph, event)
    if result == UpdateResult.NOOP:
        return UpdateReport("ibet", result, counters=counters)

    clock = time.perf_counter_ns
    t0 = clock()
    delta = apsp_update(graph, event.u, event.v, event.new_weight, apsp, counters)
    t1 = clock()

    if delta.is_empty:
        graph.apply_update(event)
        return UpdateReport("ibet", result, apsp_ns=t1 - t0, counters=counters)

    slist, toff, tflat = delta.per_source_groups()
    ip, ii, iw = graph.in_arrays()
    n = graph.n
    tau = {"tau_n": 0.0, "tau_ext": 0.0, "tau_log": 0.0,
           "taup_n": 0.0, "taup_ext": 0.0, "taup_log": 0.0}
    coeff_dec = _dep_coeff(graph, -1)
    if counters is None:
        _kernels.kern().dep_phase(ip, ii, iw, n, graph.unit, apsp.dist, apsp.sigma,
                                  slist, toff, tflat, bet.scores, coeff_dec, None)
    else:
        # per-source path so tau(s) can be derived from each Delta accumulator
        acc = np.empty(n, dtype=np.float64)
        for k, s in enumerate(slist):
            targets = tflat[toff[k] : toff[k + 1]]
            _kernels.kern().dep_pass(ip, ii, iw, n, int(s), graph.unit,
                                     apsp.dist[s], apsp.sigma[s], targets,
                                     bet.scores, coeff_dec, acc, counters.dep)
            sz, ext, lg = _tau_stats(graph, targets, acc)
            tau["tau_n"] += sz
            tau["tau_ext"] += ext
            tau["tau_log"] += lg
    t2 = clock()

    graph.apply_update(event)
    apsp.commit(delta, undirected=not graph.directed)
    t3 = clock()

    ip, ii, iw = graph.in_arrays()  # mutation replaced the arrays
    coeff_inc = _dep_coeff(graph, +1)
    if counters is None:
        _kernels.kern().dep_phase(ip, ii, iw, n, graph.unit, apsp.dist, apsp.sigma,
                                  slist, toff, tflat, bet.scores, coeff_inc, None)
    else:
        acc = np.empty(n, dtype=np.float64)
        for k, s in enumerate(slist):
            targets = tflat[toff[k] : toff[k + 1]]
            _kernels.kern().dep_pass(ip, ii, iw, n, int(s), graph.unit,
                                     apsp.dist[s], apsp.sigma[s], targets,
                                     bet.scores, coeff_inc, acc, counters.dep)
            sz, ext, lg = _tau_stats(graph, targets, acc)
            tau["taup_n"] += sz
            tau["taup_ext"] += ext
            tau["taup_log"] += lg
    t4 = clock()

    report = UpdateReport(
        "ibet", result,
        n_affected_sources=len(delta.sources),
        n_affected_targets=len(delta.targets),
        n_affected_pairs=delta.n_pairs,
        apsp_ns=(t1 - t0) + (t3 - t2),
        dep_ns=(t2 - t1) + (t4 - t3),
        counters=counters,
    )
    if counters is not None:
        report.tau_sizes = tau
    return report
