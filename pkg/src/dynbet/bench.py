"""Benchmark harness: remove an edge, recompute, re-insert incrementally.

One trial = sample a distinct existing edge uniformly (seeded), remove it,
build the pre-update state (scores, APSP matrices, stored dependencies when
KDB runs), then re-insert the edge with every selected engine on its own
deep copy, timing each update. ``ba`` is a selectable algorithm too: a full
static recomputation on the restored graph, which also serves as the
verification reference. Summaries report geometric-mean speedups.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .apsp import ApspState, check_matrix_budget
from .counters import OpCounters
from .engines import KdbState, ibet_update, kdb_update, kwcc_update
from .errors import UnsupportedGraphError
from .graph import Graph, UpdateEvent, load_edge_list
from .static import BetweennessState, brandes_betweenness

__all__ = ["BenchConfig", "EngineResult", "TrialRecord", "run_experiment", "emit_csv",
           "CSV_COLUMNS", "TIMING_COLUMNS"]

ENGINES = ("ibet", "kdb", "kwcc")
CSV_COLUMNS = ("trial", "algo", "phase_apsp_ns", "phase_dep_ns", "total_ns",
               "max_err", "nodes_visited", "edges_scanned", "source_list_scans")
TIMING_COLUMNS = ("phase_apsp_ns", "phase_dep_ns", "total_ns")


@dataclass
class BenchConfig:
    graph: str | Path | Graph
    trials: int = 100
    seed: int = 0
    algos: tuple[str, ...] = ("ba", "ibet", "kdb", "kwcc")
    directed: bool = False
    weighted: bool = False
    verify: bool = True
    counters: bool = False
    tolerance: float | None = None  # None: 1e-8 * max(1, max |reference score|)


@dataclass
class EngineResult:
    total_ns: int
    apsp_ns: int
    dep_ns: int
    max_err: float | None
    counter_totals: dict[str, int] = field(default_factory=dict)


@dataclass
class TrialRecord:
    trial: int
    u: int
    v: int
    w: float
    results: dict[str, EngineResult]


def _load(config: BenchConfig) -> Graph:
    if isinstance(config.graph, Graph):
        return config.graph.copy()
    return load_edge_list(config.graph, directed=config.directed,
                          weighted=config.weighted)


def _base_state(graph: Graph, want_kdb: bool):
    """One combined sweep: scores, APSP matrices, stored deltas if needed."""
    n = graph.n
    dist = np.empty((n, n), dtype=np.float64)
    sigma = np.empty((n, n), dtype=np.float64)
    deltas = np.empty((n, n), dtype=np.float64) if want_kdb else None
    scores = np.empty(n, dtype=np.float64)
    op, oi, ow = graph.out_arrays()
    ip, ii, iw = graph.in_arrays()
    _kernels.kern().static_pass(op, oi, ow, ip, ii, iw, n, graph.unit, scores,
                                dist, sigma, deltas)
    return ApspState(dist, sigma), BetweennessState(scores), deltas


def run_experiment(config: BenchConfig) -> tuple[list[TrialRecord], dict]:
    """Run the removal/recompute/re-insert protocol; returns records + summary."""
    if config.trials < 1:
        raise ValueError("trials must be >= 1")
    unknown = [a for a in config.algos if a not in ENGINES + ("ba",)]
    if unknown:
        raise ValueError(f"unknown algorithms: {unknown}")
    graph = _load(config)
    want_kdb = "kdb" in config.algos
    if want_kdb and not graph.unit:
        raise UnsupportedGraphError("kdb requires an unweighted graph")
    n = graph.n
    # base state + one engine copy live at the same time
    check_matrix_budget(n, 2 * (3 if want_kdb else 2))

    edges = graph.edge_list()
    if config.trials > len(edges):
        raise ValueError(f"{config.trials} trials need distinct edges, graph has {len(edges)}")
    rng = np.random.default_rng(config.seed)
    picks = rng.choice(len(edges), size=config.trials, replace=False)

    clock = time.perf_counter_ns
    records: list[TrialRecord] = []
    failed_trials: list[tuple[int, str, float, float]] = []
    for trial, pick in enumerate(picks):
        u, v, w = edges[int(pick)]
        removed = graph.remove_edge(u, v)
        base_apsp, base_bet, base_deltas = _base_state(graph, want_kdb)
        event = UpdateEvent(u, v, removed)
        results: dict[str, EngineResult] = {}

        for algo in config.algos:
            if algo == "ba":
                continue
            g2 = graph.copy()
            bet2 = base_bet.copy()
            cnt = OpCounters() if config.counters else None
            if algo == "kdb":
                state = KdbState(base_apsp.copy(), base_deltas.copy())
                t0 = clock()
                rep = kdb_update(g2, state, bet2, event, cnt)
                t1 = clock()
            elif algo == "kwcc":
                apsp2 = base_apsp.copy()
                t0 = clock()
                rep = kwcc_update(g2, apsp2, bet2, event, cnt)
                t1 = clock()
            else:
                apsp2 = base_apsp.copy()
                t0 = clock()
                rep = ibet_update(g2, apsp2, bet2, event, cnt)
                t1 = clock()
            totals = {}
            if cnt is not None:
                totals = {name: cnt.total(name) for name in
                          ("nodes_visited", "edges_scanned", "source_list_scans")}
            results[algo] = EngineResult(t1 - t0, rep.apsp_ns, rep.dep_ns, None, totals)
            results[algo]._scores = bet2.scores  # held until verification below

        graph.apply_update(event)  # restore for the reference run / next trial

        ref = None
        if "ba" in config.algos:
            t0 = clock()
            ref = brandes_betweenness(graph)
            t1 = clock()
            results["ba"] = EngineResult(t1 - t0, 0, 0, 0.0 if config.verify else None)
        elif config.verify:
            ref = brandes_betweenness(graph)

        if config.verify and ref is not None:
            tol = config.tolerance
            if tol is None:
                tol = default_tolerance(ref.scores)
            for algo in config.algos:
                if algo == "ba":
                    continue
                err = float(np.max(np.abs(results[algo]._scores - ref.scores))) if n else 0.0
                results[algo].max_err = err
                if err > tol:
                    failed_trials.append((trial, algo, err, tol))
        for algo, res in results.items():
            if hasattr(res, "_scores"):
                del res._scores
        records.append(TrialRecord(trial, u, v, w, results))

    summary = summarize(records, config)
    if config.verify:
        summary["failed_trials"] = failed_trials
    return records, summary


def _geomean(ratios) -> float:
    logs = [math.log(r) for r in ratios]
    return math.exp(sum(logs) / len(logs)) if logs else float("nan")


def summarize(records: list[TrialRecord], config: BenchConfig) -> dict:
    """Geometric-mean speedups vs full recomputation and between engines."""
    summary: dict = {"trials": len(records), "algos": list(config.algos)}
    present = [a for a in config.algos if records and a in records[0].results]
    speedups: dict[str, float] = {}
    for a in present:
        for b in present:
            if a == b or a == "ba":
                continue
            mine = [max(r.results[a].total_ns, 1) for r in records]
            others = [max(r.results[b].total_ns, 1) for r in records]
            speedups[f"{a}_over_{b}"] = _geomean(o / t for t, o in zip(mine, others))
    summary["speedups"] = speedups
    if "ba" in present:
        summary["ba_mean_s"] = float(np.mean([r.results["ba"].total_ns for r in records]) / 1e9)
    if config.verify:
        errs = [res.max_err for r in records for res in r.results.values()
                if res.max_err is not None]
        summary["max_err"] = max(errs) if errs else 0.0
    return summary


def default_tolerance(ref_scores: np.ndarray) -> float:
    return 1e-8 * max(1.0, float(np.max(np.abs(ref_scores))) if len(ref_scores) else 1.0)


def emit_csv(records: list[TrialRecord], path: str | Path) -> None:
    """Header plus one row per trial per algorithm, RFC-4180 quoting."""
    if not records:
        raise ValueError("no records to emit")
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(CSV_COLUMNS)
        for rec in records:
            for algo, res in rec.results.items():
                cnt = res.counter_totals
                wr.writerow([
                    rec.trial,
                    algo,
                    res.apsp_ns,
                    res.dep_ns,
                    res.total_ns,
                    "" if res.max_err is None else repr(float(res.max_err)),
                    cnt.get("nodes_visited", 0),
                    cnt.get("edges_scanned", 0),
                    cnt.get("source_list_scans", 0),
                ])
