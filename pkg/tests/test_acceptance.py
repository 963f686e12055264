"""Acceptance suite.

One corpus sweep (200+ seeded random graphs x 20 incremental events each,
all four directedness/weight cells, three densities) feeds the correctness
criteria; the benchmark criteria run the bundled graph and the adversarial
scaling family. Each test prints its own pass/fail line under pytest -v.
"""

import csv
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pytest

from dynbet import (
    OpCounters,
    UpdateResult,
    accumulate_dependencies,
    apsp_update,
    brandes_betweenness,
    check_bounds,
    dependency_decrease,
    dependency_increase,
    ibet_update,
    init_apsp,
    init_kdb,
    kdb_update,
    kwcc_update,
    oracle_affected_pairs,
    sssp_augmented,
)
from dynbet.bench import CSV_COLUMNS, TIMING_COLUMNS, BenchConfig, run_experiment
from dynbet.cli import main
from dynbet.engines import classify_event

from helpers import corpus_cases, delta_direct_sum, kwcc_hub_family

BENCH_GRAPH = Path(__file__).resolve().parent.parent / "data" / "bench-rgg-4k.edges"

SCORE_TOL = 1e-8
IDENT_TOL = 1e-9


@dataclass
class SweepResults:
    events: int = 0
    elapsed: float = 0.0
    c1_violations: list = field(default_factory=list)
    c2_violations: list = field(default_factory=list)
    c3_violations: list = field(default_factory=list)
    c4_checks: int = 0
    c4_violations: list = field(default_factory=list)
    c5_violations: list = field(default_factory=list)
    c7_checked: int = 0
    c7_violations: list = field(default_factory=list)


def _dist_matches(got, want, unit):
    if not np.array_equal(np.isfinite(got), np.isfinite(want)):
        return False
    mask = np.isfinite(want)
    if unit:
        return np.array_equal(got[mask], want[mask])
    return np.max(np.abs(got[mask] - want[mask])) <= SCORE_TOL if mask.any() else True


def _sigma_matches(got, want, unit):
    if unit:
        return np.array_equal(got, want)
    return np.max(np.abs(got - want)) <= SCORE_TOL


@pytest.fixture(scope="session")
def sweep() -> SweepResults:
    res = SweepResults()
    t_start = time.perf_counter()
    for case_id, g0, events in corpus_cases(n_cases_per_cell=17, seed=2024):
        g_i = g0.copy()
        apsp_i = init_apsp(g_i)
        bet_i = brandes_betweenness(g_i)
        g_w = g0.copy()
        apsp_w = apsp_i.copy()
        bet_w = bet_i.copy()
        unit = g0.unit
        if unit:
            g_k = g0.copy()
            st_k = init_kdb(g_k)
            bet_k = bet_i.copy()
        for idx, ev in enumerate(events):
            res.events += 1
            tag = (case_id, idx)
            before = g_i.copy()
            is_real = classify_event(g_i, ev) != UpdateResult.NOOP
            want_c4 = (res.c4_checks < 50 and case_id % 4 == 0 and idx in (5, 11)
                       and is_real)
            apsp_before = apsp_i.copy() if want_c4 else None
            delta = apsp_update(g_i, ev.u, ev.v, ev.new_weight, apsp_i) if is_real else None

            cnt = OpCounters()
            rep = ibet_update(g_i, apsp_i, bet_i, ev, cnt)

            # criterion 1: full agreement with fresh recomputation
            fresh_apsp = init_apsp(g_i)
            fresh_bet = brandes_betweenness(g_i)
            if not _dist_matches(apsp_i.dist, fresh_apsp.dist, unit):
                res.c1_violations.append((*tag, "dist"))
            if not _sigma_matches(apsp_i.sigma, fresh_apsp.sigma, unit):
                res.c1_violations.append((*tag, "sigma"))
            err = float(np.max(np.abs(bet_i.scores - fresh_bet.scores))) if g_i.n else 0.0
            if err > SCORE_TOL:
                res.c1_violations.append((*tag, f"scores err={err:.2e}"))

            # criterion 2: engine equivalence against the incremental engine
            kwcc_update(g_w, apsp_w, bet_w, ev)
            if float(np.max(np.abs(bet_w.scores - bet_i.scores))) > SCORE_TOL:
                res.c2_violations.append((*tag, "kwcc scores"))
            if not (_dist_matches(apsp_w.dist, apsp_i.dist, unit)
                    and _sigma_matches(apsp_w.sigma, apsp_i.sigma, unit)):
                res.c2_violations.append((*tag, "kwcc apsp"))
            if unit:
                kdb_update(g_k, st_k, bet_k, ev)
                if float(np.max(np.abs(bet_k.scores - bet_i.scores))) > SCORE_TOL:
                    res.c2_violations.append((*tag, "kdb scores"))
                if not (np.array_equal(st_k.apsp.dist, apsp_i.dist)
                        and np.array_equal(st_k.apsp.sigma, apsp_i.sigma)):
                    res.c2_violations.append((*tag, "kdb apsp"))

            # criterion 3: source-set nesting + staged set == oracle pairs
            oracle = oracle_affected_pairs(before, g_i)
            if delta is None or delta.is_empty:
                staged = set()
            else:
                staged = set(zip(delta.pair_s.tolist(), delta.pair_t.tolist()))
                for i, t in enumerate(delta.targets):
                    p = int(delta.preds[i])
                    sp = set(delta.sources.tolist()) if p == ev.v else set(delta.sources_of(p).tolist())
                    if not set(delta.sources_of(int(t)).tolist()) <= sp:
                        res.c3_violations.append((*tag, f"S({int(t)}) not within S(p)"))
                if not g_i.directed:
                    staged |= {(t, s) for s, t in staged}
            if staged != oracle:
                res.c3_violations.append((*tag, "staged != oracle pairs"))

            # criterion 4: dependency-change identities on a 50-event subsample
            if want_c4 and delta is not None and not delta.is_empty:
                res.c4_checks += 1
                scratch = fresh_bet.copy()
                for s in delta.source_ids:
                    s = int(s)
                    targets = delta.targets_of(s)
                    acc_old = dependency_decrease(before, s, delta,
                                                  apsp_before, scratch)
                    acc_new = dependency_increase(g_i, s, delta, apsp_i, scratch)
                    want_old = delta_direct_sum(apsp_before.dist, apsp_before.sigma, s, targets)
                    want_new = delta_direct_sum(fresh_apsp.dist, fresh_apsp.sigma, s, targets)
                    if np.max(np.abs(acc_old - want_old)) > IDENT_TOL:
                        res.c4_violations.append((*tag, s, "Delta"))
                    if np.max(np.abs(acc_new - want_new)) > IDENT_TOL:
                        res.c4_violations.append((*tag, s, "Delta'"))
                    d_old = accumulate_dependencies(before, sssp_augmented(before, s))
                    d_new = accumulate_dependencies(g_i, sssp_augmented(g_i, s))
                    if np.max(np.abs(d_new - (d_old - acc_old + acc_new))) > IDENT_TOL:
                        res.c4_violations.append((*tag, s, "composition"))

            # criterion 5 (corpus part): counters within 4x the bounds
            verdict = check_bounds(rep, before, delta)
            if not verdict.ok:
                res.c5_violations.append((*tag, verdict.violations))

            # criterion 7: unit-weight sum identity
            if unit:
                res.c7_checked += 1
                d = fresh_apsp.dist
                finite = np.isfinite(d)
                np.fill_diagonal(finite, False)
                hops = float(d[finite].sum()) - int(finite.sum())
                total = float(bet_i.scores.sum())
                if abs(total - hops) > 1e-8 * max(1.0, abs(hops)):
                    res.c7_violations.append((*tag, f"{total} vs {hops}"))
    res.elapsed = time.perf_counter() - t_start
    return res


def test_criterion_1_oracle_equivalence(sweep):
    assert sweep.events >= 200 * 20 * 0.8  # some graphs saturate before 20 events
    assert sweep.c1_violations == []
    assert sweep.elapsed < 60.0, f"corpus sweep took {sweep.elapsed:.1f}s"


def test_criterion_2_engine_equivalence(sweep):
    assert sweep.c2_violations == []


def test_criterion_3_source_nesting_and_affected_pairs(sweep):
    assert sweep.c3_violations == []


def test_criterion_4_dependency_identities(sweep):
    assert sweep.c4_checks >= 50
    assert sweep.c4_violations == []


def test_criterion_5_counter_bounds(sweep):
    assert sweep.c5_violations == []


def test_criterion_5_scaling_family():
    ratios = []
    for k in (66, 133, 266):
        g, ev = kwcc_hub_family(k)
        # correctness first at the smallest size
        if k == 66:
            gi = g.copy()
            apsp = init_apsp(gi)
            bet = brandes_betweenness(gi)
            ibet_update(gi, apsp, bet, ev)
            fresh = brandes_betweenness(gi)
            assert np.max(np.abs(bet.scores - fresh.scores)) <= SCORE_TOL

        gi = g.copy()
        apsp = init_apsp(gi)
        bet = brandes_betweenness(gi)
        ci = OpCounters()
        ibet_update(gi, apsp, bet, ev, ci)

        gw = g.copy()
        apsp_w = init_apsp(gw)
        bet_w = brandes_betweenness(gw)
        cw = OpCounters()
        kwcc_update(gw, apsp_w, bet_w, ev, cw)

        ratios.append(ci.apsp[1] / cw.apsp[1])  # apsp-phase edges_scanned
    assert ratios[0] > ratios[1] > ratios[2], ratios


@pytest.mark.slow
def test_criterion_6_desk_scale_speedups():
    cfg = BenchConfig(graph=BENCH_GRAPH, trials=100, seed=42,
                      algos=("ba", "ibet", "kdb", "kwcc"), verify=True)
    records, summary = run_experiment(cfg)
    assert summary["failed_trials"] == []
    sp = summary["speedups"]
    assert sp["ibet_over_ba"] >= 10.0, sp
    assert sp["ibet_over_kwcc"] >= 2.0, sp
    assert sp["ibet_over_kdb"] >= 2.0, sp


def test_criterion_8_cli_determinism(tmp_path):
    outs = []
    for k in (1, 2):
        out = tmp_path / f"run{k}.csv"
        rc = main(["bench", "--graph", str(BENCH_GRAPH), "--trials", "3",
                   "--seed", "11", "--algos", "ibet,kdb,kwcc", "--counters",
                   "--no-verify", "--out", str(out)])
        assert rc == 0
        outs.append(out)

    def stripped(path):
        with open(path) as fh:
            rows = list(csv.DictReader(fh))
        return [[row[c] for c in CSV_COLUMNS if c not in TIMING_COLUMNS] for row in rows]

    assert stripped(outs[0]) == stripped(outs[1])
