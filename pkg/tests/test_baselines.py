import numpy as np
import pytest

from dynbet import (
    Graph,
    KdbState,
    UpdateEvent,
    UpdateResult,
    brandes_betweenness,
    ibet_update,
    init_apsp,
    init_kdb,
    kdb_update,
    kwcc_update,
    oracle_betweenness,
)
from dynbet.errors import UnsupportedGraphError

from helpers import random_event, random_graph


def path4():
    return Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], unit=True)


def test_kdb_path_chord():
    g = path4()
    st = init_kdb(g)
    bet = brandes_betweenness(g)
    rep = kdb_update(g, st, bet, UpdateEvent(0, 3, 1.0))
    assert rep.result == UpdateResult.INSERTED
    assert list(bet.scores) == [1, 1, 1, 1]
    fresh = init_apsp(g)
    assert np.array_equal(st.apsp.dist, fresh.dist)
    assert np.array_equal(st.apsp.sigma, fresh.sigma)


def test_kdb_new_equal_paths_case():
    # source 1 sees |d(1,0) - d(1,3)| = 1 for the chord (0,3): the
    # sigma-only dispatch runs for it; end state checked against the oracle
    g = path4()
    st = init_kdb(g)
    bet = brandes_betweenness(g)
    kdb_update(g, st, bet, UpdateEvent(0, 3, 1.0))
    want = oracle_betweenness(g).scores
    assert np.max(np.abs(bet.scores - want)) <= 1e-9


def test_kdb_skip_case_star():
    # insert an edge between two leaves of a star: every third node sees the
    # endpoints at equal distance and is skipped
    g = Graph.from_edges(5, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)], unit=True)
    st = init_kdb(g)
    bet = brandes_betweenness(g)
    rep = kdb_update(g, st, bet, UpdateEvent(1, 2, 1.0))
    assert rep.n_affected_sources < g.n  # leaves 3, 4 and the center skip
    want = oracle_betweenness(g).scores
    assert np.max(np.abs(bet.scores - want)) <= 1e-9


def test_kdb_rejects_weighted():
    g = Graph.from_edges(3, [(0, 1, 1.5), (1, 2, 1.0)], unit=False)
    with pytest.raises(UnsupportedGraphError):
        init_kdb(g)
    st = KdbState(init_apsp(g), np.zeros((3, 3)))
    with pytest.raises(UnsupportedGraphError):
        kdb_update(g, st, brandes_betweenness(g), UpdateEvent(0, 2, 1.0))


def test_kwcc_path_chord():
    g = path4()
    apsp = init_apsp(g)
    bet = brandes_betweenness(g)
    kwcc_update(g, apsp, bet, UpdateEvent(0, 3, 1.0))
    assert list(bet.scores) == [1, 1, 1, 1]
    fresh = init_apsp(g)
    assert np.array_equal(apsp.dist, fresh.dist)
    assert np.array_equal(apsp.sigma, fresh.sigma)


def test_kwcc_weighted_decrease():
    g = Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)], unit=False)
    apsp = init_apsp(g)
    bet = brandes_betweenness(g)
    assert bet.scores[1] == 2.0
    kwcc_update(g, apsp, bet, UpdateEvent(0, 2, 1.0))
    assert bet.scores[1] == 0.0


def test_kwcc_noop():
    g = path4()
    apsp = init_apsp(g)
    bet = brandes_betweenness(g)
    before = bet.scores.copy()
    rep = kwcc_update(g, apsp, bet, UpdateEvent(1, 2, 1.0))
    assert rep.result == UpdateResult.NOOP
    assert np.array_equal(bet.scores, before)


def test_engine_equivalence_random():
    rng = np.random.default_rng(2718)
    for directed in (False, True):
        for unit in (True, False):
            g_i = random_graph(rng, 20, 0.2, directed, unit)
            g_w = g_i.copy()
            apsp_i = init_apsp(g_i)
            bet_i = brandes_betweenness(g_i)
            apsp_w = apsp_i.copy()
            bet_w = bet_i.copy()
            if unit:
                g_k = g_i.copy()
                st_k = init_kdb(g_k)
                bet_k = bet_i.copy()
            for _ in range(6):
                ev = random_event(rng, g_i)
                if ev is None:
                    break
                ibet_update(g_i, apsp_i, bet_i, ev)
                kwcc_update(g_w, apsp_w, bet_w, ev)
                assert np.max(np.abs(bet_w.scores - bet_i.scores)) <= 1e-8
                assert np.allclose(
                    np.nan_to_num(apsp_w.dist, posinf=-1.0),
                    np.nan_to_num(apsp_i.dist, posinf=-1.0), atol=1e-9)
                assert np.allclose(apsp_w.sigma, apsp_i.sigma, rtol=1e-12)
                if unit:
                    kdb_update(g_k, st_k, bet_k, ev)
                    assert np.max(np.abs(bet_k.scores - bet_i.scores)) <= 1e-8
                    assert np.array_equal(st_k.apsp.dist, apsp_i.dist)
                    assert np.array_equal(st_k.apsp.sigma, apsp_i.sigma)


def test_kwcc_walks_touch_only_on_path_nodes():
    # dependency-walk visits are bounded by the per-pair on-path node counts
    from dynbet import OpCounters, apsp_update

    rng = np.random.default_rng(88)
    g = random_graph(rng, 14, 0.3, False, True)
    ev = random_event(rng, g)
    apsp0 = init_apsp(g)
    delta = apsp_update(g, ev.u, ev.v, ev.new_weight, apsp0)
    if delta.is_empty:
        return
    cnt = OpCounters()
    g2 = g.copy()
    apsp = apsp0.copy()
    bet = brandes_betweenness(g2)
    kwcc_update(g2, apsp, bet, ev, cnt)
    apsp_new = init_apsp(g2)

    def on_path_count(dist, sigma, s, t):
        if sigma[s, t] == 0:
            return 0
        cntr = 0
        for y in range(g.n):
            if y in (s, t):
                continue
            a, b = dist[s, y], dist[y, t]
            if np.isfinite(a) and np.isfinite(b) and a + b == dist[s, t]:
                if sigma[s, y] * sigma[y, t] > 0:
                    cntr += 1
        return cntr

    bound = 0
    for s, t in zip(delta.pair_s, delta.pair_t):
        bound += on_path_count(apsp0.dist, apsp0.sigma, int(s), int(t))
        bound += on_path_count(apsp_new.dist, apsp_new.sigma, int(s), int(t))
    assert cnt.dep[0] <= bound  # nodes_visited across both walks


def test_kdb_stored_dependencies_refresh():
    # after an update the stored matrix must equal fresh accumulation
    from dynbet import accumulate_dependencies, sssp_augmented

    rng = np.random.default_rng(5)
    g = random_graph(rng, 12, 0.3, False, True)
    st = init_kdb(g)
    bet = brandes_betweenness(g)
    for _ in range(4):
        ev = random_event(rng, g)
        if ev is None:
            break
        kdb_update(g, st, bet, ev)
        for s in range(g.n):
            want = accumulate_dependencies(g, sssp_augmented(g, s))
            assert np.max(np.abs(st.deltas[s] - want)) <= 1e-9
