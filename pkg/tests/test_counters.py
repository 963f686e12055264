import numpy as np

from dynbet import (
    Graph,
    OpCounters,
    UpdateEvent,
    apsp_update,
    brandes_betweenness,
    check_bounds,
    extended_size,
    ibet_update,
    init_apsp,
)
from dynbet.counters import SRC_SCANS

from helpers import random_event, random_graph


def cycle4():
    return Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)], unit=True)


def test_extended_size_empty():
    assert extended_size(cycle4(), []) == 0


def test_extended_size_path_middle():
    g = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)], unit=True)
    assert extended_size(g, [1]) == 3  # 1 node + 2 incident edges


def test_extended_size_full_cycle():
    # each undirected edge is incident to two members, so it counts twice
    assert extended_size(cycle4(), [0, 1, 2, 3]) == 12


def test_extended_size_directed():
    g = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)], directed=True, unit=True)
    assert extended_size(g, [1]) == 3  # node + one in-edge + one out-edge


def test_counters_reset_and_totals():
    c = OpCounters()
    c.apsp[0] = 3
    c.dep[0] = 4
    assert c.total("nodes_visited") == 7
    c.reset()
    assert c.total("nodes_visited") == 0


def test_check_bounds_path_chord():
    g = Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], unit=True)
    before = g.copy()
    st = init_apsp(g)
    bet = brandes_betweenness(g)
    cnt = OpCounters()
    ev = UpdateEvent(0, 3, 1.0)
    delta = apsp_update(g, ev.u, ev.v, ev.new_weight, st)  # inspection copy, no mutation
    rep = ibet_update(g, st, bet, ev, cnt)
    verdict = check_bounds(rep, before, delta)
    assert verdict.ok, verdict.violations
    # the source-list counter equals the bound's sum-of-|S(p(y))| term exactly
    assert cnt.apsp[SRC_SCANS] == 4  # |S(v)| scanned for v and for node 2


def test_check_bounds_noop():
    g = cycle4()
    st = init_apsp(g)
    bet = brandes_betweenness(g)
    cnt = OpCounters()
    rep = ibet_update(g, st, bet, UpdateEvent(0, 1, 1.0), cnt)
    assert all(v == 0 for v in cnt.snapshot().values())
    verdict = check_bounds(rep, g, None)
    assert verdict.ok


def test_check_bounds_random_corpus():
    rng = np.random.default_rng(33)
    for directed in (False, True):
        for unit in (True, False):
            g = random_graph(rng, 22, 0.2, directed, unit)
            st = init_apsp(g)
            bet = brandes_betweenness(g)
            for _ in range(5):
                ev = random_event(rng, g)
                if ev is None:
                    break
                before = g.copy()
                inspect = apsp_update(g, ev.u, ev.v, ev.new_weight, st)
                cnt = OpCounters()
                rep = ibet_update(g, st, bet, ev, cnt)
                verdict = check_bounds(rep, before, None if inspect.is_empty else inspect)
                assert verdict.ok, verdict.violations


def test_counters_off_means_untouched_timing_path():
    g = cycle4()
    st = init_apsp(g)
    bet = brandes_betweenness(g)
    rep = ibet_update(g, st, bet, UpdateEvent(0, 2, 1.0))
    assert rep.counters is None and rep.tau_sizes == {}
