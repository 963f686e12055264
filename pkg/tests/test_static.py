import numpy as np
import pytest

from dynbet import (
    Graph,
    accumulate_dependencies,
    brandes_betweenness,
    oracle_betweenness,
    sssp_augmented,
)

from helpers import enum_shortest, random_graph


def path4():
    return Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], unit=True)


def cycle4():
    return Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)], unit=True)


def test_sssp_path():
    r = sssp_augmented(path4(), 0)
    assert list(r.dist) == [0, 1, 2, 3]
    assert list(r.sigma) == [1, 1, 1, 1]
    assert list(r.settle_order) == [0, 1, 2, 3]


def test_sssp_cycle():
    # distances/counts frozen from simple-path enumeration
    g = cycle4()
    for t in range(4):
        d, cnt = enum_shortest(g, 0, t)
        assert (d, cnt) == [(0, 1), (1, 1), (2, 2), (1, 1)][t]
    r = sssp_augmented(g, 0)
    assert list(r.dist) == [0, 1, 2, 1]
    assert list(r.sigma) == [1, 1, 2, 1]


def test_sssp_disconnected():
    g = Graph.from_edges(3, [(0, 1, 1)], unit=True)
    r = sssp_augmented(g, 0)
    assert r.dist[2] == np.inf and r.sigma[2] == 0
    assert set(r.settle_order) == {0, 1}


def test_sssp_invariants_random():
    rng = np.random.default_rng(17)
    for directed in (False, True):
        for unit in (True, False):
            g = random_graph(rng, 25, 0.2, directed, unit)
            for s in (0, 3):
                r = sssp_augmented(g, s)
                assert r.dist[s] == 0 and r.sigma[s] == 1
                # settle order sorted by distance
                ds = r.dist[r.settle_order]
                assert np.all(np.diff(ds) >= -1e-12)
                # sigma consistency: sigma(t) = sum over predecessors
                ip, ii, iw = g.in_arrays()
                for t in r.settle_order[1:]:
                    t = int(t)
                    acc = 0.0
                    for k in range(ip[t], ip[t + 1]):
                        y = int(ii[k])
                        if np.isfinite(r.dist[y]) and abs(r.dist[y] + iw[k] - r.dist[t]) <= 1e-9 * max(1.0, r.dist[t]):
                            acc += r.sigma[y]
                    assert acc == pytest.approx(r.sigma[t], rel=1e-12)


def test_dependencies_path():
    g = path4()
    delta = accumulate_dependencies(g, sssp_augmented(g, 0))
    assert list(delta) == [0, 2, 1, 0]


def test_dependencies_star_leaf():
    # center 0, leaves 1..3; from a leaf the center carries both other leaves
    g = Graph.from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)], unit=True)
    delta = accumulate_dependencies(g, sssp_augmented(g, 1))
    assert delta[0] == 2.0


def test_dependencies_single_edge():
    g = Graph.from_edges(2, [(0, 1, 1)], unit=True)
    delta = accumulate_dependencies(g, sssp_augmented(g, 0))
    assert delta[1] == 0.0


def test_brandes_path():
    assert list(brandes_betweenness(path4()).scores) == [0, 4, 4, 0]


def test_brandes_star():
    g = Graph.from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)], unit=True)
    assert brandes_betweenness(g).scores[0] == 6.0  # k(k-1) ordered leaf pairs


def test_brandes_cycle():
    assert list(brandes_betweenness(cycle4()).scores) == [1, 1, 1, 1]


def test_brandes_matches_oracle_random():
    rng = np.random.default_rng(99)
    for directed in (False, True):
        for unit in (True, False):
            for p in (0.05, 0.15, 0.4):
                n = int(rng.integers(5, 61))
                g = random_graph(rng, n, p, directed, unit)
                got = brandes_betweenness(g).scores
                want = oracle_betweenness(g).scores
                assert np.max(np.abs(got - want)) <= 1e-9


def test_unit_sum_identity():
    rng = np.random.default_rng(31)
    for directed in (False, True):
        g = random_graph(rng, 30, 0.15, directed, True)
        scores = brandes_betweenness(g).scores
        total = 0.0
        for s in range(g.n):
            d = sssp_augmented(g, s).dist
            finite = d[np.isfinite(d)]
            total += float(finite.sum() - (len(finite) - 1))  # sum over t != s of (hops - 1)
        assert scores.sum() == pytest.approx(total, rel=1e-9)


def test_isolated_node_changes_nothing():
    g = Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], unit=True)
    g2 = Graph.from_edges(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], unit=True)
    s1 = brandes_betweenness(g).scores
    s2 = brandes_betweenness(g2).scores
    assert np.array_equal(s1, s2[:4]) and s2[4] == 0
