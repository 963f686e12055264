import numpy as np

from dynbet import Graph, UpdateEvent, brandes_betweenness, oracle_affected_pairs, oracle_betweenness

from helpers import enum_betweenness, random_graph


def test_oracle_path():
    g = Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], unit=True)
    assert list(oracle_betweenness(g).scores) == [0, 4, 4, 0]


def test_oracle_empty_graph():
    g = Graph.from_edges(0, [], unit=True)
    assert len(oracle_betweenness(g).scores) == 0


def test_oracle_weighted_triangle():
    # single interior path a-b-c for the (a,c) pairs: hand enumeration gives 2
    g = Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)], unit=False)
    assert list(oracle_betweenness(g).scores) == [0, 2, 0]


def test_oracle_matches_enumeration():
    rng = np.random.default_rng(12)
    for directed in (False, True):
        g = random_graph(rng, 7, 0.4, directed, False)
        got = oracle_betweenness(g).scores
        want = enum_betweenness(g)
        assert np.max(np.abs(got - want)) <= 1e-9


def test_affected_pairs_path_chord():
    g = Graph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], unit=True)
    g2 = g.copy()
    g2.apply_update(UpdateEvent(0, 3, 1.0))
    pairs = oracle_affected_pairs(g, g2)
    assert pairs == {(0, 3), (0, 2), (1, 3), (3, 0), (2, 0), (3, 1)}


def test_affected_pairs_noop():
    g = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)], unit=True)
    assert oracle_affected_pairs(g, g.copy()) == set()


def test_affected_pairs_short_chord():
    g = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)], unit=True)
    g2 = g.copy()
    g2.apply_update(UpdateEvent(0, 2, 1.0))
    assert oracle_affected_pairs(g, g2) == {(0, 2), (2, 0)}


def test_oracle_vs_brandes_is_symmetric_check():
    # the two routes are independent implementations; spot-check a tricky case
    g = Graph.from_edges(
        5,
        [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 1.0), (2, 3, 2.0), (3, 4, 0.25), (2, 4, 2.25)],
        unit=False,
    )
    a = brandes_betweenness(g).scores
    b = oracle_betweenness(g).scores
    assert np.max(np.abs(a - b)) <= 1e-9
