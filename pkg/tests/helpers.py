"""Shared test utilities: tiny brute-force oracles and corpus generators.

The enumeration oracle is deliberately naive (DFS over simple paths) and
shares nothing with the package, so frozen expected values in tests are
independently derived.
"""

from __future__ import annotations

import numpy as np

from dynbet import Graph, UpdateEvent

TOL = 1e-9


def enum_shortest(graph: Graph, s: int, t: int) -> tuple[float, int]:
    """(distance, path count) by exhaustive simple-path enumeration."""
    if s == t:
        return 0.0, 1
    best = [np.inf]
    counts: dict[float, int] = {}
    on_path = [False] * graph.n
    on_path[s] = True

    def dfs(x: int, length: float):
        if length > best[0] + TOL:
            return
        nbrs, wts = graph.out_neighbors(x)
        for y, w in zip(nbrs, wts):
            y = int(y)
            if on_path[y]:
                continue
            ln = length + float(w)
            if ln > best[0] + TOL:
                continue
            if y == t:
                if ln < best[0] - TOL:
                    best[0] = ln
                counts[round(ln, 9)] = counts.get(round(ln, 9), 0) + 1
            else:
                on_path[y] = True
                dfs(y, ln)
                on_path[y] = False

    dfs(s, 0.0)
    if best[0] == np.inf:
        return np.inf, 0
    return best[0], counts[round(best[0], 9)]


def enum_betweenness(graph: Graph) -> np.ndarray:
    """Definition-level scores by enumerating every shortest path."""
    n = graph.n
    scores = np.zeros(n)
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            d, cnt = enum_shortest(graph, s, t)
            if cnt == 0:
                continue
            paths = _all_shortest_paths(graph, s, t, d)
            for p in paths:
                for v in p[1:-1]:
                    scores[v] += 1.0 / cnt
    return scores


def _all_shortest_paths(graph: Graph, s: int, t: int, dist: float) -> list[list[int]]:
    out = []
    stack = [(s, 0.0, [s])]
    while stack:
        x, length, path = stack.pop()
        if x == t:
            if abs(length - dist) <= TOL * max(1.0, dist):
                out.append(path)
            continue
        if length > dist + TOL:
            continue
        nbrs, wts = graph.out_neighbors(x)
        for y, w in zip(nbrs, wts):
            y = int(y)
            if y in path:
                continue
            stack.append((y, length + float(w), path + [y]))
    return out


# -- randomized corpus --------------------------------------------------------


def random_graph(rng, n: int, p: float, directed: bool, unit: bool) -> Graph:
    edges = []
    for u in range(n):
        for v in range(n):
            if u == v or (not directed and u > v):
                continue
            if rng.random() < p:
                w = 1.0 if unit else round(rng.uniform(0.1, 3.0), 6)
                edges.append((u, v, w))
    return Graph.from_edges(n, edges, directed=directed, unit=unit)


def random_event(rng, g: Graph) -> UpdateEvent | None:
    """Insertion of a random non-edge, else a weight decrease / unit NoOp."""
    for _ in range(40):
        u = int(rng.integers(g.n))
        v = int(rng.integers(g.n))
        if u != v and not g.has_edge(u, v):
            w = 1.0 if g.unit else round(rng.uniform(0.1, 3.0), 6)
            return UpdateEvent(u, v, w)
    el = g.edge_list()
    if not el:
        return None
    u, v, w = el[int(rng.integers(len(el)))]
    if g.unit:
        return UpdateEvent(u, v, 1.0)  # NoOp re-insert
    return UpdateEvent(u, v, round(w * float(rng.uniform(0.3, 0.95)), 9))


def corpus_cases(n_cases_per_cell: int = 17, seed: int = 2024):
    """(case_id, graph, events) covering directed x weighted x density cells."""
    rng = np.random.default_rng(seed)
    cid = 0
    for directed in (False, True):
        for unit in (True, False):
            for p in (0.05, 0.15, 0.4):
                for _ in range(n_cases_per_cell):
                    n = int(rng.integers(5, 61))
                    g = random_graph(rng, n, p, directed, unit)
                    events = []
                    sim = g.copy()
                    for _ in range(20):
                        ev = random_event(rng, sim)
                        if ev is None:
                            break
                        events.append(ev)
                        sim.apply_update(ev)
                    yield cid, g, events
                    cid += 1


def delta_direct_sum(dist: np.ndarray, sigma: np.ndarray, s: int, targets) -> np.ndarray:
    """Direct-sum dependency-change oracle: sum over t in targets of
    sigma_st(v)/sigma_st, with sigma_st(v) = sigma_sv * sigma_vt on-path."""
    n = dist.shape[0]
    out = np.zeros(n)
    for t in targets:
        t = int(t)
        sst = sigma[s, t]
        if sst == 0.0:
            continue
        dst = dist[s, t]
        for v in range(n):
            if v == s or v == t:
                continue
            a, b = dist[s, v], dist[v, t]
            if np.isfinite(a) and np.isfinite(b) and abs(a + b - dst) <= TOL * max(1.0, abs(dst)):
                out[v] += sigma[s, v] * sigma[v, t] / sst
    return out


# -- adversarial family for the counter-scaling comparison --------------------


def kwcc_hub_family(k: int) -> tuple[Graph, UpdateEvent]:
    """Gadget where the single-traversal engine's APSP scan is Theta(n) but
    the per-source engine rescans a Theta(n)-degree hub once per affected
    source, i.e. Theta(n^2) edge scans.

    Layout: u-h; source chain h-c_1-...-c_k; target chain v-d_1-...-d_k with
    d_1-h; decoys z_1..z_k each adjacent to both u and v. Insert (u, v, 1).
    Every c_i is an affected source of v (new equal-length route via u), every
    d_j an affected target of u, while no (c_i, d_j) or (*, z_t) pair changes.
    """
    u, v, h = 0, 1, 2
    c = [3 + i for i in range(k)]
    d = [3 + k + i for i in range(k)]
    z = [3 + 2 * k + i for i in range(k)]
    n = 3 + 3 * k
    edges = [(u, h, 1.0), (h, c[0], 1.0), (v, d[0], 1.0), (d[0], h, 1.0)]
    edges += [(c[i], c[i + 1], 1.0) for i in range(k - 1)]
    edges += [(d[i], d[i + 1], 1.0) for i in range(k - 1)]
    edges += [(z[i], u, 1.0) for i in range(k)]
    edges += [(z[i], v, 1.0) for i in range(k)]
    return Graph.from_edges(n, edges, directed=False, unit=True), UpdateEvent(u, v, 1.0)
