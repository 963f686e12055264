#!/usr/bin/env python3
"""Regenerate the bundled benchmark graph (data/bench-rgg-4k.edges).

A deterministic random geometric graph (giant component, ~4.1k nodes, ~13k
edges, unit weight). Geometric graphs have the strong locality and long
clustered shortest paths of road/sensor networks, the regime where
incremental update costs separate cleanly from full recomputation. The file
is committed; rerun this only if it must change, and expect benchmark
numbers to move with it.

Requires networkx (not a package dependency; install it just for this).
"""

import math
from pathlib import Path

import networkx as nx

N = 4200
AVG_DEG = 6.5
SEED = 9

radius = math.sqrt(AVG_DEG / (math.pi * N))
out = Path(__file__).resolve().parent.parent / "data" / "bench-rgg-4k.edges"
g = nx.random_geometric_graph(N, radius, seed=SEED)
g = g.subgraph(max(nx.connected_components(g), key=len)).copy()
g = nx.convert_node_labels_to_integers(g, ordering="sorted")
with open(out, "w") as fh:
    fh.write(f"# random geometric graph n={N} radius={radius:.6f} seed={SEED}, giant component\n")
    fh.write(f"# {g.number_of_nodes()} nodes, {g.number_of_edges()} edges, undirected, unit weight\n")
    for u, v in sorted(g.edges()):
        fh.write(f"{u} {v}\n")
print(f"wrote {out}: {g.number_of_nodes()} nodes, {g.number_of_edges()} edges")
