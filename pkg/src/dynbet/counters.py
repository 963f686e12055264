"""Operation counters and empirical complexity-bound checks.

Counters tally traversal work per update, split into the APSP-update phase
and the dependency-update phase. They are disabled by default (engines take
``counters=None``) so benchmark timings stay clean; pass an ``OpCounters``
to collect them.

``check_bounds`` compares an update's counters against the incremental
engine's stated cost expressions: the APSP phase against
``||S(v)|| + ||T(u)|| + sum_y |S(p(y))|`` and the dependency phase against
``sum_s ||tau(s)|| + ||tau'(s)||`` (plus ``|tau| log |tau|`` terms on
weighted graphs), each scaled by a fixed constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

__all__ = ["OpCounters", "extended_size", "BoundsVerdict", "check_bounds"]

# slot order inside the raw int64[5] arrays (kernels index these positions)
NODES, EDGES, SRC_SCANS, PQ_INS, PQ_EXT = range(5)
_NAMES = ("nodes_visited", "edges_scanned", "source_list_scans",
          "pq_inserts", "pq_extracts")


@dataclass
class OpCounters:
    """Traversal tallies for one update, per phase."""

    apsp: np.ndarray = field(default_factory=lambda: np.zeros(5, dtype=np.int64))
    dep: np.ndarray = field(default_factory=lambda: np.zeros(5, dtype=np.int64))

    def reset(self) -> None:
        self.apsp[:] = 0
        self.dep[:] = 0

    def total(self, name: str) -> int:
        i = _NAMES.index(name)
        return int(self.apsp[i] + self.dep[i])

    def snapshot(self) -> dict[str, int]:
        out = {}
        for i, name in enumerate(_NAMES):
            out[f"apsp_{name}"] = int(self.apsp[i])
            out[f"dep_{name}"] = int(self.dep[i])
        return out

    def copy(self) -> "OpCounters":
        return OpCounters(self.apsp.copy(), self.dep.copy())


def extended_size(graph: Graph, nodes) -> int:
    """|A| plus edges incident to members of A, one count per member endpoint."""
    nodes = np.asarray(nodes, dtype=np.int64)
    if len(nodes) == 0:
        return 0
    deg = graph.out_degrees()[nodes].sum()
    if graph.directed:
        deg += graph.in_degrees()[nodes].sum()
    return int(len(nodes) + deg)


@dataclass
class BoundsVerdict:
    ok: bool
    constant: float
    apsp_bound: float
    dep_bound: float
    violations: list[str]


def check_bounds(report, graph_before: Graph, delta, constant: float = 4.0) -> BoundsVerdict:
    """Assert counters <= constant * bound expression for both phases.

    Requires a report produced with counters enabled by the incremental
    engine (it carries the tau size sums the dependency bound needs).
    """
    if report.counters is None:
        raise ValueError("check_bounds needs a report with counters enabled")
    violations: list[str] = []

    if delta is None or delta.is_empty:
        apsp_bound = 0.0
        dep_bound = 0.0
    else:
        src_term = 0
        tpos = {int(t): i for i, t in enumerate(delta.targets)}
        for t, p in zip(delta.targets, delta.preds):
            if int(p) == delta.v:
                src_term += len(delta.sources)
            else:
                i = tpos[int(p)]
                src_term += int(delta.tgt_offsets[i + 1] - delta.tgt_offsets[i])
        apsp_bound = (
            extended_size(graph_before, delta.sources)
            + extended_size(graph_before, delta.targets)
            + src_term
        )
        dep_bound = report.tau_sizes.get("tau_ext", 0.0) + report.tau_sizes.get("taup_ext", 0.0)
        if not graph_before.unit:
            dep_bound += report.tau_sizes.get("tau_log", 0.0) + report.tau_sizes.get("taup_log", 0.0)

    for i, name in enumerate(_NAMES):
        got = int(report.counters.apsp[i])
        if got > constant * apsp_bound:
            violations.append(f"apsp {name}: {got} > {constant} * {apsp_bound}")
        got = int(report.counters.dep[i])
        if got > constant * dep_bound:
            violations.append(f"dep {name}: {got} > {constant} * {dep_bound}")
    return BoundsVerdict(not violations, constant, float(apsp_bound), float(dep_bound), violations)
