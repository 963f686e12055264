"""Shared engine plumbing: update reports and event classification."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..counters import OpCounters
from ..graph import Graph, UpdateEvent, UpdateResult

__all__ = ["UpdateReport", "classify_event"]


@dataclass
class UpdateReport:
    """What one incremental update did and what it cost."""

    algo: str
    result: UpdateResult
    n_affected_sources: int = 0
    n_affected_targets: int = 0
    n_affected_pairs: int = 0
    apsp_ns: int = 0
    dep_ns: int = 0
    counters: OpCounters | None = None
    # Theta-bound inputs, filled only when counters are enabled (iBet):
    # sums over affected sources of |tau|, ||tau|| and |tau| log2 |tau|,
    # for the old-path and new-path passes respectively.
    tau_sizes: dict[str, float] = field(default_factory=dict)

    @property
    def total_ns(self) -> int:
        return self.apsp_ns + self.dep_ns


def classify_event(graph: Graph, event: UpdateEvent) -> UpdateResult:
    """Validate and classify without mutating.

    NOOP means the edge already exists at exactly the requested weight;
    weight increases raise IncrementalViolation via apply_update's rules.
    """
    event.validate(graph)
    if graph.has_edge(event.u, event.v):
        cur = graph.weight(event.u, event.v)
        if event.new_weight > cur:
            from ..errors import IncrementalViolation

            raise IncrementalViolation(
                f"weight increase {cur} -> {event.new_weight} on "
                f"({event.u},{event.v}) rejected"
            )
        if event.new_weight == cur:
            return UpdateResult.NOOP
        return UpdateResult.DECREASED
    return UpdateResult.INSERTED
