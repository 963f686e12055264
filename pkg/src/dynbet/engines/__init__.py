"""Dynamic betweenness engines: the incremental update and two baselines."""

from .common import UpdateReport, classify_event
from .ibet import (
    apsp_update,
    dependency_decrease,
    dependency_increase,
    find_affected_sources,
    ibet_update,
)
from .kdb import KdbState, init_kdb, kdb_update
from .kwcc import kwcc_update

__all__ = [
    "UpdateReport",
    "classify_event",
    "find_affected_sources",
    "apsp_update",
    "dependency_decrease",
    "dependency_increase",
    "ibet_update",
    "KdbState",
    "init_kdb",
    "kdb_update",
    "kwcc_update",
]
