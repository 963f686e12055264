"""Exact betweenness centrality on dynamic graphs.

A library plus benchmark CLI for maintaining exact betweenness scores under
incremental updates (edge insertions and weight decreases): a
single-traversal incremental engine, two prior incremental baselines (KDB,
KWCC), static recomputation, brute-force oracles and operation-count
instrumentation.

Hot kernels run in a compiled extension when available, with a bit-identical
pure-Python fallback (see ``dynbet._kernels``).
"""

from ._kernels import available_backends, backend_name, set_backend, use_backend
from .apsp import AffectedDelta, ApspState, init_apsp
from .counters import BoundsVerdict, OpCounters, check_bounds, extended_size
from .engines import (
    KdbState,
    UpdateReport,
    apsp_update,
    dependency_decrease,
    dependency_increase,
    find_affected_sources,
    ibet_update,
    init_kdb,
    kdb_update,
    kwcc_update,
)
from .graph import Graph, UpdateEvent, UpdateResult, load_edge_list
from .oracle import oracle_affected_pairs, oracle_betweenness
from .static import (
    BetweennessState,
    SsspResult,
    accumulate_dependencies,
    brandes_betweenness,
    sssp_augmented,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "UpdateEvent",
    "UpdateResult",
    "load_edge_list",
    "ApspState",
    "AffectedDelta",
    "init_apsp",
    "SsspResult",
    "BetweennessState",
    "sssp_augmented",
    "accumulate_dependencies",
    "brandes_betweenness",
    "oracle_betweenness",
    "oracle_affected_pairs",
    "UpdateReport",
    "find_affected_sources",
    "apsp_update",
    "dependency_decrease",
    "dependency_increase",
    "ibet_update",
    "KdbState",
    "init_kdb",
    "kdb_update",
    "kwcc_update",
    "OpCounters",
    "extended_size",
    "check_bounds",
    "BoundsVerdict",
    "backend_name",
    "available_backends",
    "set_backend",
    "use_backend",
    "__version__",
]
