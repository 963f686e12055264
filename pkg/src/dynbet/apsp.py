"""The n x n augmented-APSP state shared by the dynamic engines.

``ApspState`` holds the distance and shortest-path-count matrices. Updates
stage their changes in an ``AffectedDelta`` so that pre-update values stay
readable (the dependency-decrease pass needs them for arbitrary interior
nodes); ``commit`` then overwrites exactly the affected pairs, mirroring
(t, s) entries for undirected graphs.

Path counts are float64: they can grow exponentially and stay exact only up
to 2**53, which covers every graph this package targets.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import CapacityError, ConsistencyError
from .graph import Graph

__all__ = ["ApspState", "AffectedDelta", "init_apsp", "MEMORY_CAP_ENV"]

MEMORY_CAP_ENV = "DYNBET_MEMORY_CAP"
_DEFAULT_CAP = 8 << 30  # bytes

_REL_TOL = 1e-9


def memory_cap() -> int:
    return int(os.environ.get(MEMORY_CAP_ENV, _DEFAULT_CAP))


def check_matrix_budget(n: int, matrices: int) -> None:
    """Fail before allocating if `matrices` n x n float64 blocks exceed the cap."""
    need = matrices * n * n * 8
    cap = memory_cap()
    if need > cap:
        raise CapacityError(
            f"{matrices} matrices of {n}x{n} float64 need {need} bytes, "
            f"cap is {cap} (set {MEMORY_CAP_ENV} to raise)"
        )


class ApspState:
    """Distance and path-count matrices for all ordered pairs."""

    def __init__(self, dist: np.ndarray, sigma: np.ndarray):
        self.dist = dist
        self.sigma = sigma
        self.n = dist.shape[0]

    def copy(self) -> "ApspState":
        return ApspState(self.dist.copy(), self.sigma.copy())

    def commit(self, delta: "AffectedDelta", undirected: bool) -> None:
        """Overwrite every staged pair with its new values.

        For undirected graphs the mirrored entries are written symmetrically.
        A staged distance increase means the state and update disagree and is
        a hard internal error.
        """
        if delta.n_pairs == 0:
            return
        ps, pt = delta.pair_s, delta.pair_t
        nd, ns = delta.pair_new_dist, delta.pair_new_sigma
        old = self.dist[ps, pt]
        scale = np.maximum(1.0, np.abs(old))
        bad = nd > old + _REL_TOL * np.where(np.isfinite(old), scale, 0.0)
        if np.any(bad & np.isfinite(old)):
            raise ConsistencyError("staged update would increase a distance")
        self.dist[ps, pt] = nd
        self.sigma[ps, pt] = ns
        if undirected:
            self.dist[pt, ps] = nd
            self.sigma[pt, ps] = ns


def init_apsp(graph: Graph) -> ApspState:
    """Populate the matrices with one augmented SSSP per source."""
    n = graph.n
    check_matrix_budget(n, 2)
    dist = np.empty((n, n), dtype=np.float64)
    sigma = np.empty((n, n), dtype=np.float64)
    op, oi, ow = graph.out_arrays()
    ip, ii, iw = graph.in_arrays()
    scores = np.empty(n, dtype=np.float64)  # scratch; static_pass fills it anyway
    _kernels.kern().static_pass(op, oi, ow, ip, ii, iw, n, graph.unit, scores,
                                dist, sigma, None)
    return ApspState(dist, sigma)


@dataclass
class AffectedDelta:
    """Staged changes of one incremental update.

    Target-major fields come straight from the traversal: ``targets`` in
    discovery order (``targets[0] == v``), the recorded predecessor of each,
    and per-target groups of affected sources with staged (dist, sigma).
    Pair-major fields are the same pairs sorted by source (stable within a
    source) for the per-source dependency passes and for commit.
    """

    u: int
    v: int
    new_weight: float
    sources: np.ndarray  # S(v) in discovery order
    targets: np.ndarray  # T(u) in traversal order
    preds: np.ndarray
    tgt_offsets: np.ndarray
    tgt_sources: np.ndarray
    tgt_new_dist: np.ndarray
    tgt_new_sigma: np.ndarray
    pair_s: np.ndarray = field(init=False)
    pair_t: np.ndarray = field(init=False)
    pair_new_dist: np.ndarray = field(init=False)
    pair_new_sigma: np.ndarray = field(init=False)

    def __post_init__(self):
        # expand target-major groups to aligned pair arrays, then group by source
        counts = np.diff(self.tgt_offsets) if len(self.targets) else np.empty(0, np.int64)
        t_of_pair = np.repeat(self.targets, counts)
        order = np.argsort(self.tgt_sources, kind="stable")
        self.pair_s = self.tgt_sources[order]
        self.pair_t = t_of_pair[order]
        self.pair_new_dist = self.tgt_new_dist[order]
        self.pair_new_sigma = self.tgt_new_sigma[order]

    @classmethod
    def empty(cls, u: int, v: int, new_weight: float) -> "AffectedDelta":
        z = np.empty(0, dtype=np.int64)
        zf = np.empty(0, dtype=np.float64)
        return cls(u, v, new_weight, z, z, z, np.zeros(1, dtype=np.int64), z, zf, zf)

    @property
    def n_pairs(self) -> int:
        return len(self.pair_s)

    @property
    def is_empty(self) -> bool:
        return len(self.targets) == 0

    @cached_property
    def source_ids(self) -> np.ndarray:
        """Distinct affected sources, ascending (the dependency-pass order)."""
        return np.unique(self.pair_s)

    @cached_property
    def _src_offsets(self) -> np.ndarray:
        return np.searchsorted(self.pair_s, np.append(self.source_ids, np.iinfo(np.int64).max))

    def targets_of(self, s: int) -> np.ndarray:
        """T(s): staged targets of source s, in staging order."""
        k = int(np.searchsorted(self.source_ids, s))
        if k >= len(self.source_ids) or self.source_ids[k] != s:
            return np.empty(0, dtype=np.int64)
        off = self._src_offsets
        return self.pair_t[off[k] : off[k + 1]]

    def per_source_groups(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(sources, offsets, flat targets) for the batched dependency kernels."""
        return self.source_ids, self._src_offsets, self.pair_t

    def sources_of(self, t: int) -> np.ndarray:
        """S(t) for a staged target, in staging order."""
        pos = np.nonzero(self.targets == t)[0]
        if len(pos) == 0:
            return np.empty(0, dtype=np.int64)
        i = int(pos[0])
        return self.tgt_sources[self.tgt_offsets[i] : self.tgt_offsets[i + 1]]

    def staged_map(self) -> dict[tuple[int, int], tuple[float, float]]:
        """{(s, t): (new_dist, new_sigma)}; test/debug convenience."""
        return {
            (int(s), int(t)): (float(d), float(g))
            for s, t, d, g in zip(self.pair_s, self.pair_t,
                                  self.pair_new_dist, self.pair_new_sigma)
        }
