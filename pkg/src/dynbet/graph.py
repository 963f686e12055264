"""Mutable weighted digraph with CSR adjacency, built for incremental updates.

Nodes are dense 0-based integers; original edge-list labels are kept in a
side table for output. Adjacency is stored as sorted CSR arrays (indptr /
indices / weights) because every hot kernel consumes flat arrays directly.
Undirected graphs store both orientations symmetrically and alias the
in-adjacency to the out-adjacency. Mutations (single edge insert / weight
decrease / removal) rebuild the flat arrays with vectorized numpy ops, which
is O(m) but far below the cost of any update algorithm that follows.

Weights are strictly positive. Unit-weight graphs store weight 1.0 uniformly
so all engines share one representation; engines still branch to plain BFS
when ``unit`` is set.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .errors import EdgeListParseError, IncrementalViolation

__all__ = [
    "Graph",
    "UpdateEvent",
    "UpdateResult",
    "load_edge_list",
]


class UpdateResult(Enum):
    INSERTED = "inserted"
    DECREASED = "decreased"
    NOOP = "noop"


@dataclass(frozen=True)
class UpdateEvent:
    """An incremental edge update: insertion or weight decrease."""

    u: int
    v: int
    new_weight: float = 1.0

    def validate(self, graph: "Graph") -> None:
        if self.u == self.v:
            raise ValueError(f"self-loop update ({self.u},{self.v}) not allowed")
        n = graph.n
        if not (0 <= self.u < n and 0 <= self.v < n):
            raise ValueError(f"update ({self.u},{self.v}) out of range for n={n}")
        if not self.new_weight > 0:
            raise ValueError(f"edge weight must be positive, got {self.new_weight}")
        if graph.unit and self.new_weight != 1.0:
            raise ValueError("unit-weight graph updates must use weight 1.0")


class Graph:
    """Weighted digraph over nodes 0..n-1 with mutable CSR adjacency."""

    def __init__(
        self,
        n: int,
        directed: bool,
        unit: bool,
        out_indptr: np.ndarray,
        out_indices: np.ndarray,
        out_weights: np.ndarray,
        in_indptr: np.ndarray | None = None,
        in_indices: np.ndarray | None = None,
        in_weights: np.ndarray | None = None,
        labels: list[str] | None = None,
    ):
        self.n = int(n)
        self.directed = bool(directed)
        self.unit = bool(unit)
        self._op = out_indptr
        self._oi = out_indices
        self._ow = out_weights
        if directed:
            assert in_indptr is not None
            self._ip = in_indptr
            self._ii = in_indices
            self._iw = in_weights
        else:
            # undirected adjacency is its own transpose
            self._ip = self._op
            self._ii = self._oi
            self._iw = self._ow
        self.labels = labels if labels is not None else [str(i) for i in range(n)]

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, float]],
        directed: bool = False,
        unit: bool = True,
        labels: list[str] | None = None,
    ) -> "Graph":
        """Build a graph from (u, v, w) triples.

        Self-loops are dropped, parallel edges collapse to the minimum
        weight, and undirected inputs are symmetrized.
        """
        best: dict[tuple[int, int], float] = {}
        for u, v, w in edges:
            u = int(u)
            v = int(v)
            if u == v:
                continue
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            w = 1.0 if unit else float(w)
            if w <= 0:
                raise ValueError(f"edge ({u},{v}) has non-positive weight {w}")
            cur = best.get((u, v))
            if cur is None or w < cur:
                best[(u, v)] = w
            if not directed:
                cur = best.get((v, u))
                if cur is None or w < cur:
                    best[(v, u)] = w
        return cls._from_arc_dict(n, best, directed, unit, labels)

    @classmethod
    def _from_arc_dict(cls, n, arcs, directed, unit, labels=None) -> "Graph":
        items = sorted(arcs.items())
        m = len(items)
        oi = np.empty(m, dtype=np.int64)
        ow = np.empty(m, dtype=np.float64)
        op = np.zeros(n + 1, dtype=np.int64)
        for k, ((u, v), w) in enumerate(items):
            oi[k] = v
            ow[k] = w
            op[u + 1] += 1
        np.cumsum(op, out=op)
        if directed:
            tails = np.repeat(np.arange(n, dtype=np.int64), np.diff(op))
            order = np.lexsort((tails, oi))  # by head, then tail
            ii = tails[order]
            iw = ow[order]
            ip = np.zeros(n + 1, dtype=np.int64)
            ip[1:] = np.cumsum(np.bincount(oi, minlength=n))
            return cls(n, directed, unit, op, oi, ow, ip, ii, iw, labels)
        return cls(n, directed, unit, op, oi, ow, labels=labels)

    # -- read access --------------------------------------------------------

    @property
    def arc_count(self) -> int:
        """Number of stored directed arcs (2x the edge count if undirected)."""
        return len(self._oi)

    @property
    def m(self) -> int:
        """Logical edge count."""
        return self.arc_count if self.directed else self.arc_count // 2

    def out_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self._op, self._oi, self._ow

    def in_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self._ip, self._ii, self._iw

    def out_degrees(self) -> np.ndarray:
        return np.diff(self._op)

    def in_degrees(self) -> np.ndarray:
        return np.diff(self._ip)

    def out_neighbors(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self._op[u], self._op[u + 1]
        return self._oi[lo:hi], self._ow[lo:hi]

    def in_neighbors(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self._ip[u], self._ip[u + 1]
        return self._ii[lo:hi], self._iw[lo:hi]

    def _arc_pos(self, u: int, v: int) -> int:
        """Index of arc u->v in the out arrays, or -1."""
        lo, hi = int(self._op[u]), int(self._op[u + 1])
        pos = lo + int(np.searchsorted(self._oi[lo:hi], v))
        if pos < hi and self._oi[pos] == v:
            return pos
        return -1

    def has_edge(self, u: int, v: int) -> bool:
        return self._arc_pos(u, v) >= 0

    def weight(self, u: int, v: int) -> float:
        pos = self._arc_pos(u, v)
        if pos < 0:
            raise KeyError(f"edge ({u},{v}) not present")
        return float(self._ow[pos])

    def edge_list(self) -> list[tuple[int, int, float]]:
        """Canonical edge list: all arcs if directed, u < v once if undirected."""
        out = []
        for u in range(self.n):
            lo, hi = self._op[u], self._op[u + 1]
            for k in range(lo, hi):
                v = int(self._oi[k])
                if self.directed or u < v:
                    out.append((u, v, float(self._ow[k])))
        return out

    def copy(self) -> "Graph":
        if self.directed:
            return Graph(
                self.n, True, self.unit,
                self._op.copy(), self._oi.copy(), self._ow.copy(),
                self._ip.copy(), self._ii.copy(), self._iw.copy(),
                list(self.labels),
            )
        return Graph(
            self.n, False, self.unit,
            self._op.copy(), self._oi.copy(), self._ow.copy(),
            labels=list(self.labels),
        )

    # -- mutation -----------------------------------------------------------

    def _insert_arc(self, u: int, v: int, w: float, side: str) -> None:
        if side == "out":
            ptr, idx, wts = self._op, self._oi, self._ow
        else:
            ptr, idx, wts = self._ip, self._ii, self._iw
        lo, hi = int(ptr[u]), int(ptr[u + 1])
        pos = lo + int(np.searchsorted(idx[lo:hi], v))
        idx2 = np.insert(idx, pos, v)
        wts2 = np.insert(wts, pos, w)
        ptr[u + 1 :] += 1
        if side == "out":
            self._oi, self._ow = idx2, wts2
        else:
            self._ii, self._iw = idx2, wts2
        if not self.directed:
            self._ii, self._iw = self._oi, self._ow

    def _delete_arc(self, u: int, v: int, side: str) -> None:
        if side == "out":
            ptr, idx, wts = self._op, self._oi, self._ow
        else:
            ptr, idx, wts = self._ip, self._ii, self._iw
        lo, hi = int(ptr[u]), int(ptr[u + 1])
        pos = lo + int(np.searchsorted(idx[lo:hi], v))
        assert pos < hi and idx[pos] == v
        idx2 = np.delete(idx, pos)
        wts2 = np.delete(wts, pos)
        ptr[u + 1 :] -= 1
        if side == "out":
            self._oi, self._ow = idx2, wts2
        else:
            self._ii, self._iw = idx2, wts2
        if not self.directed:
            self._ii, self._iw = self._oi, self._ow

    def apply_update(self, event: UpdateEvent) -> UpdateResult:
        """Insert an edge or decrease an existing weight.

        Returns NOOP if the edge already exists at the same weight; raises
        IncrementalViolation on a weight increase.
        """
        event.validate(self)
        u, v, w = event.u, event.v, float(event.new_weight)
        pos = self._arc_pos(u, v)
        if pos >= 0:
            cur = float(self._ow[pos])
            if w > cur:
                raise IncrementalViolation(
                    f"weight increase {cur} -> {w} on edge ({u},{v}) rejected"
                )
            if w == cur:
                return UpdateResult.NOOP
            self._ow[pos] = w
            if self.directed:
                self._iw[self._in_pos(v, u)] = w
            else:
                self._ow[self._arc_pos(v, u)] = w
            return UpdateResult.DECREASED
        self._insert_arc(u, v, w, "out")
        if self.directed:
            self._insert_arc(v, u, w, "in")
        else:
            self._insert_arc(v, u, w, "out")
        return UpdateResult.INSERTED

    def _in_pos(self, v: int, u: int) -> int:
        lo, hi = int(self._ip[v]), int(self._ip[v + 1])
        pos = lo + int(np.searchsorted(self._ii[lo:hi], u))
        assert pos < hi and self._ii[pos] == u
        return pos

    def remove_edge(self, u: int, v: int) -> float:
        """Remove edge (u, v); returns its weight. Benchmark protocol helper."""
        pos = self._arc_pos(u, v)
        if pos < 0:
            raise KeyError(f"edge ({u},{v}) not present")
        w = float(self._ow[pos])
        self._delete_arc(u, v, "out")
        if self.directed:
            self._delete_arc(v, u, "in")
        else:
            self._delete_arc(v, u, "out")
        return w

    def __repr__(self) -> str:
        kind = "digraph" if self.directed else "graph"
        wk = "unit" if self.unit else "weighted"
        return f"<Graph {kind} {wk} n={self.n} m={self.m}>"


def load_edge_list(
    source: str | Path | TextIO,
    directed: bool = False,
    weighted: bool = False,
) -> Graph:
    """Parse a whitespace-delimited edge list ("u v" or "u v w" lines).

    Lines starting with '#' or '%' are comments. Node ids are compacted to
    0..n-1 in first-appearance order; original tokens are kept as labels.
    Duplicate edges collapse to the minimum weight, self-loops are dropped,
    and undirected inputs are symmetrized. In unit mode any weight column is
    ignored and all edges get weight 1.0.
    """
    if hasattr(source, "read"):
        stream = source
    else:
        stream = io.StringIO(Path(source).read_text())
    ids: dict[str, int] = {}
    labels: list[str] = []
    arcs: dict[tuple[int, int], float] = {}

    def node_id(tok: str) -> int:
        i = ids.get(tok)
        if i is None:
            i = len(labels)
            ids[tok] = i
            labels.append(tok)
        return i

    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListParseError(lineno, f"expected 2 or 3 fields, got {len(parts)}")
        u = node_id(parts[0])
        v = node_id(parts[1])
        if weighted and len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise EdgeListParseError(lineno, f"bad weight {parts[2]!r}") from None
            if not np.isfinite(w):
                raise EdgeListParseError(lineno, f"non-finite weight {parts[2]!r}")
            if w <= 0:
                raise EdgeListParseError(lineno, f"non-positive weight {w}")
        else:
            w = 1.0
        if u == v:
            continue
        cur = arcs.get((u, v))
        if cur is None or w < cur:
            arcs[(u, v)] = w
        if not directed:
            cur = arcs.get((v, u))
            if cur is None or w < cur:
                arcs[(v, u)] = w
    return Graph._from_arc_dict(len(labels), arcs, directed, not weighted, labels)
