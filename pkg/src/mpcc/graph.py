"""Normalized undirected graph over stable integer vertex ids.

Vertices are never renumbered: removing or contracting a vertex tombstones it
in ``alive`` so that original ids stay meaningful for the whole pipeline.
Adjacency is held as a canonical edge array (``u < v``, lexicographically
sorted, no duplicates) from which a CSR view with sorted neighbor lists is
derived on demand.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from ._kernels import csr_from_pairs, upper_edges

_EMPTY_EDGES = np.empty((0, 2), dtype=np.int64)


def _check_range(n: int, arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64).reshape(-1, 2)
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValueError(f"edge endpoint outside [0, {n})")
    return arr


def _normalized_csr(n: int, arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return csr_from_pairs(n, np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1]))


def normalize_edges(n: int, edges) -> np.ndarray:
    """Return the canonical form of an edge collection.

    Self-loops are dropped, each edge is oriented ``u < v`` and duplicates are
    removed. The result is sorted lexicographically.
    """
    arr = _check_range(n, edges)
    if arr.size == 0:
        return _EMPTY_EDGES.copy()
    return upper_edges(*_normalized_csr(n, arr))


class Graph:
    """Undirected simple graph with tombstoned vertices.

    ``n`` is the size of the id space; ``alive`` marks which ids are live.
    Instances are treated as immutable: every mutating operation returns a new
    normalized graph.
    """

    __slots__ = ("n", "alive", "edges", "_csr", "_dir")

    def __init__(self, n: int, edges=None, alive=None, *, _trusted: bool = False):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = int(n)
        if alive is None:
            alive = np.ones(self.n, dtype=bool)
        else:
            alive = np.asarray(alive, dtype=bool).copy()
            if alive.shape != (self.n,):
                raise ValueError("alive mask must have length n")
        csr = None
        if edges is None:
            edges = _EMPTY_EDGES.copy()
        elif not _trusted:
            arr = _check_range(self.n, edges)
            if arr.size == 0:
                edges = _EMPTY_EDGES.copy()
            else:
                csr = _normalized_csr(self.n, arr)
                edges = upper_edges(*csr)
        if edges.size and not alive[edges.ravel()].all():
            raise ValueError("edge incident to a dead vertex")
        alive.setflags(write=False)
        edges.setflags(write=False)
        self.alive = alive
        self.edges = edges
        self._csr = None
        self._dir = None
        if csr is not None:
            self._set_csr(*csr)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, list(edges))

    def with_edges(self, edges, alive=None) -> "Graph":
        """New graph on the same id space with ``edges`` (normalized here)."""
        return Graph(self.n, edges, self.alive if alive is None else alive)

    def with_alive(self, alive) -> "Graph":
        """Same edges, different live set; cached adjacency views are shared."""
        h = Graph(self.n, self.edges, alive, _trusted=True)
        h._csr, h._dir = self._csr, self._dir
        return h

    def mapped(self, target: np.ndarray, alive=None) -> "Graph":
        """Replace every edge ``{u, v}`` by ``{target[u], target[v]}``."""
        if self.edges.size == 0:
            return Graph(self.n, None, self.alive if alive is None else alive)
        return self.with_edges(target[self.edges], alive)

    # -- queries -----------------------------------------------------------

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @property
    def num_live(self) -> int:
        return int(self.alive.sum())

    def live_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.alive)

    def _set_csr(self, indptr: np.ndarray, indices: np.ndarray) -> None:
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self._csr = (indptr, indices)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` over the full id space, neighbor lists sorted."""
        if self._csr is None:
            if self.edges.size == 0:
                self._set_csr(np.zeros(self.n + 1, dtype=np.int64), np.empty(0, dtype=np.int64))
            else:
                self._set_csr(*_normalized_csr(self.n, self.edges))
        return self._csr

    def directed(self) -> tuple[np.ndarray, np.ndarray]:
        """Both orientations of every edge, sorted by ``(src, dst)``."""
        if self._dir is None:
            indptr, indices = self.csr()
            src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(indptr))
            src.setflags(write=False)
            self._dir = (src, indices)
        return self._dir

    def degrees(self) -> np.ndarray:
        indptr, _ = self.csr()
        return np.diff(indptr)

    def neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self.csr()
        return indices[indptr[v]:indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def is_normalized(self) -> bool:
        e = self.edges
        if e.size == 0:
            return True
        if not (e[:, 0] < e[:, 1]).all():
            return False
        keys = e[:, 0] * np.int64(self.n) + e[:, 1]
        return bool((np.diff(keys) > 0).all())

    def isolated_live(self) -> np.ndarray:
        """Live vertices with no incident edge."""
        return np.flatnonzero(self.alive & (self.degrees() == 0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.alive, other.alive)
            and np.array_equal(self.edges, other.edges)
        )

    def __hash__(self):
        return hash((self.n, self.alive.tobytes(), self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, live={self.num_live}, m={self.m})"
