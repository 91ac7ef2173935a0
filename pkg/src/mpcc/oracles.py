"""Exact reference oracles: component labelings, diameters, clique test.

These are deliberately simple sequential algorithms, independent of the
engine code paths they are used to check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class ComponentLabeling:
    """Map from vertex id to a representative id of its component."""

    label: np.ndarray

    def __post_init__(self):
        lab = np.asarray(self.label, dtype=np.int64)
        lab.setflags(write=False)
        object.__setattr__(self, "label", lab)

    def __len__(self) -> int:
        return int(self.label.size)

    def __getitem__(self, v: int) -> int:
        return int(self.label[v])

    def canonical(self) -> np.ndarray:
        """Relabel every class by its minimum member."""
        lab = self.label
        if lab.size == 0:
            return lab.copy()
        mins = np.full(lab.size, lab.size, dtype=np.int64)
        np.minimum.at(mins, lab, np.arange(lab.size, dtype=np.int64))
        return mins[lab]

    def num_components(self) -> int:
        return int(np.unique(self.label).size)

    def same_partition(self, other: "ComponentLabeling") -> bool:
        return len(self) == len(other) and np.array_equal(self.canonical(), other.canonical())

    def classes(self) -> list[list[int]]:
        can = self.canonical()
        order = np.argsort(can, kind="stable")
        splits = np.flatnonzero(np.diff(can[order])) + 1
        return [c.tolist() for c in np.split(order, splits)] if can.size else []

    def is_fixed_point(self) -> bool:
        return bool(np.array_equal(self.label[self.label], self.label))


@numba.njit(cache=True)
def _dsu_labels(n, us, vs):
    parent = np.arange(n)
    for i in range(us.size):
        a = us[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = vs[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            # keep the smaller id as root so roots are class minima
            if a < b:
                parent[b] = a
            else:
                parent[a] = b
    for v in range(n):
        r = v
        while parent[r] != r:
            r = parent[r]
        parent[v] = r
    return parent


@numba.njit(cache=True)
def _bfs_labels(n, indptr, indices):
    label = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = s
        head, tail = 0, 1
        queue[0] = s
        while head < tail:
            x = queue[head]
            head += 1
            for j in range(indptr[x], indptr[x + 1]):
                y = indices[j]
                if label[y] < 0:
                    label[y] = s
                    queue[tail] = y
                    tail += 1
    return label


def oracle_components(g: Graph) -> ComponentLabeling:
    """Union-find labeling; each class is represented by its minimum id."""
    e = g.edges
    return ComponentLabeling(_dsu_labels(g.n, e[:, 0].copy(), e[:, 1].copy()))


def bfs_components(g: Graph) -> ComponentLabeling:
    """Flood-fill labeling, used to cross-check :func:`oracle_components`."""
    indptr, indices = g.csr()
    return ComponentLabeling(_bfs_labels(g.n, indptr, indices))


@numba.njit(cache=True)
def _eccentricity(indptr, indices, s, dist, queue):
    dist[s] = 0
    head, tail = 0, 1
    queue[0] = s
    far = s
    while head < tail:
        x = queue[head]
        head += 1
        if dist[x] > dist[far]:
            far = x
        for j in range(indptr[x], indptr[x + 1]):
            y = indices[j]
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue[tail] = y
                tail += 1
    ecc = dist[far]
    for i in range(tail):
        dist[queue[i]] = -1
    return ecc, far


@numba.njit(cache=True)
def _all_pairs_diameter(indptr, indices, members):
    n = indptr.size - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    best = 0
    for i in range(members.size):
        ecc, _ = _eccentricity(indptr, indices, members[i], dist, queue)
        if ecc > best:
            best = ecc
    return best


@numba.njit(cache=True)
def _double_sweep(indptr, indices, s):
    n = indptr.size - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    _, far = _eccentricity(indptr, indices, s, dist, queue)
    ecc, _ = _eccentricity(indptr, indices, far, dist, queue)
    return ecc


def _components_of_live(g: Graph):
    lab = oracle_components(g).label
    live = g.live_vertices()
    reps, inv = np.unique(lab[live], return_inverse=True)
    return live, reps, inv


def exact_diameter(g: Graph) -> list[int]:
    """Hop diameter of every live component, ordered by minimum member id.

    Tree components are handled with a double sweep (exact on trees); all
    other components run a BFS from every member.
    """
    indptr, indices = g.csr()
    live, reps, inv = _components_of_live(g)
    deg = g.degrees()
    out = []
    for k in range(reps.size):
        members = live[inv == k]
        edges = int(deg[members].sum()) // 2
        if edges == members.size - 1:
            out.append(int(_double_sweep(indptr, indices, members[0])))
        else:
            out.append(int(_all_pairs_diameter(indptr, indices, members)))
    return out


def estimate_diameter(g: Graph) -> list[int]:
    """Double-sweep lower bound per component (exact on trees)."""
    indptr, indices = g.csr()
    live, reps, inv = _components_of_live(g)
    firsts = np.zeros(reps.size, dtype=np.int64)
    firsts[inv[::-1]] = live[::-1]
    return [int(_double_sweep(indptr, indices, s)) for s in firsts]


def is_clique_partition(g: Graph) -> bool:
    """True iff every live component is a complete graph."""
    if g.m == 0:
        return True
    deg = g.degrees()
    e = g.edges
    # adjacent vertices of a clique have equal degree
    if not np.array_equal(deg[e[:, 0]], deg[e[:, 1]]):
        return False
    lab = oracle_components(g).label
    live = g.live_vertices()
    sizes = np.bincount(lab[live], minlength=g.n)
    return bool(np.array_equal(deg[live], sizes[lab[live]] - 1))
