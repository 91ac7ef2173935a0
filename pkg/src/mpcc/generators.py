"""Deterministic graph family generators.

Every family is a pure function of its :class:`GenSpec`; randomized families
draw from ``numpy.random.default_rng(seed)`` so the same spec and seed always
produce the same edge array.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import InvalidSpec
from .graph import Graph

KINDS = (
    "path",
    "cycle",
    "two_cycles",
    "star",
    "full_binary_tree",
    "grid_2d",
    "erdos_renyi_gnm",
    "caterpillar",
    "random_tree",
    "disjoint_union",
)


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int = 0
    m: int = 0
    rows: int = 0
    cols: int = 0
    legs: int = 1
    seed: int = 0
    parts: tuple["GenSpec", ...] = field(default_factory=tuple)

    def to_dict(self) -> dict[str, Any]:
        d = {"kind": self.kind, "n": self.n, "m": self.m, "rows": self.rows,
             "cols": self.cols, "legs": self.legs, "seed": self.seed}
        if self.parts:
            d["parts"] = [p.to_dict() for p in self.parts]
        return d


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidSpec(msg)


def _path_edges(n: int, offset: int = 0) -> np.ndarray:
    a = np.arange(offset, offset + n - 1, dtype=np.int64)
    return np.stack([a, a + 1], axis=1)


def _cycle_edges(n: int, offset: int = 0) -> np.ndarray:
    e = _path_edges(n, offset)
    return np.vstack([e, [[offset, offset + n - 1]]])


def _gnm_edges(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    total = n * (n - 1) // 2
    _need(m <= total, f"erdos_renyi_gnm: m={m} exceeds {total} possible edges")
    if m == 0:
        return np.empty((0, 2), dtype=np.int64)
    if m > total // 2:
        u, v = np.triu_indices(n, k=1)
        idx = np.sort(rng.choice(total, size=m, replace=False))
        return np.stack([u[idx], v[idx]], axis=1).astype(np.int64)
    chosen: set[int] = set()
    out = []
    while len(chosen) < m:
        need = m - len(chosen)
        a = rng.integers(0, n, size=2 * need)
        b = rng.integers(0, n, size=2 * need)
        for x, y in zip(a.tolist(), b.tolist()):
            if x == y:
                continue
            if x > y:
                x, y = y, x
            key = x * n + y
            if key not in chosen:
                chosen.add(key)
                out.append((x, y))
                if len(chosen) == m:
                    break
    return np.asarray(out, dtype=np.int64)


def _build(spec: GenSpec) -> tuple[int, np.ndarray]:
    k = spec.kind
    if k == "path":
        _need(spec.n >= 1, "path needs n >= 1")
        return spec.n, _path_edges(spec.n)
    if k == "cycle":
        _need(spec.n >= 3, "cycle needs n >= 3")
        return spec.n, _cycle_edges(spec.n)
    if k == "two_cycles":
        _need(spec.n >= 6 and spec.n % 2 == 0, "two_cycles needs even n >= 6")
        h = spec.n // 2
        return spec.n, np.vstack([_cycle_edges(h), _cycle_edges(h, h)])
    if k == "star":
        _need(spec.n >= 1, "star needs n >= 1")
        leaves = np.arange(1, spec.n, dtype=np.int64)
        return spec.n, np.stack([np.zeros_like(leaves), leaves], axis=1)
    if k == "full_binary_tree":
        _need(spec.n >= 1, "full_binary_tree needs n >= 1")
        child = np.arange(1, spec.n, dtype=np.int64)
        return spec.n, np.stack([(child - 1) // 2, child], axis=1)
    if k == "grid_2d":
        _need(spec.rows >= 1 and spec.cols >= 1, "grid_2d needs rows, cols >= 1")
        r, c = spec.rows, spec.cols
        ids = np.arange(r * c, dtype=np.int64).reshape(r, c)
        horiz = np.stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()], axis=1)
        vert = np.stack([ids[:-1, :].ravel(), ids[1:, :].ravel()], axis=1)
        return r * c, np.vstack([horiz, vert])
    if k == "erdos_renyi_gnm":
        _need(spec.n >= 1 and spec.m >= 0, "erdos_renyi_gnm needs n >= 1, m >= 0")
        return spec.n, _gnm_edges(spec.n, spec.m, np.random.default_rng(spec.seed))
    if k == "caterpillar":
        # spine of n vertices, each carrying `legs` pendant leaves
        _need(spec.n >= 1 and spec.legs >= 0, "caterpillar needs n >= 1, legs >= 0")
        spine = _path_edges(spec.n)
        owners = np.repeat(np.arange(spec.n, dtype=np.int64), spec.legs)
        leaves = np.arange(spec.n, spec.n * (1 + spec.legs), dtype=np.int64)
        return spec.n * (1 + spec.legs), np.vstack([spine, np.stack([owners, leaves], axis=1)])
    if k == "random_tree":
        _need(spec.n >= 1, "random_tree needs n >= 1")
        rng = np.random.default_rng(spec.seed)
        child = np.arange(1, spec.n, dtype=np.int64)
        parent = np.floor(rng.random(child.size) * child).astype(np.int64)
        return spec.n, np.stack([parent, child], axis=1)
    if k == "disjoint_union":
        _need(len(spec.parts) >= 1, "disjoint_union needs at least one part")
        offset, chunks = 0, []
        for part in spec.parts:
            pn, pe = _build(part)
            chunks.append(pe + offset)
            offset += pn
        return offset, np.vstack(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    raise InvalidSpec(f"unknown graph family {k!r}")


def generate(spec: GenSpec) -> Graph:
    """Build the family member described by ``spec``."""
    n, edges = _build(spec)
    return Graph(n, edges)


def family(kind: str, n: int, seed: int = 0, m: int | None = None) -> Graph:
    """Convenience wrapper used by the CLI and benchmarks.

    ``n`` is interpreted per family: side length squared for ``grid_2d``
    (rounded down to a square), spine length for ``caterpillar`` with two legs.
    """
    if kind == "grid_2d":
        side = max(1, int(np.sqrt(n)))
        return generate(GenSpec("grid_2d", rows=side, cols=side, seed=seed))
    if kind == "caterpillar":
        return generate(GenSpec("caterpillar", n=max(1, n // 3), legs=2, seed=seed))
    if kind == "erdos_renyi_gnm":
        return generate(GenSpec(kind, n=n, m=m if m is not None else 2 * n, seed=seed))
    return generate(GenSpec(kind, n=n, seed=seed))
