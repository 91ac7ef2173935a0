"""Plain-text file formats: edge lists, labelings and shrink mappings."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .errors import InvalidInput
from .graph import Graph

PathLike = str | os.PathLike


def read_edge_list(path: PathLike) -> Graph:
    """Load ``u v`` lines, with an optional leading ``# n=<N>`` header.

    Without a header the id space is ``max id + 1``. Self-loops and duplicate
    edges are normalized away.
    """
    n = None
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("n=") and n is None and not pairs:
                    try:
                        n = int(body[2:])
                    except ValueError:
                        raise InvalidInput(f"{path}:{lineno}: bad header {line!r}") from None
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InvalidInput(f"{path}:{lineno}: expected 'u v', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise InvalidInput(f"{path}:{lineno}: non-integer vertex id") from None
            if u < 0 or v < 0:
                raise InvalidInput(f"{path}:{lineno}: negative vertex id")
            pairs.append((u, v))
    top = max((max(p) for p in pairs), default=-1) + 1
    if n is None:
        n = top
    elif top > n:
        raise InvalidInput(f"{path}: vertex id {top - 1} outside declared n={n}")
    return Graph(n, np.asarray(pairs, dtype=np.int64).reshape(-1, 2))


def write_edge_list(g: Graph, path: PathLike) -> None:
    lines = [f"# n={g.n}\n"]
    lines.extend(f"{u} {v}\n" for u, v in g.edges.tolist())
    Path(path).write_text("".join(lines), encoding="utf-8")


def write_pairs(path: PathLike, values: np.ndarray) -> None:
    """Write ``index value`` lines, e.g. a labeling or ``orig current`` mapping."""
    Path(path).write_text(
        "".join(f"{i} {int(x)}\n" for i, x in enumerate(np.asarray(values).tolist())),
        encoding="utf-8",
    )


def read_pairs(path: PathLike) -> np.ndarray:
    rows = [line.split() for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()]
    out = np.empty(len(rows), dtype=np.int64)
    for i, (k, v) in enumerate(rows):
        if int(k) != i:
            raise InvalidInput(f"{path}: expected index {i}, got {k}")
        out[i] = int(v)
    return out
