"""Randomized vertex shrinking by min-id hooking.

One round points every vertex at its minimum-id neighbor, breaks the
resulting 2-cycles, prunes out-arcs of vertices with indegree at least two,
lets those vertices absorb their in-neighbors, and finally merges arcs that
survive an independent 1/3 sampling and end up isolated. Every merge follows
a graph edge, so components are preserved, and contraction never increases
the edge count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import mpc
from .errors import InvalidParams, NoProgress
from .graph import Graph
from .mpc import CostLedger
from .oracles import ComponentLabeling, oracle_components

KEEP_PROBABILITY = 1.0 / 3.0
STALL_LIMIT = 100
_ARC_STREAM = 0x5A1C


@dataclass(frozen=True)
class ShrinkMapping:
    """``f[u]``: the vertex that original (or round-input) vertex ``u`` now lives in.

    ``retired`` marks vertices that were taken out of play because they had no
    incident edge; they are their own component and are never touched again.
    """

    f: np.ndarray
    retired: np.ndarray

    @classmethod
    def identity(cls, n: int) -> "ShrinkMapping":
        return cls(np.arange(n, dtype=np.int64), np.zeros(n, dtype=bool))

    def then(self, step: np.ndarray) -> "ShrinkMapping":
        """Compose with a later per-round map ``step`` (``step`` applied second)."""
        return ShrinkMapping(step[self.f], self.retired)

    def with_retired(self, ids: np.ndarray) -> "ShrinkMapping":
        retired = self.retired.copy()
        retired[ids] = True
        return ShrinkMapping(self.f, retired)

    def pairs(self) -> np.ndarray:
        """``orig current`` rows."""
        return np.stack([np.arange(self.f.size, dtype=np.int64), self.f], axis=1)


@dataclass
class RoundStats:
    round_index: int
    live_before: int
    live_after: int
    edges_before: int
    edges_after: int
    hooked: int
    absorbed: int
    pair_merged: int

    FIELDS = ("round_index", "live_before", "live_after", "edges_before", "edges_after",
              "hooked", "absorbed", "pair_merged")


def _coins(seed: int, round_index: int, n: int) -> np.ndarray:
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1), round_index, _ARC_STREAM])
    return np.random.default_rng(ss).random(n)


def hook_arcs(g: Graph) -> np.ndarray:
    """Min-id arcs with 2-cycles broken and high-indegree out-arcs pruned.

    Returns ``out`` with ``out[v]`` the arc head of ``v`` or -1.
    """
    n = g.n
    indptr, indices = g.csr()
    deg = np.diff(indptr)
    out = np.full(n, -1, dtype=np.int64)
    has = g.alive & (deg > 0)
    out[has] = indices[indptr[:-1][has]]

    # a 2-cycle v <-> u keeps the arc leaving the smaller id
    src = np.flatnonzero(out >= 0)
    back = out[out[src]] == src
    out[src[back & (src > out[src])]] = -1

    # pruning cascade, simultaneous steps until nothing changes
    while True:
        src = np.flatnonzero(out >= 0)
        indeg = np.bincount(out[src], minlength=n)
        drop = src[indeg[src] >= 2]
        if drop.size == 0:
            return out
        out[drop] = -1


def shrink_round(g: Graph, seed: int, round_index: int,
                 keep_override: float | None = None) -> tuple[Graph, np.ndarray, RoundStats]:
    """One hooking round. Returns ``(contracted graph, step map, stats)``.

    ``step[v]`` is the id ``v`` merged into (``v`` itself if it survived).
    Vertices with no edges should be retired before calling. ``keep_override``
    replaces the 1/3 arc-keeping probability (test hook).
    """
    n = g.n
    out = hook_arcs(g)
    src = np.flatnonzero(out >= 0)
    indeg = np.bincount(out[src], minlength=n)
    step = np.arange(n, dtype=np.int64)

    # high-indegree heads absorb their tails; tails lose their own in-arcs
    absorb = src[indeg[out[src]] >= 2]
    step[absorb] = out[absorb]
    absorbed = np.zeros(n, dtype=bool)
    absorbed[absorb] = True
    rest = src[~absorbed[src] & ~absorbed[out[src]]]

    # what is left is a union of directed paths; sample and merge lone arcs
    p = KEEP_PROBABILITY if keep_override is None else float(keep_override)
    kept = rest[_coins(seed, round_index, n)[rest] < p]
    kin = np.bincount(out[kept], minlength=n)
    has_out = np.zeros(n, dtype=bool)
    has_out[kept] = True
    lone = kept[(kin[kept] == 0) & ~has_out[out[kept]]]
    step[lone] = out[lone]

    merged = absorbed.copy()
    merged[lone] = True
    h = g.mapped(step, g.alive & ~merged)
    stats = RoundStats(round_index, g.num_live, h.num_live, g.m, h.m,
                       int(src.size), int(absorb.size), int(lone.size))
    return h, step, stats


def retire_isolated(g: Graph) -> tuple[Graph, np.ndarray]:
    """Drop live vertices without edges; returns the new graph and their ids."""
    iso = g.isolated_live()
    if iso.size == 0:
        return g, iso
    alive = g.alive.copy()
    alive[iso] = False
    return g.with_alive(alive), iso


@dataclass
class ShrinkResult:
    graph: Graph
    mapping: ShrinkMapping
    rounds: int
    history: list[RoundStats] = field(default_factory=list)


def shrink_phase(g: Graph, target_vertices: int, seed: int, max_rounds: int | None = None,
                 ledger: CostLedger | None = None,
                 keep_override: float | None = None) -> ShrinkResult:
    """Repeat :func:`shrink_round` until at most ``target_vertices`` stay live.

    Isolated vertices are retired before every round (they are finished
    components). Raises :class:`NoProgress` after 100 consecutive rounds
    without a vertex-count change, or when ``max_rounds`` is exhausted.
    ``keep_override`` is passed through to every round (test hook).
    """
    if target_vertices < 1:
        raise InvalidParams("target_vertices must be at least 1")
    mapping = ShrinkMapping.identity(g.n)
    if g.num_live <= target_vertices:
        return ShrinkResult(g, mapping, 0)
    cur, iso = retire_isolated(g)
    mapping = mapping.with_retired(iso)
    history: list[RoundStats] = []
    stalled = 0
    r = 0
    while cur.num_live > target_vertices:
        if max_rounds is not None and r >= max_rounds:
            raise NoProgress(f"{cur.num_live} live vertices after {r} rounds (target {target_vertices})")
        if ledger is not None:
            ledger.charge_bundle(mpc.SHRINK_BUNDLE, 2 * cur.m + cur.num_live,
                                 step="shrink_round", round=r, seed=seed)
        nxt, step, stats = shrink_round(cur, seed, r, keep_override)
        history.append(stats)
        mapping = mapping.then(step)
        nxt, iso = retire_isolated(nxt)
        mapping = mapping.with_retired(iso)
        stalled = stalled + 1 if nxt.num_live == cur.num_live else 0
        if stalled >= STALL_LIMIT:
            raise NoProgress(f"vertex count stuck at {cur.num_live} for {STALL_LIMIT} rounds")
        cur = nxt
        r += 1
    return ShrinkResult(cur, mapping, r, history)


def induced_labels(result: ShrinkResult) -> np.ndarray:
    """Label every original vertex by the min original id sharing its final component."""
    comp = oracle_components(result.graph).label
    return ComponentLabeling(comp[result.mapping.f]).canonical()
