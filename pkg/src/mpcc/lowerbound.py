"""Edge-sampling reduction on disjoint unions of cycles.

Each outer iteration deletes every edge independently with probability
``2 ln n / D'``, solves connectivity on what survived (a union of short paths
with high probability), contracts those components, and carries only the
deleted edges forward. Contracting a cycle with ``k`` deleted edges leaves a
``k``-cycle, so the instance keeps its shape while losing edges geometrically.
Once the remaining multigraph has at most ``S`` edges it is solved directly.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .errors import InvalidInput, InvalidParams
from .graph import Graph
from .mpc import MpcConfig
from .oracles import ComponentLabeling, oracle_components

Solver = Callable[[Graph], ComponentLabeling]
_DELETE_STREAM = 0xC7C1E


@dataclass
class ReductionStep:
    iteration: int
    vertices: int
    edges_before: int
    edges_kept: int
    edges_deleted: int
    edges_after: int
    max_diameter: int
    vertices_after: int

    FIELDS = ("iteration", "vertices", "edges_before", "edges_kept", "edges_deleted",
              "edges_after", "max_diameter", "vertices_after")


@dataclass
class ReductionStats:
    n: int
    d_prime: int
    seed: int
    delete_probability: float
    machine_space: int
    outer_iterations: int = 0
    components: int = 0
    steps: list[ReductionStep] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["steps"] = [asdict(s) for s in self.steps]
        return out


def iteration_bound(n: int, d_prime: int) -> int:
    """``ceil(ln n / ln(D' / (4 ln n)))``; infinite when ``D' <= 4 ln n``."""
    ratio = d_prime / (4.0 * math.log(n))
    if ratio <= 1.0:
        return math.inf
    return math.ceil(math.log(n) / math.log(ratio))


def check_disjoint_cycles(g: Graph) -> None:
    live = g.live_vertices()
    if live.size == 0:
        raise InvalidInput("empty graph")
    if not np.all(g.degrees()[live] == 2):
        raise InvalidInput("input is not a disjoint union of cycles (some degree differs from 2)")


def oracle_solver(g: Graph) -> ComponentLabeling:
    return oracle_components(g)


def driver_solver(seed: int, delta: float) -> Solver:
    from .driver import find_connected_components

    def solve(g: Graph) -> ComponentLabeling:
        labels, _ = find_connected_components(g, delta=delta, seed=seed, verify=False)
        return labels

    return solve


def _path_or_cycle_diameters(n: int, u: np.ndarray, v: np.ndarray, label: np.ndarray,
                             members: np.ndarray) -> int:
    """Largest component diameter of a subgraph of a cycle union (multi-edges allowed)."""
    if members.size == 0:
        return 0
    sizes = np.bincount(label[members], minlength=n)
    edges = np.bincount(label[u], minlength=n)
    reps = np.unique(label[members])
    # a proper subgraph of a cycle is a path; a whole cycle has as many edges as vertices
    diam = np.where(edges[reps] >= sizes[reps], sizes[reps] // 2, sizes[reps] - 1)
    return int(diam.max())


def cycle_reduction(g: Graph, d_prime: int, seed: int, solver: Solver | None = None,
                    delta: float = 0.5) -> tuple[ComponentLabeling, ReductionStats]:
    """Run the reduction; returns the final labeling of ``g`` and per-iteration stats."""
    if d_prime < 2:
        raise InvalidParams("d_prime must be at least 2")
    check_disjoint_cycles(g)
    n0 = g.num_live
    solve = solver or oracle_solver
    S = MpcConfig(delta, n0, float(max(g.m, 2 * n0))).S
    p = min(1.0, 2.0 * math.log(n0) / d_prime)
    stats = ReductionStats(n=n0, d_prime=d_prime, seed=seed, delete_probability=p,
                           machine_space=S)

    n = g.n
    owner = np.arange(n, dtype=np.int64)   # original id -> current vertex
    alive = g.alive.copy()
    eu = g.edges[:, 0].copy()
    ev = g.edges[:, 1].copy()
    it = 0
    while eu.size > S:
        rng = np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), it,
                                                           _DELETE_STREAM]))
        deleted = rng.random(eu.size) < p
        ku, kv = eu[~deleted], ev[~deleted]
        sampled = Graph(n, np.stack([ku, kv], axis=1), alive)
        label = np.asarray(solve(sampled).label, dtype=np.int64)
        members = np.flatnonzero(alive)
        diam = _path_or_cycle_diameters(n, ku, kv, label, members)
        du, dv = label[eu[deleted]], label[ev[deleted]]
        loop = du == dv
        eu, ev = du[~loop], dv[~loop]
        owner = label[owner]
        alive = np.zeros(n, dtype=bool)
        alive[np.unique(label[members])] = True
        stats.steps.append(ReductionStep(it, int(members.size), int(deleted.size),
                                         int(ku.size), int(deleted.sum()), int(eu.size),
                                         diam, int(alive.sum())))
        it += 1
    final = oracle_components(Graph(n, np.stack([eu, ev], axis=1), alive)).label
    labels = ComponentLabeling(ComponentLabeling(final[owner]).canonical())
    stats.outer_iterations = it
    stats.components = int(np.unique(labels.label[g.alive]).size)
    return labels, stats
