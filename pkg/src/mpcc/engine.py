"""Budget/level-driven connectivity main loop.

Each iteration runs three subroutines over the current graph:

* ``connect_two_hops``: every active vertex adds edges to same-level vertices
  in its 2-hop, limited by its remaining budget ``floor(b) - d``.
* ``relabel_inter_level``: every vertex with a strictly higher-level neighbor
  is relabeled to it (one hop only, chains are never followed) and becomes
  inactive.
* ``relabel_intra_level``: over-budget active vertices are marked saturated,
  leaders are sampled among them, leaders level up (``b <- b**1.25``) and the
  other saturated vertices contract into a same-level leader within 2 hops.

The loop stops once every remaining component is a clique. Vertex ``v`` owns
the set ``C(v)`` of original vertices it corresponds to; those sets are kept
as the ``rep`` array (original id -> owning live vertex).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import mpc
from ._kernels import highest_neighbor, nearest_leader, two_hop_candidates
from .errors import InvalidParams, TerminationOverflow
from .graph import Graph
from .mpc import CostLedger, MpcConfig
from .oracles import ComponentLabeling, is_clique_partition, oracle_components

GROWTH_EXPONENT = 1.25
_LEADER_STREAM = 0x1EAD


def polylog_space(m: int, n: int, alpha: float) -> float:
    """``m + n * lg(n)**alpha``, the total space the main loop assumes."""
    if n <= 1:
        return float(m + n)
    return float(m) + n * math.log2(n) ** alpha


def level_cap(beta0: float, n0: int) -> int:
    """Largest level any vertex can reach: ``ceil(log_1.25 log_beta0 n0)``, floored at 0."""
    if n0 <= 1 or beta0 <= 1.0 or beta0 >= n0:
        return 0
    x = math.log(math.log(n0) / math.log(beta0), GROWTH_EXPONENT)
    return max(0, math.ceil(x))


@dataclass(frozen=True)
class AlgoParams:
    T: float
    alpha: float = 5.0
    growth_exponent: float = GROWTH_EXPONENT
    leader_coeff: float = 3.0
    seed: int = 0
    max_iterations: int | None = None
    strict_audits: bool = False
    delta: float = 0.5
    space_constant: float = 4.0
    # test hook: constant probability, or a callable mapping saturated ids to
    # probabilities; None uses min(leader_coeff * ln n0 / b, 1)
    leader_override: float | Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if self.growth_exponent != GROWTH_EXPONENT:
            raise InvalidParams("growth exponent is fixed at 1.25")
        if self.leader_coeff <= 0:
            raise InvalidParams("leader_coeff must be positive")

    @classmethod
    def for_graph(cls, g: Graph, alpha: float = 5.0, **kw) -> "AlgoParams":
        return cls(T=polylog_space(g.m, g.num_live, alpha), alpha=alpha, **kw)


@dataclass
class IterationTrace:
    r: int
    live: int
    edges: int
    y: float
    b2: float
    max_level: int
    inactive: int
    saturated: int
    leaders: int
    contracted: int
    relabeled: int
    edges_added: int

    FIELDS = ("r", "live", "edges", "y", "b2", "max_level", "inactive", "saturated",
              "leaders", "contracted", "relabeled", "edges_added")


@dataclass
class EngineState:
    graph: Graph
    level: np.ndarray
    active: np.ndarray
    next: np.ndarray
    rep: np.ndarray
    params: AlgoParams
    n0: int
    beta0: float
    ledger: CostLedger
    iteration: int = 0
    trace: list[IterationTrace] = field(default_factory=list)
    last_initiated: np.ndarray | None = None
    last_quota: np.ndarray | None = None
    _tally: dict = field(default_factory=dict)

    @property
    def budget_cap(self) -> float:
        return float(self.n0)

    def budget_table(self, top: int) -> np.ndarray:
        levels = np.arange(top + 1, dtype=np.float64)
        with np.errstate(over="ignore"):
            return np.power(self.beta0, np.power(GROWTH_EXPONENT, levels))

    def budgets(self) -> np.ndarray:
        """``b(v) = beta0 ** (1.25 ** level(v))`` for every id."""
        return self.budget_table(int(self.level.max(initial=0)))[self.level]

    def corresponded(self, v: int) -> np.ndarray:
        """``C(v)``: original vertices currently represented by ``v``."""
        return np.flatnonzero(self.rep == v)

    def c_sets(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {int(v): set() for v in self.graph.live_vertices()}
        for u, v in enumerate(self.rep.tolist()):
            if v >= 0:
                out.setdefault(v, set()).add(u)
        return out

    def max_level(self) -> int:
        live = self.graph.alive
        return int(self.level[live].max()) if live.any() else 0


def _rng(seed: int, iteration: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), iteration, stream]))


def initialize(g: Graph, params: AlgoParams) -> EngineState:
    """Level 0, budget ``(T/n)**0.5``, active, ``next(v) = v``, ``C(v) = {v}``."""
    if params.T < g.m:
        raise InvalidParams(f"total space T={params.T} below edge count m={g.m}")
    n0 = g.num_live
    if n0 > 0:
        beta0 = math.sqrt(params.T / n0)
    else:
        beta0 = 1.0
    if g.m > 0 and beta0 <= 1.0:
        raise InvalidParams(f"T={params.T} gives initial budget {beta0} <= 1; need T > n")
    ids = np.arange(g.n, dtype=np.int64)
    rep = np.where(g.alive, ids, -1)
    config = MpcConfig(params.delta, max(n0, 1), max(params.T, 2.0 * max(n0, 1)),
                       params.space_constant)
    state = EngineState(
        graph=g,
        level=np.zeros(g.n, dtype=np.int64),
        active=g.alive.copy(),
        next=ids.copy(),
        rep=rep,
        params=params,
        n0=n0,
        beta0=beta0,
        ledger=CostLedger(config, strict=params.strict_audits),
    )
    _record(state, edges_added=0)
    return state


def _same_level_degree(state: EngineState, src, dst) -> np.ndarray:
    """``d(v)``: neighbors of level at least ``level(v)``."""
    lev = state.level
    return np.bincount(src[lev[dst] >= lev[src]], minlength=state.graph.n)


def _audit(state: EngineState) -> tuple[float, float]:
    g = state.graph
    src, dst = g.directed()
    b = state.budgets()
    d = _same_level_degree(state, src, dst)
    act = state.active & g.alive
    remaining = float(np.maximum(b[act] - d[act], 0.0).sum())
    b2 = float(np.square(b[g.alive]).sum())
    y = state.ledger.audit_iteration(g.m, remaining, b2, iteration=state.iteration,
                                     seed=state.params.seed)
    return y, b2


def _record(state: EngineState, edges_added: int) -> None:
    y, b2 = _audit(state)
    g = state.graph
    t = state._tally
    state.trace.append(IterationTrace(
        r=state.iteration,
        live=g.num_live,
        edges=g.m,
        y=y,
        b2=b2,
        max_level=state.max_level(),
        inactive=int((~state.active & g.alive).sum()),
        saturated=t.get("saturated", 0),
        leaders=t.get("leaders", 0),
        contracted=t.get("contracted", 0),
        relabeled=t.get("relabeled", 0),
        edges_added=edges_added,
    ))
    state._tally = {}


def connect_two_hops(state: EngineState) -> EngineState:
    g = state.graph
    src, dst = g.directed()
    indptr, indices = g.csr()
    b = state.budgets()
    d = _same_level_degree(state, src, dst)
    act = state.active & g.alive
    quota = np.where(act, np.floor(np.minimum(b, g.n + 1.0)).astype(np.int64) - d, 0)
    quota = np.maximum(quota, 0)
    initiators = np.flatnonzero((quota > 0) & (np.diff(indptr) > 0))
    s, t, _, scanned = two_hop_candidates(indptr, indices, state.level, initiators,
                                          quota[initiators])
    state.last_quota = quota
    state.last_initiated = np.bincount(s, minlength=g.n)
    if s.size:
        state.graph = g.with_edges(np.vstack([g.edges, np.stack([s, t], axis=1)]))
    state._tally["edges_added"] = state.graph.m - g.m
    state.ledger.charge_bundle(mpc.CONNECT_TWO_HOPS_BUNDLE, 2 * g.m + int(scanned),
                               iteration=state.iteration, step="connect_two_hops")
    return state


def relabel_inter_level(state: EngineState) -> EngineState:
    g = state.graph
    n = g.n
    indptr, indices = g.csr()
    lev = state.level
    nxt = np.arange(n, dtype=np.int64)
    top, h = highest_neighbor(indptr, indices, lev)
    moved = g.alive & (top > lev)
    nxt[moved] = h[moved]
    state.active &= ~moved
    state.next = nxt
    owned = state.rep >= 0
    if moved.any():
        mapped = g.mapped(nxt)
        state.rep[owned] = nxt[state.rep[owned]]
    else:
        mapped = g
    holds = np.bincount(state.rep[owned], minlength=n) > 0
    drop = g.alive & ~state.active & (mapped.degrees() == 0) & ~holds
    if drop.any() or mapped is not g:
        state.graph = mapped.with_alive(g.alive & ~drop)
    state._tally["relabeled"] = int(moved.sum())
    state.ledger.charge_bundle(mpc.RELABEL_INTER_BUNDLE, 2 * g.m,
                               iteration=state.iteration, step="relabel_inter_level")
    return state


def _leader_probability(state: EngineState, ids: np.ndarray, b: np.ndarray) -> np.ndarray:
    hook = state.params.leader_override
    if hook is None:
        p = state.params.leader_coeff * math.log(max(state.n0, 2)) / b[ids]
        return np.minimum(p, 1.0)
    if callable(hook):
        return np.asarray(hook(ids), dtype=np.float64)
    return np.full(ids.size, float(hook))


def relabel_intra_level(state: EngineState) -> EngineState:
    g = state.graph
    n = g.n
    src, dst = g.directed()
    lev = state.level
    b = state.budgets()
    act = state.active & g.alive
    same = lev[src] == lev[dst]

    # saturated once the same-level active neighborhood fills the integer
    # budget floor(b): a vertex that spent its whole quota must qualify
    peers = np.bincount(src[same & act[dst]], minlength=n)
    sat1 = act & (peers >= np.floor(b)) & (b < state.budget_cap)
    sat2 = act & (np.bincount(src[same & sat1[dst]], minlength=n) > 0)
    saturated = sat1 | sat2

    sat_ids = np.flatnonzero(saturated)
    coins = _rng(state.params.seed, state.iteration, _LEADER_STREAM).random(n)
    leader = np.zeros(n, dtype=bool)
    leader[sat_ids] = coins[sat_ids] < _leader_probability(state, sat_ids, b)

    old = lev.copy()
    state.level = lev + leader

    follower = saturated & ~leader
    if follower.any() and leader.any():
        indptr, indices = g.csr()
        choice = nearest_leader(indptr, indices, old, leader, follower)
    else:
        choice = np.full(n, n, dtype=np.int64)
    contracted = follower & (choice < n)

    if contracted.any():
        target = np.arange(n, dtype=np.int64)
        target[contracted] = choice[contracted]
        owned = state.rep >= 0
        state.rep[owned] = target[state.rep[owned]]
        state.graph = g.mapped(target, g.alive & ~contracted)

    state._tally.update(saturated=int(saturated.sum()), leaders=int(leader.sum()),
                        contracted=int(contracted.sum()))
    state.ledger.charge_bundle(mpc.RELABEL_INTRA_BUNDLE, 2 * g.m,
                               iteration=state.iteration, step="relabel_intra_level")
    return state


def default_max_iterations(n0: int) -> int:
    return int(20 * (math.log2(max(n0, 1)) + 2) ** 2)


def run_until_cliques(g: Graph, params: AlgoParams,
                      observer: Callable[[EngineState], None] | None = None
                      ) -> tuple[EngineState, list[IterationTrace]]:
    """Iterate until every remaining component is a clique.

    ``observer`` is called with the state after initialization and after every
    iteration; it must not mutate the state.
    """
    state = initialize(g, params)
    cap = params.max_iterations or default_max_iterations(state.n0)
    if observer is not None:
        observer(state)
    while not is_clique_partition(state.graph):
        if state.iteration >= cap:
            raise TerminationOverflow(
                f"no clique partition after {cap} iterations (n0={state.n0}, T={params.T})")
        state.iteration += 1
        connect_two_hops(state)
        added = state._tally.pop("edges_added", 0)
        relabel_inter_level(state)
        relabel_intra_level(state)
        _record(state, edges_added=added)
        if observer is not None:
            observer(state)
    return state, state.trace


def finalize_labels(state: EngineState) -> ComponentLabeling:
    """Label each original vertex by the minimum original id in its component."""
    comp = oracle_components(state.graph).label
    ids = np.arange(state.rep.size, dtype=np.int64)
    owned = state.rep >= 0
    raw = np.where(owned, comp[np.where(owned, state.rep, 0)], ids)
    return ComponentLabeling(ComponentLabeling(raw).canonical())


# -- serialization ---------------------------------------------------------

def trace_to_csv(trace: list[IterationTrace]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(IterationTrace.FIELDS)
    for row in trace:
        d = asdict(row)
        w.writerow([repr(d[k]) if isinstance(d[k], float) else d[k] for k in IterationTrace.FIELDS])
    return buf.getvalue()


def trace_to_json(trace: list[IterationTrace]) -> str:
    return json.dumps([asdict(r) for r in trace], sort_keys=True)
