"""End-to-end connectivity: shrink phase, main loop, label pull-back, sweeps."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .engine import (AlgoParams, IterationTrace, finalize_labels, level_cap, polylog_space,
                     run_until_cliques)
from .errors import InvalidParams
from .generators import family as make_family
from .graph import Graph
from .mpc import CostLedger, MpcConfig
from .oracles import ComponentLabeling, estimate_diameter, exact_diameter, oracle_components
from .shrink import RoundStats, ShrinkMapping, shrink_phase

COMPOSED_SPACE_CONSTANT = 8.0
VERIFY_LIMIT = 10**6
EXACT_DIAMETER_LIMIT = 4096


@dataclass
class RunReport:
    n: int
    m: int
    seed: int
    delta: float
    alpha: float
    branch: str
    isolated: int
    shrink_rounds: int
    shrunk_vertices: int
    shrunk_edges: int
    main_T: float
    main_iterations: int
    rounds_charged: int
    peak_y: float
    peak_b2: float
    composed_peak_y: float
    max_level: int
    level_cap: int
    components: int
    verified: bool | None
    main_violations: list[dict] = field(default_factory=list)
    composed_violations: list[dict] = field(default_factory=list)
    diameters: list[int] | None = None
    wall_time: float = 0.0
    trace: list[IterationTrace] = field(default_factory=list, repr=False)
    shrink_history: list[RoundStats] = field(default_factory=list, repr=False)

    def to_dict(self, include_timing: bool = False) -> dict:
        """JSON-ready summary. Wall time is left out unless asked for, so that
        reports of identical runs compare byte for byte."""
        out = {k: v for k, v in asdict(self).items() if k not in ("trace", "shrink_history")}
        if not include_timing:
            out.pop("wall_time")
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2)


def _lg(x: float) -> float:
    return math.log2(x) if x > 1 else 0.0


def shrink_target(n: int, alpha: float) -> int:
    """``floor(n / lg(n)**alpha)``, at least 1."""
    if n <= 2:
        return max(n, 1)
    return max(1, math.floor(n / _lg(n) ** alpha))


def find_connected_components(g: Graph, delta: float = 0.5, seed: int = 0,
                              verify: bool | None = None, alpha: float = 5.0,
                              strict_audits: bool = False, max_iterations: int | None = None,
                              with_diameters: bool = False
                              ) -> tuple[ComponentLabeling, RunReport]:
    """Label components with the shrink phase followed by the main loop.

    Dense inputs (``m >= n lg(n)**alpha``) skip shrinking and run the main loop
    with ``T = 2m``. Otherwise the graph is shrunk to ``n / lg(n)**alpha``
    vertices and the main loop runs with ``T = m' + n' lg(n')**alpha``.
    Isolated vertices are labeled up front.
    """
    started = time.perf_counter()
    n_live = g.num_live
    if verify is None:
        verify = n_live <= VERIFY_LIMIT
    config = MpcConfig(delta, max(n_live, 1), float(max(g.m + n_live, 2)),
                       COMPOSED_SPACE_CONSTANT)
    composed = CostLedger(config, strict=strict_audits)

    iso = g.isolated_live()
    core_alive = g.alive.copy()
    core_alive[iso] = False
    core = Graph(g.n, g.edges, core_alive, _trusted=True)

    if g.m > 0 and g.m >= n_live * _lg(n_live) ** alpha:
        branch = "direct"
        mapping = ShrinkMapping.identity(g.n)
        sub = core
        T = 2.0 * g.m
        rounds, history = 0, []
    else:
        branch = "shrink"
        res = shrink_phase(core, shrink_target(n_live, alpha), seed, ledger=composed)
        mapping, sub, rounds, history = res.mapping, res.graph, res.rounds, res.history
        T = polylog_space(sub.m, sub.num_live, alpha)
    T = max(T, 2.0)

    params = AlgoParams(T=T, alpha=alpha, seed=seed, delta=delta,
                        strict_audits=strict_audits, max_iterations=max_iterations)
    state, trace = run_until_cliques(sub, params)
    main = state.ledger

    composed.rounds_charged += main.rounds_charged
    for kind, count in main.primitive_counts.items():
        composed.primitive_counts[kind] += count
    for row in trace:
        composed.audit_iteration(row.edges, max(row.y - row.edges, 0.0), row.b2,
                                 iteration=row.r, seed=seed, step="main_loop")

    sub_labels = finalize_labels(state).label
    labels = ComponentLabeling(ComponentLabeling(sub_labels[mapping.f]).canonical())

    verified = None
    if verify:
        verified = labels.same_partition(oracle_components(g))
    diameters = None
    if with_diameters:
        diameters = (exact_diameter(g) if n_live <= EXACT_DIAMETER_LIMIT
                     else estimate_diameter(g))

    report = RunReport(
        n=n_live, m=g.m, seed=seed, delta=delta, alpha=alpha, branch=branch,
        isolated=int(iso.size), shrink_rounds=rounds, shrunk_vertices=sub.num_live,
        shrunk_edges=sub.m, main_T=T, main_iterations=state.iteration,
        rounds_charged=composed.rounds_charged, peak_y=main.peak_potential_space,
        peak_b2=main.peak_budget_square_sum, composed_peak_y=composed.peak_potential_space,
        max_level=max(r.max_level for r in trace), level_cap=level_cap(state.beta0, state.n0),
        components=int(np.unique(labels.label[g.alive]).size), verified=verified,
        main_violations=list(main.violations), composed_violations=list(composed.violations),
        diameters=diameters, wall_time=time.perf_counter() - started,
        trace=list(trace), shrink_history=list(history),
    )
    return labels, report


# -- benchmark sweeps -------------------------------------------------------

BENCH_FIELDS = ("family", "n", "m", "D", "D_exact", "seed", "alpha", "T", "iterations",
                "rounds_charged", "peak_y_over_T", "peak_b2_over_T", "max_level", "level_cap",
                "violations", "correct")


def bench_row(g: Graph, family: str, seed: int, delta: float, alpha: float) -> dict:
    """Run the main loop directly on ``g`` with ``T = m + n lg(n)**alpha``."""
    T = polylog_space(g.m, g.num_live, alpha)
    params = AlgoParams(T=T, alpha=alpha, seed=seed, delta=delta)
    state, trace = run_until_cliques(g, params)
    ledger = state.ledger
    exact = g.num_live <= EXACT_DIAMETER_LIMIT
    diam = exact_diameter(g) if exact else estimate_diameter(g)
    correct = finalize_labels(state).same_partition(oracle_components(g))
    return {
        "family": family, "n": g.num_live, "m": g.m, "D": max(diam, default=0),
        "D_exact": exact, "seed": seed, "alpha": alpha, "T": T,
        "iterations": state.iteration, "rounds_charged": ledger.rounds_charged,
        "peak_y_over_T": ledger.peak_potential_space / T,
        "peak_b2_over_T": ledger.peak_budget_square_sum / T,
        "max_level": max(r.max_level for r in trace),
        "level_cap": level_cap(state.beta0, state.n0),
        "violations": len(ledger.violations), "correct": correct,
    }


def bench_sweep(family: str, sizes, seeds, delta: float = 0.5, alpha: float = 2.0,
                graph_seed: int = 0) -> list[dict]:
    """One row per ``(size, seed)``, sizes in the given order and seeds ascending."""
    sizes = list(sizes)
    if not sizes:
        raise InvalidParams("size grid is empty")
    rows = []
    for n in sizes:
        g = make_family(family, int(n), graph_seed)
        for seed in sorted(seeds):
            rows.append(bench_row(g, family, int(seed), delta, alpha))
    return rows


def rows_to_csv(rows: list[dict], fields=BENCH_FIELDS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow([repr(row[k]) if isinstance(row[k], float) else row[k] for k in fields])
    return buf.getvalue()
