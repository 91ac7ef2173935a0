"""Command-line entry point: ``mpcc``.

Exit codes: 0 success, 2 verification mismatch, 3 termination/progress
failure (or an audit violation under ``MPCC_STRICT_AUDITS=1``), 4 invalid input.
"""

from __future__ import annotations

import functools
import os
import sys
from pathlib import Path

import click

from .driver import bench_sweep, find_connected_components, rows_to_csv
from .engine import trace_to_csv
from .errors import (AuditViolation, InvalidInput, InvalidParams, InvalidSpec, NoProgress,
                     TerminationOverflow)
from .generators import KINDS, GenSpec, family, generate
from .io import read_edge_list, write_edge_list, write_pairs
from .lowerbound import ReductionStep, cycle_reduction, driver_solver, oracle_solver
from .shrink import RoundStats, shrink_phase

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_FAILURE = 3
EXIT_INVALID = 4


def strict_from_env() -> bool:
    return os.environ.get("MPCC_STRICT_AUDITS", "") == "1"


def _guard(fn):
    """Translate library errors into the documented exit codes."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (InvalidInput, InvalidSpec, InvalidParams, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INVALID)
        except (TerminationOverflow, NoProgress, AuditViolation) as exc:
            click.echo(f"failure: {exc}", err=True)
            sys.exit(EXIT_FAILURE)
    return wrapper


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


@click.group()
def main():
    """Massively-parallel connectivity simulator."""


@main.command()
@click.option("--family", "kind", required=True, type=click.Choice([k for k in KINDS if k != "disjoint_union"]))
@click.option("--n", "n", required=True, type=int)
@click.option("--m", "m", type=int, default=None, help="Edge count for erdos_renyi_gnm.")
@click.option("--seed", type=int, default=0)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@_guard
def gen(kind, n, m, seed, out):
    """Generate a graph family member as an edge list."""
    if n <= 0:
        raise InvalidSpec("--n must be positive")
    if kind == "erdos_renyi_gnm" and m is None:
        g = family(kind, n, seed)
    elif kind == "erdos_renyi_gnm":
        g = generate(GenSpec(kind, n=n, m=m, seed=seed))
    else:
        g = family(kind, n, seed)
    write_edge_list(g, out)
    click.echo(f"wrote {out}: n={g.n} m={g.m}")


@main.group()
def cc():
    """Connected components."""


@cc.command("run")
@click.option("--in", "inp", required=True, type=click.Path(dir_okay=False))
@click.option("--delta", type=float, default=0.5)
@click.option("--seed", type=int, default=0)
@click.option("--alpha", type=float, default=5.0)
@click.option("--verify/--no-verify", default=None)
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default=None)
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None)
@click.option("--labels", "labels_path", type=click.Path(dir_okay=False), default=None)
@_guard
def cc_run(inp, delta, seed, alpha, verify, trace_path, report_path, labels_path):
    """Label the components of an edge-list graph."""
    g = read_edge_list(inp)
    labels, report = find_connected_components(g, delta=delta, seed=seed, verify=verify,
                                               alpha=alpha, strict_audits=strict_from_env())
    if trace_path:
        _write(trace_path, trace_to_csv(report.trace))
    if report_path:
        _write(report_path, report.to_json() + "\n")
    if labels_path:
        write_pairs(labels_path, labels.label)
    click.echo(f"components={report.components} branch={report.branch} "
               f"shrink_rounds={report.shrink_rounds} iterations={report.main_iterations} "
               f"rounds={report.rounds_charged} verified={report.verified}")
    click.echo(f"wall_time={report.wall_time:.3f}s", err=True)
    if report.verified is False:
        click.echo("verification mismatch against union-find", err=True)
        sys.exit(EXIT_MISMATCH)


@cc.command("bench")
@click.option("--family", "kind", required=True, type=click.Choice([k for k in KINDS if k != "disjoint_union"]))
@click.option("--nmin", type=int, required=True)
@click.option("--nmax", type=int, required=True)
@click.option("--seeds", type=int, default=1)
@click.option("--delta", type=float, default=0.5)
@click.option("--alpha", type=float, default=2.0)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@_guard
def cc_bench(kind, nmin, nmax, seeds, delta, alpha, out):
    """Main-loop sweep over n = nmin, 2 nmin, ... <= nmax."""
    if nmin <= 0 or nmax < nmin or seeds <= 0:
        raise InvalidParams("need 0 < nmin <= nmax and seeds > 0")
    sizes = []
    n = nmin
    while n <= nmax:
        sizes.append(n)
        n *= 2
    rows = bench_sweep(kind, sizes, range(seeds), delta=delta, alpha=alpha)
    if strict_from_env() and any(r["violations"] for r in rows):
        raise AuditViolation("ledger violations recorded in sweep")
    _write(out, rows_to_csv(rows))
    bad = [r for r in rows if not r["correct"]]
    click.echo(f"wrote {out}: {len(rows)} rows")
    if bad:
        sys.exit(EXIT_MISMATCH)


@main.command()
@click.option("--in", "inp", required=True, type=click.Path(dir_okay=False))
@click.option("--target", type=int, required=True)
@click.option("--seed", type=int, default=0)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--map", "map_path", required=True, type=click.Path(dir_okay=False))
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default=None)
@_guard
def shrink(inp, target, seed, out, map_path, trace_path):
    """Shrink a graph to at most TARGET non-isolated vertices."""
    g = read_edge_list(inp)
    res = shrink_phase(g, target, seed)
    write_edge_list(res.graph, out)
    write_pairs(map_path, res.mapping.f)
    if trace_path:
        rows = [{k: getattr(s, k) for k in RoundStats.FIELDS} for s in res.history]
        _write(trace_path, rows_to_csv(rows, RoundStats.FIELDS))
    click.echo(f"rounds={res.rounds} live={res.graph.num_live} edges={res.graph.m}")


LOWERBOUND_FIELDS = ("seed", "outer_iterations", "components") + ReductionStep.FIELDS


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--dprime", type=int, required=True)
@click.option("--seeds", type=int, default=1)
@click.option("--delta", type=float, default=0.5)
@click.option("--solver", type=click.Choice(["driver", "oracle"]), default="driver")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@_guard
def lowerbound(n, dprime, seeds, delta, solver, out):
    """Edge-sampling reduction on cycle(N), one CSV row per outer iteration."""
    if n < 3:
        raise InvalidParams("--n must be at least 3")
    g = family("cycle", n)
    rows = []
    for seed in range(seeds):
        solve = driver_solver(seed, delta) if solver == "driver" else oracle_solver
        _, stats = cycle_reduction(g, dprime, seed, solve, delta)
        for step in stats.steps:
            row = {"seed": seed, "outer_iterations": stats.outer_iterations,
                   "components": stats.components}
            row.update({k: getattr(step, k) for k in ReductionStep.FIELDS})
            rows.append(row)
        if not stats.steps:
            row = {"seed": seed, "outer_iterations": 0, "components": stats.components}
            row.update({k: "" for k in ReductionStep.FIELDS})
            rows.append(row)
    _write(out, rows_to_csv(rows, LOWERBOUND_FIELDS))
    click.echo(f"wrote {out}: {len(rows)} rows")


if __name__ == "__main__":  # pragma: no cover
    main()
