"""Connectivity in the massively parallel computation model, simulated at desk scale.

The main entry points are :func:`find_connected_components` (shrink phase
followed by the budget/level main loop), :func:`run_until_cliques` (the main
loop alone) and :func:`cycle_reduction` (edge-sampling reduction on cycles).
"""

from .driver import RunReport, bench_sweep, find_connected_components
from .engine import AlgoParams, EngineState, IterationTrace, finalize_labels, run_until_cliques
from .errors import (AuditViolation, InvalidInput, InvalidParams, InvalidSpec, MpccError,
                     NoProgress, TerminationOverflow)
from .generators import GenSpec, family, generate
from .graph import Graph
from .lowerbound import ReductionStats, cycle_reduction
from .mpc import CostLedger, MpcConfig
from .oracles import (ComponentLabeling, exact_diameter, is_clique_partition,
                      oracle_components)
from .shrink import ShrinkMapping, shrink_phase, shrink_round

__all__ = [
    "AlgoParams", "AuditViolation", "ComponentLabeling", "CostLedger", "EngineState",
    "GenSpec", "Graph", "InvalidInput", "InvalidParams", "InvalidSpec", "IterationTrace",
    "MpcConfig", "MpccError", "NoProgress", "ReductionStats", "RunReport", "ShrinkMapping",
    "TerminationOverflow", "bench_sweep", "cycle_reduction", "exact_diameter", "family",
    "finalize_labels", "find_connected_components", "generate", "is_clique_partition",
    "oracle_components", "run_until_cliques", "shrink_phase", "shrink_round",
]

__version__ = "0.1.0"
