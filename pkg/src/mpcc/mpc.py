"""MPC round and space accounting.

The engines run logically over a global edge set; this module charges
``ceil(1/delta)`` rounds per primitive invocation and audits the potential
space ``y_r`` and the budget-square sum against ``c * T``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import AuditViolation, InvalidParams

PRIMITIVES = ("sort", "filter", "prefix_sum", "predecessor", "dedup")

# Primitive bundles charged once per subroutine call. These are model
# constants read off the step lists of each subroutine, not minimal counts.
CONNECT_TWO_HOPS_BUNDLE = ("sort", "prefix_sum", "dedup", "filter")
RELABEL_INTER_BUNDLE = ("sort", "predecessor", "sort", "dedup", "filter")
RELABEL_INTRA_BUNDLE = ("sort", "prefix_sum", "sort", "predecessor", "dedup", "filter")
ITERATION_PRIMITIVES = (
    len(CONNECT_TWO_HOPS_BUNDLE) + len(RELABEL_INTER_BUNDLE) + len(RELABEL_INTRA_BUNDLE)
)
SHRINK_BUNDLE = ("sort", "prefix_sum", "filter")

# relative slack for float comparisons against T (sum of b^2 starts at T exactly)
_REL_EPS = 1e-9


@dataclass(frozen=True)
class MpcConfig:
    """Machine model: ``S = ceil(n0**delta)`` words per machine, ``T`` total."""

    delta: float
    n0: int
    T: float
    c: float = 4.0

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise InvalidParams(f"delta must lie in (0, 1), got {self.delta}")
        if self.c <= 0:
            raise InvalidParams("space constant c must be positive")
        if self.T < self.S:
            raise InvalidParams(f"total space T={self.T} below machine space S={self.S}")

    @property
    def S(self) -> int:
        return max(2, math.ceil(max(self.n0, 1) ** self.delta))

    @property
    def machines(self) -> int:
        return math.ceil(self.T / self.S)

    @property
    def rounds_per_primitive(self) -> int:
        return math.ceil(1.0 / self.delta)


@dataclass
class CostLedger:
    """Per-run record of charged rounds, space peaks and audit failures."""

    config: MpcConfig
    strict: bool = False
    rounds_charged: int = 0
    primitive_counts: dict[str, int] = field(default_factory=lambda: {k: 0 for k in PRIMITIVES})
    peak_potential_space: float = 0.0
    peak_budget_square_sum: float = 0.0
    violations: list[dict] = field(default_factory=list)

    def _violate(self, record: dict) -> None:
        self.violations.append(record)
        if self.strict:
            raise AuditViolation(json.dumps(record, sort_keys=True))

    def charge_primitive(self, kind: str, item_count: int, **context) -> "CostLedger":
        """Charge one primitive invocation over ``item_count`` tuples."""
        if kind not in PRIMITIVES:
            raise ValueError(f"unknown primitive {kind!r}")
        if item_count < 0:
            raise ValueError("item_count must be nonnegative")
        self.rounds_charged += self.config.rounds_per_primitive
        self.primitive_counts[kind] += 1
        limit = self.config.c * self.config.T
        if item_count > limit * (1 + _REL_EPS):
            self._violate({"check": "items", "primitive": kind, "items": int(item_count),
                           "limit": limit, **context})
        return self

    def charge_bundle(self, kinds, item_count: int, **context) -> "CostLedger":
        for kind in kinds:
            self.charge_primitive(kind, item_count, **context)
        return self

    def audit_iteration(self, edge_count: int, remaining_budget_sum: float,
                        budget_square_sum: float, **context) -> float:
        """Record ``y_r = |E_r| + sum s_r`` and the budget-square sum.

        Returns ``y_r``. A value above ``c * T`` is recorded as a violation.
        """
        if edge_count < 0 or remaining_budget_sum < 0 or budget_square_sum < 0:
            raise ValueError("audit inputs must be nonnegative")
        y = float(edge_count) + float(remaining_budget_sum)
        self.peak_potential_space = max(self.peak_potential_space, y)
        self.peak_budget_square_sum = max(self.peak_budget_square_sum, float(budget_square_sum))
        limit = self.config.c * self.config.T
        if y > limit * (1 + _REL_EPS):
            self._violate({"check": "potential_space", "y": y, "limit": limit, **context})
        if budget_square_sum > limit * (1 + _REL_EPS):
            self._violate({"check": "budget_square_sum", "b2": float(budget_square_sum),
                           "limit": limit, **context})
        return y

    def to_dict(self) -> dict:
        return {
            "rounds": self.rounds_charged,
            "primitives": dict(sorted(self.primitive_counts.items())),
            "peak_y": self.peak_potential_space,
            "peak_b2": self.peak_budget_square_sum,
            "violations": list(self.violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def charge_primitive(ledger: CostLedger, kind: str, item_count: int) -> CostLedger:
    return ledger.charge_primitive(kind, item_count)


def audit_iteration(ledger: CostLedger, config: MpcConfig, edge_count: int,
                    remaining_budget_sum: float, budget_square_sum: float) -> CostLedger:
    if config is not ledger.config and config != ledger.config:
        raise ValueError("ledger belongs to a different configuration")
    ledger.audit_iteration(edge_count, remaining_budget_sum, budget_square_sum)
    return ledger
