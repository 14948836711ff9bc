"""Dominance certificates: every strategy is weakly beaten by some always-switching one.

For a strategy ``(x, a)`` that matches on some door ``x'``, the dominator is
``(x', always switch)``. Off ``theta == x'`` the dominator wins outright; at
``theta == x'`` the host is forced to offer ``x'``, the original strategy
matches on it and loses as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .core import Action, AdversaryState, DimensionError, Strategy
from .space import DEFAULT_CAP, PayoffTable, build_payoff_table, strategy_index

SELF = "self"


class TheoremViolation(AssertionError):
    """A constructed certificate failed verification; only an implementation bug can cause it."""

    def __init__(self, certificate: DominanceCertificate, state: AdversaryState):
        super().__init__(
            f"{certificate.dominator} does not weakly dominate "
            f"{certificate.dominated} at {state}"
        )
        self.certificate = certificate
        self.state = state


@dataclass(frozen=True)
class DominanceCertificate:
    dominated: Strategy
    dominator: Strategy
    witness: int | Literal["self"]

    def __post_init__(self):
        if not self.dominator.is_always_switching():
            raise ValueError(f"dominator {self.dominator} is not always-switching")

    @property
    def is_self(self) -> bool:
        return self.witness == SELF

    def to_json(self, strict: bool | None = None) -> dict:
        return {
            "dominated": self.dominated.to_json(),
            "dominator": self.dominator.to_json(),
            "witness": self.witness,
            "strict": strict,
        }


def construct_dominator(strategy: Strategy) -> DominanceCertificate:
    if strategy.is_always_switching():
        return DominanceCertificate(strategy, strategy, SELF)
    witness = min(y for y, a in strategy.action_map.items() if a is Action.MATCH)
    return DominanceCertificate(
        strategy, Strategy.always_switch(strategy.n, witness), witness
    )


def weakly_dominates(s1: Strategy, s2: Strategy, table: PayoffTable) -> bool:
    return bool(np.all(table.row(s1) >= table.row(s2)))


def verify_dominance_theorem(
    n: int, table: PayoffTable | None = None, cap: int = DEFAULT_CAP
) -> list[DominanceCertificate]:
    """One verified certificate per strategy, in enumeration order.

    Raises :class:`TheoremViolation` naming the first failing state.
    """
    if table is None:
        table = build_payoff_table(n, cap=cap)
    elif table.n != n:
        raise DimensionError(f"table is for n={table.n}, asked to verify n={n}")
    certs = [construct_dominator(s) for s in table.rows]
    dom_rows = np.fromiter(
        (strategy_index(c.dominator) for c in certs), dtype=np.int64, count=len(certs)
    )
    bad = table.entries[dom_rows] < table.entries
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise TheoremViolation(certs[i], table.cols[j])
    return certs


def strictness_report(
    certificates: Sequence[DominanceCertificate], table: PayoffTable
) -> list[bool | None]:
    """Whether each dominator strictly wins somewhere; ``None`` for self-certificates."""
    out = []
    for c in certificates:
        if c.is_self:
            out.append(None)
        else:
            out.append(bool(np.any(table.row(c.dominator) > table.row(c.dominated))))
    return out
