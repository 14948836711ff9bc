"""Exact Bayesian evaluation under a prior on the winning door and a reveal kernel.

All probabilities are :class:`fractions.Fraction`; nothing here touches floats.
"""

from __future__ import annotations

import decimal
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Action, DimensionError, GameError, Strategy, check_size
from .space import DEFAULT_CAP, CapacityError, enumerate_strategies


class ValidationError(GameError):
    """A probability vector or matrix violates its invariants.

    ``field`` names the offending input (e.g. ``"prior"`` or ``"kernel[2]"``).
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def to_fraction(value, field: str = "value") -> Fraction:
    """Exact conversion of ints, ``"num/den"`` / decimal strings and Decimals.

    Binary floats are refused since they would smuggle rounding error in.
    """
    if isinstance(value, bool):
        raise ValidationError(field, f"expected a rational, got {value!r}")
    if isinstance(value, (Fraction, int, decimal.Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(field, f"cannot parse {value!r} as a rational") from None
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise ValidationError(field, f"expected an exact rational, got {type(value).__name__} {value!r}")


def format_fraction(q: Fraction) -> str:
    return str(q) if q.denominator != 1 else f"{q.numerator}"


@dataclass(frozen=True)
class Prior:
    n: int
    p: tuple[Fraction, ...]

    def __post_init__(self):
        check_size(self.n)
        p = tuple(to_fraction(v, f"prior[{i}]") for i, v in enumerate(self.p))
        if len(p) != self.n:
            raise ValidationError("prior", f"expected {self.n} entries, got {len(p)}")
        for i, v in enumerate(p):
            if v < 0:
                raise ValidationError(f"prior[{i}]", f"negative probability {v}")
        if sum(p) != 1:
            raise ValidationError("prior", f"probabilities sum to {sum(p)}, expected 1")
        object.__setattr__(self, "p", p)

    @classmethod
    def uniform(cls, n: int) -> Prior:
        check_size(n)
        return cls(n, (Fraction(1, n),) * n)

    def __getitem__(self, door: int) -> Fraction:
        return self.p[door]


@dataclass(frozen=True)
class RevealKernel:
    """Row ``theta`` is the law of the switch target when the player picked ``theta``."""

    n: int
    q: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        check_size(self.n)
        if len(self.q) != self.n:
            raise ValidationError("kernel", f"expected {self.n} rows, got {len(self.q)}")
        rows = []
        for theta, row in enumerate(self.q):
            field = f"kernel[{theta}]"
            row = tuple(to_fraction(v, field) for v in row)
            if len(row) != self.n:
                raise ValidationError(field, f"expected {self.n} entries, got {len(row)}")
            if row[theta] != 0:
                raise ValidationError(field, f"diagonal entry must be 0, got {row[theta]}")
            if any(v < 0 for v in row):
                raise ValidationError(field, "negative transition probability")
            if sum(row) != 1:
                raise ValidationError(field, f"row sums to {sum(row)}, expected 1")
            rows.append(row)
        object.__setattr__(self, "q", tuple(rows))

    @classmethod
    def uniform(cls, n: int) -> RevealKernel:
        check_size(n)
        w = Fraction(1, n - 1)
        return cls(n, tuple(tuple(0 if y == t else w for y in range(n)) for t in range(n)))

    @classmethod
    def point(cls, n: int, targets: Sequence[int]) -> RevealKernel:
        """Deterministic host: from the winning door ``t`` always offer ``targets[t]``."""
        return cls(n, tuple(tuple(int(y == targets[t]) for y in range(n)) for t in range(n)))

    def __getitem__(self, theta: int) -> tuple[Fraction, ...]:
        return self.q[theta]


def _same_size(*objs) -> int:
    sizes = {o.n for o in objs}
    if len(sizes) != 1:
        raise DimensionError(f"mismatched door counts {sorted(sizes)}")
    return sizes.pop()


def win_probability(strategy: Strategy, prior: Prior, kernel: RevealKernel) -> Fraction:
    _same_size(strategy, prior, kernel)
    x = strategy.x
    amap = strategy.action_map
    # off the first pick the offered door is the winner itself
    total = sum(
        (prior[t] for t, a in amap.items() if a is Action.SWITCH),
        Fraction(0),
    )
    stay = sum(
        (kernel[x][y] for y, a in amap.items() if a is Action.MATCH),
        Fraction(0),
    )
    return total + prior[x] * stay


def bayes_optimal(prior: Prior) -> tuple[Strategy, Fraction]:
    """Always switch after picking the least likely door (smallest label on ties)."""
    lowest = min(prior.p)
    x = prior.p.index(lowest)
    return Strategy.always_switch(prior.n, x), 1 - lowest


def strategy_values(
    prior: Prior, kernel: RevealKernel, strategies: Iterable[Strategy] | None = None
) -> list[tuple[Strategy, Fraction]]:
    if strategies is None:
        strategies = enumerate_strategies(prior.n)
    return [(s, win_probability(s, prior, kernel)) for s in strategies]


def verify_bayes_optimality(
    prior: Prior, kernel: RevealKernel, cap: int = DEFAULT_CAP
) -> bool:
    n = _same_size(prior, kernel)
    if n > cap:
        raise CapacityError(f"n={n} exceeds the enumeration cap of {cap} doors")
    best, _ = bayes_optimal(prior)
    target = win_probability(best, prior, kernel)
    return all(v <= target for _, v in strategy_values(prior, kernel))
