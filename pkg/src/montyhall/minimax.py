"""Zero-sum view: the player maximises win probability, nature picks ``(theta, h)``.

Security levels and saddle checks are computed exactly. Fictitious play is an
independent numerical corroboration of the same value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .bayes import RevealKernel, ValidationError, to_fraction
from .core import AdversaryState, Strategy, check_size
from .space import PayoffTable


def _check_weights(support: Sequence, weights: Sequence, name: str) -> tuple[Fraction, ...]:
    weights = tuple(to_fraction(w, f"{name}.weights") for w in weights)
    if len(weights) != len(support):
        raise ValidationError(name, f"{len(support)} support entries but {len(weights)} weights")
    if len(set(support)) != len(support):
        raise ValidationError(name, "support entries must be distinct")
    if any(w < 0 for w in weights):
        raise ValidationError(name, "negative weight")
    if sum(weights) != 1:
        raise ValidationError(name, f"weights sum to {sum(weights)}, expected 1")
    return weights


@dataclass(frozen=True)
class MixedStrategy:
    support: tuple[Strategy, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "weights", _check_weights(self.support, self.weights, "mixed strategy"))

    @classmethod
    def pure(cls, strategy: Strategy) -> MixedStrategy:
        return cls((strategy,), (Fraction(1),))

    @property
    def n(self) -> int:
        return self.support[0].n


@dataclass(frozen=True)
class AdversaryMix:
    """Joint law of the winning door and the host's on-diagonal target."""

    support: tuple[AdversaryState, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "weights", _check_weights(self.support, self.weights, "adversary mix"))

    @classmethod
    def pure(cls, state: AdversaryState) -> AdversaryMix:
        return cls((state,), (Fraction(1),))


def game_value(n: int) -> Fraction:
    check_size(n)
    return Fraction(n - 1, n)


def uniform_switch_mix(n: int) -> MixedStrategy:
    check_size(n)
    return MixedStrategy(
        tuple(Strategy.always_switch(n, x) for x in range(n)), (Fraction(1, n),) * n
    )


def uniform_theta_mix(n: int, h_rule: RevealKernel | Sequence[Sequence] | None = None) -> AdversaryMix:
    """Uniform winning door; given ``theta`` the host target follows row ``theta`` of ``h_rule``.

    ``h_rule`` defaults to the uniform kernel. States with zero weight are left out.
    """
    check_size(n)
    if h_rule is None:
        h_rule = RevealKernel.uniform(n)
    elif not isinstance(h_rule, RevealKernel):
        h_rule = RevealKernel(n, tuple(tuple(r) for r in h_rule))
    elif h_rule.n != n:
        raise ValidationError("h_rule", f"built for n={h_rule.n}, expected n={n}")
    support, weights = [], []
    for theta in range(n):
        for h in range(n):
            w = h_rule[theta][h]
            if h != theta and w:
                support.append(AdversaryState(n, theta, h))
                weights.append(Fraction(1, n) * w)
    return AdversaryMix(tuple(support), tuple(weights))


def _integer_weights(weights: Sequence[Fraction]) -> tuple[np.ndarray, int]:
    denom = math.lcm(*(w.denominator for w in weights))
    ints = np.array([int(w * denom) for w in weights], dtype=object)
    return ints, denom


def row_mix_payoffs(mix: MixedStrategy, table: PayoffTable) -> list[Fraction]:
    """Expected payoff of ``mix`` against every column of ``table``."""
    rows = [table.row_index(s) for s in mix.support]
    w, denom = _integer_weights(mix.weights)
    sub = table.entries[rows].astype(object)
    return [Fraction(int(v), denom) for v in w @ sub]


def col_mix_payoffs(mix: AdversaryMix, table: PayoffTable) -> list[Fraction]:
    """Expected payoff of every row of ``table`` against ``mix``."""
    cols = [table.col_index(s) for s in mix.support]
    w, denom = _integer_weights(mix.weights)
    sub = table.entries[:, cols].astype(object)
    return [Fraction(int(v), denom) for v in sub @ w]


def security_level_row(mix: MixedStrategy, table: PayoffTable) -> Fraction:
    return min(row_mix_payoffs(mix, table))


def security_level_col(mix: AdversaryMix, table: PayoffTable) -> Fraction:
    return max(col_mix_payoffs(mix, table))


def best_responses(mix: AdversaryMix, table: PayoffTable) -> list[Strategy]:
    vals = col_mix_payoffs(mix, table)
    top = max(vals)
    return [s for s, v in zip(table.rows, vals) if v == top]


def expected_payoff(row_mix: MixedStrategy, col_mix: AdversaryMix, table: PayoffTable) -> Fraction:
    per_col = row_mix_payoffs(row_mix, table)
    return sum(
        (w * per_col[table.col_index(s)] for s, w in zip(col_mix.support, col_mix.weights)),
        Fraction(0),
    )


@dataclass(frozen=True)
class SaddleReport:
    is_saddle: bool
    value: Fraction | None
    row_security: Fraction
    col_security: Fraction
    pair_value: Fraction

    def __bool__(self):
        return self.is_saddle


def verify_saddle_point(row_mix: MixedStrategy, col_mix: AdversaryMix, table: PayoffTable) -> SaddleReport:
    lo = security_level_row(row_mix, table)
    hi = security_level_col(col_mix, table)
    pair = expected_payoff(row_mix, col_mix, table)
    ok = lo == pair == hi
    return SaddleReport(ok, pair if ok else None, lo, hi, pair)


@dataclass(frozen=True)
class FictitiousPlayResult:
    lower: Fraction
    upper: Fraction
    iterations: int
    converged: bool
    row_counts: np.ndarray
    col_counts: np.ndarray

    @property
    def value(self) -> Fraction:
        return (self.lower + self.upper) / 2

    @property
    def gap(self) -> Fraction:
        return self.upper - self.lower

    def row_mix(self, table: PayoffTable) -> MixedStrategy:
        idx = np.flatnonzero(self.row_counts)
        return MixedStrategy(
            tuple(table.rows[i] for i in idx),
            tuple(Fraction(int(self.row_counts[i]), self.iterations) for i in idx),
        )

    def col_mix(self, table: PayoffTable) -> AdversaryMix:
        idx = np.flatnonzero(self.col_counts)
        return AdversaryMix(
            tuple(table.cols[j] for j in idx),
            tuple(Fraction(int(self.col_counts[j]), self.iterations) for j in idx),
        )


def fictitious_play(
    table: PayoffTable,
    max_iters: int = 100_000,
    tolerance: float = 1e-3,
    callback: Callable[[int, Fraction, Fraction], None] | None = None,
) -> FictitiousPlayResult:
    """Simultaneous fictitious play on the payoff table.

    Both sides start on index 0 and then best-respond to the opponent's
    empirical mix, ties going to the smallest index. After ``t`` rounds the
    bracket is ``[min column total / t, max row total / t]``; it stops once
    the bracket is narrower than ``tolerance``.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    A = table.entries.astype(np.int64)
    At = np.ascontiguousarray(A.T)
    row_total = np.zeros(A.shape[0], dtype=np.int64)  # payoff of each row vs column history
    col_total = np.zeros(A.shape[1], dtype=np.int64)  # payoff of each column vs row history
    row_counts = np.zeros(A.shape[0], dtype=np.int64)
    col_counts = np.zeros(A.shape[1], dtype=np.int64)
    i = j = 0
    converged = False
    for t in range(1, max_iters + 1):
        row_counts[i] += 1
        col_counts[j] += 1
        row_total += At[j]
        col_total += A[i]
        i = int(row_total.argmax())
        j = int(col_total.argmin())
        hi = int(row_total[i])
        lo = int(col_total[j])
        if callback is not None:
            callback(t, Fraction(lo, t), Fraction(hi, t))
        if hi - lo < tolerance * t:
            converged = True
            break
    return FictitiousPlayResult(
        Fraction(lo, t), Fraction(hi, t), t, converged, row_counts, col_counts
    )
