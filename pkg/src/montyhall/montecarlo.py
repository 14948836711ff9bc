"""Seeded Monte Carlo replay of the game protocol.

Trial ``t`` consumes outputs ``3t``, ``3t+1`` and ``3t+2`` of the SplitMix64
stream, used for the winning door, the player's strategy and the host's
target respectively. A chunk of trials ``[a, b)`` therefore reads the
stream from position ``3a``; equivalently it is the stream seeded with
``seed + 3a * GAMMA``. The third draw is consumed even when the target is
forced so that trial positions never shift.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from . import rng
from .bayes import Prior, RevealKernel, win_probability
from .core import Action, DimensionError, GameError, Strategy
from .minimax import MixedStrategy

DRAWS_PER_TRIAL = 3
DEFAULT_CHUNK = 1 << 16

Player = Union[Strategy, MixedStrategy]


@dataclass(frozen=True)
class SimulationSpec:
    n: int
    prior: Prior
    kernel: RevealKernel
    player: Player
    trials: int
    seed: int
    label: str | None = None

    def __post_init__(self):
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise GameError(f"trials must be a positive integer, got {self.trials!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= rng.MASK64:
            raise GameError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        support = self.player.support if isinstance(self.player, MixedStrategy) else (self.player,)
        sizes = {self.n, self.prior.n, self.kernel.n} | {s.n for s in support}
        if len(sizes) != 1:
            raise DimensionError(f"simulation components disagree on n: {sorted(sizes)}")

    @property
    def mix(self) -> MixedStrategy:
        if isinstance(self.player, MixedStrategy):
            return self.player
        return MixedStrategy.pure(self.player)

    @property
    def strategy_label(self) -> str:
        if self.label is not None:
            return self.label
        if isinstance(self.player, Strategy):
            return self.player.label
        return "mixed(" + " ".join(f"{s.label}@{w}" for s, w in zip(self.player.support, self.player.weights)) + ")"

    def exact_value(self) -> Fraction:
        mix = self.mix
        return sum(
            (w * win_probability(s, self.prior, self.kernel) for s, w in zip(mix.support, mix.weights)),
            Fraction(0),
        )


@dataclass(frozen=True)
class SimulationResult:
    n: int
    strategy_label: str
    wins: int
    trials: int
    seed: int
    exact_value: Fraction | None

    @property
    def estimate(self) -> float:
        return self.wins / self.trials

    @property
    def standard_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)

    @property
    def z_score(self) -> float | None:
        if self.exact_value is None:
            return None
        diff = self.estimate - float(self.exact_value)
        se = self.standard_error
        if se == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / se


class _Sampler:
    """Precomputed cut points and action lookups for one spec."""

    def __init__(self, spec: SimulationSpec):
        n = spec.n
        mix = spec.mix
        self.n = n
        self.prior_cuts = rng.thresholds(spec.prior.p)
        self.player_cuts = rng.thresholds(mix.weights)
        self.kernel_cuts = [rng.thresholds(spec.kernel[d]) for d in range(n)]
        self.xs = np.array([s.x for s in mix.support], dtype=np.int64)
        acts = np.zeros((len(mix.support), n), dtype=np.uint8)
        for k, s in enumerate(mix.support):
            for y, a in s.action_map.items():
                acts[k, y] = a
        self.acts = acts

    def trials(self, seed: int, start: int, count: int) -> dict[str, np.ndarray]:
        u = rng.block(seed, DRAWS_PER_TRIAL * start, DRAWS_PER_TRIAL * count).reshape(count, DRAWS_PER_TRIAL)
        theta = rng.categorical(self.prior_cuts, u[:, 0])
        pick = rng.categorical(self.player_cuts, u[:, 1])
        x = self.xs[pick]
        y = theta.copy()
        on_diag = theta == x
        for d in range(self.n):
            sel = on_diag & (x == d)
            if sel.any():
                y[sel] = rng.categorical(self.kernel_cuts[d], u[sel, 2])
        action = self.acts[pick, y]
        win = np.where(on_diag, action == Action.MATCH, action == Action.SWITCH)
        return {"theta": theta, "pick": pick, "x": x, "y": y, "action": action, "win": win}


def sample_trials(spec: SimulationSpec, start: int = 0, count: int | None = None) -> dict[str, np.ndarray]:
    """Raw per-trial arrays (``theta``, ``x``, ``y``, ``action``, ``win``) for inspection."""
    if count is None:
        count = spec.trials - start
    return _Sampler(spec).trials(spec.seed, start, count)


def simulate(spec: SimulationSpec, chunk_size: int | None = DEFAULT_CHUNK, workers: int = 1) -> SimulationResult:
    """Run ``spec.trials`` trials; ``chunk_size=None`` runs them in one block.

    The wins count does not depend on ``chunk_size`` or ``workers``.
    """
    sampler = _Sampler(spec)
    size = spec.trials if chunk_size is None else chunk_size
    if size < 1:
        raise ValueError("chunk_size must be positive")
    bounds = [(a, min(size, spec.trials - a)) for a in range(0, spec.trials, size)]

    def run(chunk):
        start, count = chunk
        return int(sampler.trials(spec.seed, start, count)["win"].sum())

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            wins = sum(pool.map(run, bounds))
    else:
        wins = sum(map(run, bounds))
    return SimulationResult(
        spec.n, spec.strategy_label, wins, spec.trials, spec.seed, spec.exact_value()
    )


@dataclass(frozen=True)
class SweepFailure:
    index: int
    error: Exception


def sweep(
    specs: Iterable[SimulationSpec | Mapping], **simulate_kwargs
) -> list[SimulationResult | SweepFailure]:
    """Simulate each spec in order; a bad entry becomes a :class:`SweepFailure` in place.

    Entries may be ready specs or keyword mappings for :class:`SimulationSpec`.
    """
    out = []
    for i, spec in enumerate(specs):
        try:
            if not isinstance(spec, SimulationSpec):
                spec = SimulationSpec(**spec)
            out.append(simulate(spec, **simulate_kwargs))
        except (GameError, TypeError, ValueError) as exc:
            out.append(SweepFailure(i, exc))
    return out


CSV_COLUMNS = ("n", "strategy_label", "trials", "seed", "wins", "estimate", "exact_value", "std_err", "z_score")


def results_to_csv(results: Sequence[SimulationResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        z = r.z_score
        writer.writerow([
            r.n,
            r.strategy_label,
            r.trials,
            r.seed,
            r.wins,
            repr(r.estimate),
            "" if r.exact_value is None else str(r.exact_value),
            repr(r.standard_error),
            "" if z is None else repr(z),
        ])
    return buf.getvalue()


def read_results_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))
