"""SplitMix64, the fully specified generator behind the Monte Carlo simulator.

Seeded with ``s``, the k-th output (k = 0, 1, ...) is

    mix64(s + (k + 1) * 0x9E3779B97F4A7C15 mod 2**64)

with Stafford's "variant 13" finaliser::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

Because each output depends only on ``(seed, k)`` any block of the stream can
be produced independently, which is what makes chunked and sequential runs
agree bit for bit.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Scalar reference implementation, one output per call."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)


def block(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start + count - 1`` of the stream seeded with ``seed``."""
    k = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    base = np.uint64(seed & MASK64)
    with np.errstate(over="ignore"):
        z = base + k * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
        return z ^ (z >> np.uint64(31))


def thresholds(weights: Sequence[Fraction]) -> np.ndarray:
    """Integer cut points for exact categorical sampling from a 64-bit draw.

    Category ``k`` is chosen when ``u / 2**64`` falls in ``[C[k-1], C[k])``
    for the exact cumulative sums ``C``. Since ``u`` is an integer,
    ``u < C * 2**64`` iff ``u < ceil(C * 2**64)``; cut points equal to
    ``2**64`` can never be reached and are dropped.
    """
    cuts = []
    acc = Fraction(0)
    for w in weights[:-1]:
        acc += w
        cut = math.ceil(acc * (1 << 64))
        if cut > MASK64:
            break
        cuts.append(cut)
    return np.array(cuts, dtype=np.uint64)


def categorical(cuts: np.ndarray, u: np.ndarray) -> np.ndarray:
    return np.searchsorted(cuts, u, side="right")
