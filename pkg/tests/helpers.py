"""Independent oracles and random exact inputs shared by the test modules.

The oracles deliberately avoid ``montyhall.core.play``/``payoff`` so that they
check the library rather than restate it.
"""

import random
from fractions import Fraction

from hypothesis import strategies as st

from montyhall.bayes import Prior, RevealKernel


def host_function(n, theta, h):
    """The full admissible switch-target map d_theta over every first pick."""
    return {x: (theta if x != theta else h) for x in range(n)}


def naive_play(strategy, theta, h):
    d = host_function(strategy.n, theta, h)
    y = d[strategy.x]
    amap = {}
    others = [z for z in range(strategy.n) if z != strategy.x]
    for z, bit in zip(others, strategy.word):
        amap[z] = bit
    guess_is_first_pick = amap[y] == "0"
    return 1 if guess_is_first_pick == (strategy.x == theta) else 0


def outcome_win_probability(strategy, prior, kernel):
    """Expectation over every (winning door, offered door) outcome."""
    total = Fraction(0)
    x = strategy.x
    for theta in range(prior.n):
        if theta != x:
            outcomes = [(theta, prior[theta])]
        else:
            outcomes = [(y, prior[theta] * kernel[theta][y]) for y in range(prior.n) if y != theta]
        for y, prob in outcomes:
            total += prob * naive_play_with_target(strategy, theta, y)
    return total


def naive_play_with_target(strategy, theta, y):
    others = [z for z in range(strategy.n) if z != strategy.x]
    bit = strategy.word[others.index(y)]
    return int((bit == "0") == (strategy.x == theta))


def random_weights(rng, k, allow_zero=True, scale=12):
    lo = 0 if allow_zero else 1
    while True:
        raw = [rng.randint(lo, scale) for _ in range(k)]
        if sum(raw):
            total = sum(raw)
            return [Fraction(r, total) for r in raw]


def random_prior(rng, n):
    return Prior(n, tuple(random_weights(rng, n)))


def random_kernel(rng, n):
    rows = []
    for theta in range(n):
        w = iter(random_weights(rng, n - 1))
        rows.append(tuple(Fraction(0) if y == theta else next(w) for y in range(n)))
    return RevealKernel(n, tuple(rows))


@st.composite
def rational_weights(draw, k, scale=50):
    raw = draw(st.lists(st.integers(0, scale), min_size=k, max_size=k).filter(lambda r: sum(r) > 0))
    total = sum(raw)
    return [Fraction(r, total) for r in raw]


@st.composite
def priors(draw, n=None, min_n=3, max_n=7):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    return Prior(n, tuple(draw(rational_weights(n))))


@st.composite
def kernels(draw, n):
    rows = []
    for theta in range(n):
        w = iter(draw(rational_weights(n - 1)))
        rows.append(tuple(Fraction(0) if y == theta else next(w) for y in range(n)))
    return RevealKernel(n, tuple(rows))


def seeded(seed):
    return random.Random(seed)
