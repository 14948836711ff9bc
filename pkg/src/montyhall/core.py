"""Doors, strategies, admissible host behaviour and the win-or-nothing payoff.

Doors are the integers ``0 .. n-1``. The host's switch-target function is
forced everywhere except when the player picked the winning door, so an
adversary state is just the winning door plus that one free choice.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

MIN_DOORS = 3


class GameError(ValueError):
    """Base class for invalid inputs to the analysis routines."""


class InvalidSizeError(GameError):
    pass


class InvalidDoorError(GameError):
    pass


class DimensionError(GameError):
    """Objects built for different door counts were combined."""


def check_size(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidSizeError(f"door count must be an integer, got {n!r}")
    if n < MIN_DOORS:
        raise InvalidSizeError(f"need at least {MIN_DOORS} doors, got n={n}")
    return n


def check_door(door: int, n: int) -> int:
    if isinstance(door, bool) or not isinstance(door, int) or not 0 <= door < n:
        raise InvalidDoorError(f"door {door!r} is not a label in 0..{n - 1}")
    return door


class Action(enum.IntEnum):
    MATCH = 0
    SWITCH = 1

    @property
    def symbol(self) -> str:
        return "m" if self is Action.MATCH else "s"


@dataclass(frozen=True, order=True)
class Strategy:
    """A first pick ``x`` and the action taken for each possible switch target.

    ``actions`` lists the action for every door ``y != x`` in ascending order
    of ``y``; it has exactly ``n - 1`` entries.
    """

    n: int
    x: int
    actions: tuple[Action, ...]

    def __post_init__(self):
        check_size(self.n)
        check_door(self.x, self.n)
        if len(self.actions) != self.n - 1:
            raise DimensionError(
                f"action map needs {self.n - 1} entries for n={self.n}, "
                f"got {len(self.actions)}"
            )
        object.__setattr__(self, "actions", tuple(Action(a) for a in self.actions))

    @classmethod
    def from_map(cls, n: int, x: int, action_map: dict[int, Action]) -> Strategy:
        others = [y for y in range(n) if y != x]
        if sorted(action_map) != others:
            raise DimensionError(
                f"action map domain must be exactly the doors other than {x}"
            )
        return cls(n, x, tuple(action_map[y] for y in others))

    @classmethod
    def constant(cls, n: int, x: int, action: Action) -> Strategy:
        return cls(n, x, (Action(action),) * (n - 1))

    @classmethod
    def always_switch(cls, n: int, x: int) -> Strategy:
        return cls.constant(n, x, Action.SWITCH)

    @classmethod
    def from_word(cls, n: int, x: int, word: str) -> Strategy:
        if len(word) != n - 1 or set(word) - {"0", "1"}:
            raise GameError(f"action word must be {n - 1} binary digits, got {word!r}")
        return cls(n, x, tuple(Action(int(c)) for c in word))

    @classmethod
    def from_label(cls, n: int, label: str) -> Strategy:
        """Parse the canonical ``x=<door>;map=<word>`` label."""
        try:
            x_part, map_part = label.split(";")
            key_x, x = x_part.split("=")
            key_map, word = map_part.split("=")
        except ValueError:
            raise GameError(f"malformed strategy label {label!r}") from None
        if key_x.strip() != "x" or key_map.strip() != "map":
            raise GameError(f"malformed strategy label {label!r}")
        try:
            door = int(x)
        except ValueError:
            raise GameError(f"malformed strategy label {label!r}") from None
        return cls.from_word(n, door, word.strip())

    def action(self, y: int) -> Action:
        check_door(y, self.n)
        if y == self.x:
            raise InvalidDoorError(f"door {y} is the first pick; it has no action")
        return self.actions[y if y < self.x else y - 1]

    @property
    def action_map(self) -> dict[int, Action]:
        others = (y for y in range(self.n) if y != self.x)
        return dict(zip(others, self.actions))

    @property
    def word(self) -> str:
        return "".join(str(int(a)) for a in self.actions)

    @property
    def code(self) -> int:
        """The action word read as a binary integer (first door most significant)."""
        return int(self.word, 2)

    @property
    def label(self) -> str:
        return f"x={self.x};map={self.word}"

    def is_always_switching(self) -> bool:
        return all(a is Action.SWITCH for a in self.actions)

    def is_single_action(self) -> bool:
        return len(set(self.actions)) == 1

    def to_json(self) -> dict:
        return {"x": self.x, "map": self.word}

    def __str__(self):
        return self.label


@dataclass(frozen=True, order=True)
class AdversaryState:
    """Winning door ``theta`` and the host's target ``h`` when the player picked ``theta``."""

    n: int
    theta: int
    h: int

    def __post_init__(self):
        check_size(self.n)
        check_door(self.theta, self.n)
        check_door(self.h, self.n)
        if self.h == self.theta:
            raise GameError(
                f"inadmissible state: host target h={self.h} equals the winning door"
            )

    @property
    def label(self) -> str:
        return f"theta={self.theta},h={self.h}"

    def __str__(self):
        return self.label


def payoff(theta: int, x: int, action: Action, n: int | None = None) -> int:
    """1 if the guess is right: match on the winning door, or switch away from a loser."""
    if n is not None:
        check_door(theta, n)
        check_door(x, n)
    elif theta < 0 or x < 0:
        raise InvalidDoorError(f"negative door label in ({theta}, {x})")
    if Action(action) is Action.MATCH:
        return int(x == theta)
    return int(x != theta)


def host_reveal_target(state: AdversaryState, x: int) -> int:
    check_door(x, state.n)
    return state.h if x == state.theta else state.theta


def play(strategy: Strategy, state: AdversaryState) -> int:
    if strategy.n != state.n:
        raise DimensionError(
            f"strategy has n={strategy.n} but adversary state has n={state.n}"
        )
    y = host_reveal_target(state, strategy.x)
    return payoff(state.theta, strategy.x, strategy.action(y), state.n)
