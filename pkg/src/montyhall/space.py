"""Exhaustive enumeration of pure strategies, adversary states and the payoff table."""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .core import (
    Action,
    AdversaryState,
    GameError,
    Strategy,
    check_size,
)

DEFAULT_CAP = 16


class CapacityError(GameError):
    pass


class TableLookupError(KeyError):
    pass


def enumerate_strategies(n: int) -> list[Strategy]:
    """All ``n * 2**(n-1)`` strategies, by first pick then action word as an integer."""
    check_size(n)
    words = list(itertools.product((Action.MATCH, Action.SWITCH), repeat=n - 1))
    return [Strategy(n, x, w) for x in range(n) for w in words]


def enumerate_adversary_states(n: int) -> list[AdversaryState]:
    check_size(n)
    return [
        AdversaryState(n, theta, h)
        for theta in range(n)
        for h in range(n)
        if h != theta
    ]


def strategy_index(strategy: Strategy) -> int:
    """Position of ``strategy`` in :func:`enumerate_strategies` order."""
    return strategy.x * 2 ** (strategy.n - 1) + strategy.code


def state_index(state: AdversaryState) -> int:
    return state.theta * (state.n - 1) + (state.h if state.h < state.theta else state.h - 1)


def action_matrix(n: int) -> np.ndarray:
    """Action bit for every (strategy row, door) pair; the first-pick column is unused (0)."""
    rows = n * 2 ** (n - 1)
    x = np.repeat(np.arange(n), 2 ** (n - 1))
    code = np.tile(np.arange(2 ** (n - 1), dtype=np.int64), n)
    out = np.zeros((rows, n), dtype=np.uint8)
    for y in range(n):
        # bit position of door y inside the word depends on whether y sits after x
        pos = np.where(y < x, y, y - 1)
        bit = (code >> (n - 2 - pos)) & 1
        out[:, y] = np.where(x == y, 0, bit)
    return out


@dataclass(frozen=True, eq=False)
class PayoffTable:
    n: int
    rows: tuple[Strategy, ...]
    cols: tuple[AdversaryState, ...]
    entries: np.ndarray = field(repr=False)

    @cached_property
    def _row_pos(self) -> dict[Strategy, int]:
        return {s: i for i, s in enumerate(self.rows)}

    @cached_property
    def _col_pos(self) -> dict[AdversaryState, int]:
        return {s: j for j, s in enumerate(self.cols)}

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def row_index(self, strategy: Strategy) -> int:
        try:
            return self._row_pos[strategy]
        except KeyError:
            raise TableLookupError(f"strategy {strategy} is not a row of the n={self.n} table") from None

    def col_index(self, state: AdversaryState) -> int:
        try:
            return self._col_pos[state]
        except KeyError:
            raise TableLookupError(f"state {state} is not a column of the n={self.n} table") from None

    def row(self, strategy: Strategy) -> np.ndarray:
        return self.entries[self.row_index(strategy)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["strategy"] + [c.label for c in self.cols])
        for s, r in zip(self.rows, self.entries):
            writer.writerow([s.label] + [int(v) for v in r])
        return buf.getvalue()


def build_payoff_table(n: int, cap: int = DEFAULT_CAP) -> PayoffTable:
    check_size(n)
    if n > cap:
        raise CapacityError(f"n={n} exceeds the enumeration cap of {cap} doors")
    rows = enumerate_strategies(n)
    cols = enumerate_adversary_states(n)
    acts = action_matrix(n)
    x = np.repeat(np.arange(n), 2 ** (n - 1))
    ridx = np.arange(len(rows))
    entries = np.empty((len(rows), len(cols)), dtype=np.uint8)
    for j, st in enumerate(cols):
        on_diag = x == st.theta
        target = np.where(on_diag, st.h, st.theta)
        act = acts[ridx, target]
        # match pays on the diagonal, switch pays off it
        entries[:, j] = np.where(on_diag, act == Action.MATCH, act == Action.SWITCH)
    entries.setflags(write=False)
    return PayoffTable(n, tuple(rows), tuple(cols), entries)


def read_table_csv(text: str) -> tuple[list[str], list[str], np.ndarray]:
    """Parse a table written by :meth:`PayoffTable.to_csv` into labels and entries."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    row_labels, data = [], []
    for rec in reader:
        row_labels.append(rec[0])
        data.append([int(v) for v in rec[1:]])
    return row_labels, header[1:], np.array(data, dtype=np.uint8)
