import itertools

import numpy as np
import pytest

from montyhall.core import Action, DimensionError, Strategy, play
from montyhall.dominance import (
    SELF,
    DominanceCertificate,
    TheoremViolation,
    construct_dominator,
    strictness_report,
    verify_dominance_theorem,
    weakly_dominates,
)
from montyhall.space import PayoffTable, TableLookupError, build_payoff_table

M, S = Action.MATCH, Action.SWITCH


@pytest.fixture(scope="module")
def table3():
    return build_payoff_table(3)


def test_construct_examples():
    c = construct_dominator(Strategy.constant(3, 0, M))
    assert c.dominator == Strategy.always_switch(3, 1) and c.witness == 1

    s = Strategy.always_switch(3, 0)
    c = construct_dominator(s)
    assert c.dominator == s and c.witness == SELF and c.is_self

    c = construct_dominator(Strategy.from_map(3, 1, {0: S, 2: M}))
    assert c.dominator == Strategy.always_switch(3, 2) and c.witness == 2


def test_smallest_witness_is_chosen():
    s = Strategy.from_map(5, 2, {0: S, 1: M, 3: S, 4: M})
    assert construct_dominator(s).witness == 1


def test_certificate_requires_switching_dominator():
    with pytest.raises(ValueError):
        DominanceCertificate(Strategy.constant(3, 0, M), Strategy.constant(3, 1, M), 1)


def test_weakly_dominates_examples(table3):
    assert weakly_dominates(Strategy.always_switch(3, 1), Strategy.constant(3, 0, M), table3)
    for s in table3.rows:
        assert weakly_dominates(s, s, table3)
    assert not weakly_dominates(Strategy.always_switch(3, 0), Strategy.always_switch(3, 1), table3)
    assert not weakly_dominates(Strategy.always_switch(3, 1), Strategy.always_switch(3, 0), table3)


def test_weakly_dominates_lookup_error(table3):
    with pytest.raises(TableLookupError):
        weakly_dominates(Strategy.always_switch(4, 1), Strategy.always_switch(3, 0), table3)


@pytest.mark.parametrize("n, count", [(3, 12), (4, 32)])
def test_verify_examples(n, count):
    certs = verify_dominance_theorem(n)
    assert len(certs) == count
    table = build_payoff_table(n)
    assert all(weakly_dominates(c.dominator, c.dominated, table) for c in certs)
    assert sum(c.is_self for c in certs) == n


@pytest.mark.parametrize("n", range(3, 9))
def test_theorem_exhaustive(n):
    table = build_payoff_table(n)
    certs = verify_dominance_theorem(n, table=table)
    assert [c.dominated for c in certs] == list(table.rows)
    assert all(np.all(table.row(c.dominator) >= table.row(c.dominated)) for c in certs)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_proof_branches(n):
    table = build_payoff_table(n)
    for s in table.rows:
        if s.is_always_switching():
            continue
        c = construct_dominator(s)
        xp = c.witness
        assert s.action(xp) is M
        for state in table.cols:
            if state.theta != xp:
                assert play(s, state) <= 1 == play(c.dominator, state)
            else:
                assert play(c.dominator, state) == 0
                assert play(s, state) == 0


@pytest.mark.parametrize("n", [3, 4, 5])
def test_switching_strategies_are_incomparable(n):
    table = build_payoff_table(n)
    switchers = [Strategy.always_switch(n, x) for x in range(n)]
    for a, b in itertools.permutations(switchers, 2):
        assert not weakly_dominates(a, b, table)


def test_no_single_switcher_dominates_everything(table3):
    for x in range(3):
        s = Strategy.always_switch(3, x)
        assert not all(weakly_dominates(s, r, table3) for r in table3.rows)


@pytest.mark.parametrize("n", [3, 4])
def test_weak_dominance_is_a_preorder(n):
    table = build_payoff_table(n)
    E = table.entries.astype(int)
    # dom[i, k] = row i >= row k everywhere
    dom = np.all(E[:, None, :] >= E[None, :, :], axis=2)
    assert dom.diagonal().all()
    # transitivity: dom[i,k] and dom[k,l] imply dom[i,l]
    composed = (dom.astype(int) @ dom.astype(int)) > 0
    assert not np.any(composed & ~dom)


def test_violation_is_an_error_with_counterexample(table3):
    tampered = table3.entries.copy()
    i = table3.row_index(Strategy.constant(3, 0, M))
    # at (theta=1, h=2) the dominator (1, switch) loses; make all-match win there
    tampered[i, 3] = 1
    bad = PayoffTable(3, table3.rows, table3.cols, tampered)
    with pytest.raises(TheoremViolation) as info:
        verify_dominance_theorem(3, table=bad)
    assert info.value.certificate.dominated == Strategy.constant(3, 0, M)
    assert info.value.state == table3.cols[3]


def test_table_size_mismatch(table3):
    with pytest.raises(DimensionError):
        verify_dominance_theorem(4, table=table3)


def test_strictness_examples(table3):
    certs = verify_dominance_theorem(3, table=table3)
    flags = dict(zip((c.dominated for c in certs), strictness_report(certs, table3)))
    assert flags[Strategy.constant(3, 0, M)] is True
    assert flags[Strategy.from_map(3, 0, {1: M, 2: S})] is True
    for x in range(3):
        assert flags[Strategy.always_switch(3, x)] is None


def test_certificate_json():
    c = construct_dominator(Strategy.constant(3, 0, M))
    assert c.to_json(True) == {
        "dominated": {"x": 0, "map": "00"},
        "dominator": {"x": 1, "map": "11"},
        "witness": 1,
        "strict": True,
    }
