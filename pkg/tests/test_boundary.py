from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from isoresidual.boundary import (
    POLE,
    Degeneration,
    ZERO,
    SingularityRecord,
    aggregate,
    all_records,
    cherry_record,
    cherry_records,
    horizontal_records,
    profile,
    residue_total,
    zero_record,
)
from isoresidual.core import ResidueForm, StratumError, tripartitions, validate


def _poles(records):
    """Counter of (order, residue vector) -> multiplicity."""
    c = Counter()
    for r in records:
        if r.kind == POLE:
            c[(r.order, r.residue.coeffs)] += r.multiplicity
    return c


@pytest.mark.parametrize(
    "mu, order, mult",
    [("2,3,-1,-2,-4", 5, 5), ("1,1,-1,-1,-1,-1", 2, 2), ("3,3,-1,-7", 6, 1)],
)
def test_merged_zero(stratum, mu, order, mult):
    r = zero_record(stratum(mu))
    assert (r.kind, r.order, r.multiplicity) == (ZERO, order, mult)
    assert r.residue.is_zero()


def test_two_three_itemization(stratum):
    poles = _poles(all_records(stratum("2,3,-1,-2,-4")))
    assert poles == {
        (1, (0, 0, 1)): 2,
        (2, (1, 1, 0)): 3,
        (3, (-1, 0, 0)): 1,
        (3, (-1, 1, 0)): 2,
        (4, (1, 0, 0)): 1,
        (4, (1, -3, 0)): 1,
    }
    assert sum(poles.values()) == 10


def test_double_pole_cherries(stratum):
    recs = cherry_records(stratum("1,1,-2,-1,-1"))
    got = {(r.source.I, r.source.J, r.source.K): r.residue.coeffs for r in recs}
    assert got == {((1,), (2,), (0,)): (0, -1, 1), ((2,), (1,), (0,)): (0, 1, -1)}
    assert all(r.order == 2 and r.multiplicity == 1 for r in recs)


def test_horizontal_nodes_give_plus_minus_first_residue(stratum):
    recs = horizontal_records(stratum("1,1,-2,-1,-1"))
    forms = sorted(r.residue.canonical().coeffs for r in recs)
    # l2 + l3 is -l1 modulo the all-ones vector
    assert forms == [(0, 1, 1), (1, 0, 0)]


def test_two_pole_case_gives_plus_minus_first_residue(stratum):
    recs = cherry_records(stratum("3,3,-1,-7"))
    assert sorted((r.order, r.residue.coeffs, r.source.subcase) for r in recs) == [
        (4, (-1, 0), "I-only"),
        (4, (1, 0), "J-only"),
    ]


def test_residueless_top_gives_residueless_double_pole(stratum):
    recs = [r for r in cherry_records(stratum("2,2,-2,-2,-2")) if r.source.subcase == "empty"]
    assert len(recs) == 1 and recs[0].order == 2 and recs[0].multiplicity == 2
    assert recs[0].residue.is_zero()


def test_records_have_positive_multiplicity():
    with pytest.raises(ValueError):
        SingularityRecord(POLE, 2, 0, ResidueForm.zero(2), None)


def test_single_pole_rejected(stratum):
    with pytest.raises(StratumError):
        profile(stratum("1,1,-4"))


def test_aggregate_merges_equivalent_residues():
    a = SingularityRecord(POLE, 1, 2, ResidueForm((0, 1, 1)), Degeneration("horizontal", (0,), (1, 2)))
    b = SingularityRecord(POLE, 1, 3, ResidueForm((-1, 0, 0)), Degeneration("horizontal", (1, 2), (0,)))
    (entry,) = aggregate([a, b])
    assert entry.multiplicity == 5 and entry.residue == ResidueForm((0, 1, 1))


@st.composite
def strata(draw):
    b = draw(st.lists(st.integers(1, 4), min_size=2, max_size=5))
    total = sum(b)
    if total < 4:
        b.append(4 - total)
        total = 4
    a1 = draw(st.integers(1, total - 3))
    return validate((a1, total - 2 - a1), b)


@settings(max_examples=60, deadline=None)
@given(s=strata(), seed=st.randoms(use_true_random=False))
def test_aggregation_is_order_independent(s, seed):
    recs = all_records(s)
    shuffled = list(recs)
    seed.shuffle(shuffled)
    assert aggregate(recs) == aggregate(shuffled)


@settings(max_examples=60, deadline=None)
@given(s=strata())
def test_pole_residues_cancel(s):
    assert residue_total(aggregate(all_records(s)), s.p).is_zero()


def test_raw_residue_total_example(stratum):
    s = stratum("2,3,-1,-2,-4")
    assert residue_total(all_records(s), 3).coeffs == (2, 2, 2)


@settings(max_examples=80, deadline=None)
@given(s=strata())
def test_pruned_cherry_search_matches_full_sweep(s):
    full = [cherry_record(s, I, J, K) for I, J, K in tripartitions(s.p)]
    assert sorted(r.source for r in full if r is not None) == sorted(r.source for r in cherry_records(s))
