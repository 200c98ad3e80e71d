import pytest

from isoresidual.boundary import profile
from isoresidual.core import WrongZeroCount
from isoresidual.fiber import (
    NonIntegral,
    all_even_predicate,
    all_poles_simple_predicate,
    divisibility_factor,
    euler_characteristic,
    genus_simple_poles,
    num_components,
    profile_all_even,
)


def test_one_one_two_one_one(stratum):
    prof = profile(stratum("1,1,-2,-1,-1"))
    assert prof.stratum_signature() == (2, 2, -1, -1, -2, -2)
    assert (prof.num_components, prof.genus_per_component) == (1, 0)
    assert divisibility_factor(prof) == 1


def test_four_simple_poles(stratum):
    prof = profile(stratum("1,1,-1,-1,-1,-1"))
    assert prof.stratum_signature() == (2, 2) + (-1,) * 6
    assert euler_characteristic(prof) == 2


def test_two_three_is_a_torus(stratum):
    prof = profile(stratum("2,3,-1,-2,-4"))
    assert prof.degree == 0 and euler_characteristic(prof) == 0
    assert prof.genus_per_component == 1
    assert divisibility_factor(prof) == 1


def test_all_double_poles(stratum):
    prof = profile(stratum("2,2,-2,-2,-2"))
    assert prof.count("zero", 4) == 4 and prof.count("pole", 2) == 8
    assert prof.genus_per_component == 1
    assert divisibility_factor(prof) == 2
    assert all_even_predicate(stratum("2,2,-2,-2,-2"))


@pytest.mark.parametrize("a", range(2, 7))
def test_disjoint_spheres(stratum, a):
    s = stratum(f"{a},{a},-{2 * a},-1,-1")
    prof = profile(s)
    assert num_components(s) == a
    assert euler_characteristic(prof) == 2 * a
    assert prof.genus_per_component == 0
    assert prof.component_signature() == (2 * a, 2 * a, -a, -a, -a - 1, -a - 1)


@pytest.mark.parametrize("a1, a2, value", [(1, 1, -2), (2, 2, 16), (1, 2, -2)])
def test_simple_pole_genus_formula(a1, a2, value):
    assert genus_simple_poles(a1, a2) == value


def test_simple_pole_genus_split_over_components(stratum):
    prof = profile(stratum("2,2,-1,-1,-1,-1,-1,-1"))
    assert prof.degree == 16 and prof.num_components == 2 and prof.genus_per_component == 5


@pytest.mark.parametrize(
    "mu, k",
    [("3,3,-6,-1,-1", 3), ("2,2,-1,-1,-1,-1,-1,-1", 2), ("1,2,-1,-1,-1,-1,-1", 1), ("2,3,-1,-2,-4", 1)],
)
def test_component_count(stratum, mu, k):
    assert num_components(stratum(mu)) == k


def test_components_need_two_zeros(stratum):
    with pytest.raises(WrongZeroCount):
        num_components(stratum("1,-3"))


def test_predicates(stratum):
    assert all_poles_simple_predicate(stratum("2,3,-1,-1,-1,-1,-1,-1,-1"))
    assert not all_poles_simple_predicate(stratum("2,3,-1,-2,-4"))


def test_two_pole_counterexample(stratum):
    s = stratum("3,3,-1,-7")
    prof = profile(s)
    assert prof.stratum_signature() == (6, -4, -4)
    assert profile_all_even(prof)
    assert any(x % 2 for x in s.signature())
    # for two poles the predicate reports the profile truth, not the pattern
    assert all_even_predicate(s)


def test_component_signature_requires_divisibility(stratum):
    prof = profile(stratum("1,2,-1,-1,-1,-1,-1"))
    # single component: always divisible
    assert prof.component_signature() == prof.stratum_signature()
    assert issubclass(NonIntegral, ArithmeticError)
