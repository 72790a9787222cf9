"""
"""
import itertools
from fractions import Fraction as F

import hypothesis
import hypothesis.strategies as strat
import pytest

from boolmeas import (
    CapExceededError,
    FiniteSetAlgebra,
    KelleyInstance,
    ValidationError,
    intersection_number_bruteforce,
    kelley_lp,
    supports_decision,
)
from boolmeas.core.simplex import RationalSimplex, maximize

A3 = FiniteSetAlgebra.of_size(3)


def instance(*bitstrings, algebra=A3):
    return KelleyInstance.from_bitstrings(algebra, list(bitstrings))


def measure_of(witness, member):
    return sum(witness[i] for i in member.atoms())


def check_witness(inst, result):
    assert sum(result.witness) == 1
    assert all(w >= 0 for w in result.witness)
    assert min(measure_of(result.witness, m) for m in inst.family) == result.value
    assert F(result.certificate_max, len(result.certificate)) == result.value


# ---------------------------------------------------------------- simplex

def test_simplex_small_program():
    # max 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6
    solution = maximize([[1, 1], [1, 3]], [4, 6], [3, 2])
    assert solution.status == "optimal"
    assert solution.value == 12
    assert solution.x == [4, 0]
    assert solution.dual == [3, 0]


def test_simplex_unbounded_and_bad_rows():
    assert maximize([[1, -1]], [1], [0, 1]).status == "unbounded"
    with pytest.raises(ValidationError):
        RationalSimplex([[1, 1]], [-1], [1, 1])
    with pytest.raises(ValidationError):
        RationalSimplex([[1]], [1], [1, 1])


# ---------------------------------------------------------------- LP

def test_lp_examples():
    assert kelley_lp(instance("111")).value == 1

    singletons = instance("100", "010", "001")
    result = kelley_lp(singletons)
    assert result.value == F(1, 3)
    assert result.witness == (F(1, 3), F(1, 3), F(1, 3))
    check_witness(singletons, result)

    pairs = instance("110", "011", "101")
    result = kelley_lp(pairs)
    assert result.value == F(2, 3)
    check_witness(pairs, result)


def test_lp_all_nonzero_elements():
    family = [A3.element(bits).bitstring() for bits in range(1, 8)]
    assert kelley_lp(instance(*family)).value == F(1, 3)


def test_instance_validation():
    with pytest.raises(ValidationError, match="/family/1"):
        instance("100", "000")
    with pytest.raises(ValidationError):
        instance()
    with pytest.raises(ValidationError, match="/family/0"):
        instance("10")
    big = FiniteSetAlgebra.of_size(21)
    with pytest.raises(CapExceededError):
        KelleyInstance(big, (big.unit(),))
    with pytest.raises(CapExceededError):
        KelleyInstance(A3, (A3.unit(),) * 3, max_family=2)


@hypothesis.given(strat.lists(strat.integers(1, 15), min_size=1, max_size=5))
def test_lp_witness_and_certificate_are_exact(members):
    A = FiniteSetAlgebra.of_size(4)
    inst = KelleyInstance(A, tuple(A.element(b) for b in members))
    check_witness(inst, kelley_lp(inst))


@hypothesis.given(strat.lists(strat.integers(1, 15), min_size=1, max_size=5), strat.integers(1, 15))
def test_adding_a_member_never_raises_the_value(members, extra):
    A = FiniteSetAlgebra.of_size(4)
    smaller = KelleyInstance(A, tuple(A.element(b) for b in members))
    larger = KelleyInstance(A, tuple(A.element(b) for b in members + [extra]))
    assert kelley_lp(larger).value <= kelley_lp(smaller).value


# ---------------------------------------------------------------- brute force

def test_bruteforce_examples():
    assert intersection_number_bruteforce(instance("111"), 4).value == 1

    result = intersection_number_bruteforce(instance("100", "010", "001"), 3)
    assert result.value == F(1, 3)
    assert sorted(result.multiset) == [0, 1, 2]

    result = intersection_number_bruteforce(instance("110", "011", "101"), 3)
    assert result.value == F(2, 3)
    assert result.max_intersecting == 2
    assert sorted(result.multiset) == [0, 1, 2]


def test_bruteforce_caps():
    with pytest.raises(CapExceededError):
        intersection_number_bruteforce(instance("100"), 13)
    with pytest.raises(ValidationError):
        intersection_number_bruteforce(instance("100"), 0)
    with pytest.raises(CapExceededError):
        intersection_number_bruteforce(instance("100", "010", "001", "110", "011"), 12, multiset_limit=100)


def test_bruteforce_is_nonincreasing_in_bound():
    inst = instance("110", "011", "101", "100")
    values = [intersection_number_bruteforce(inst, n).value for n in range(1, 9)]
    assert values == sorted(values, reverse=True)


def test_duality_exhaustive_small():
    """Every family of at most 4 members over at most 3 atoms."""
    for k in (1, 2, 3):
        A = FiniteSetAlgebra.of_size(k)
        nonzero = range(1, 1 << k)
        for size in range(1, 5):
            for members in itertools.combinations_with_replacement(nonzero, size):
                inst = KelleyInstance(A, tuple(A.element(b) for b in members))
                lp = kelley_lp(inst)
                bound = min(12, lp.value.denominator * size)
                brute = intersection_number_bruteforce(inst, bound)
                assert brute.value == lp.value
                assert intersection_number_bruteforce(inst, 1).value >= lp.value


# ---------------------------------------------------------------- decision

def test_supports_decision_examples():
    singletons = [A3.parse(s) for s in ("100", "010", "001")]
    verdict = supports_decision(A3, singletons, N=3)
    assert verdict.value == F(1, 3)
    assert verdict.agrees

    everything = list(A3.elements())[1:]
    assert supports_decision(A3, everything, N=3).value == F(1, 3)

    verdict = supports_decision(A3, [A3.unit(), A3.unit()], N=2)
    assert verdict.value == 1
    assert verdict.agrees
    assert verdict.to_dict()["value"] == [1, 1]


def test_supports_decision_reports_disagreement_below_bound():
    pairs = [A3.parse(s) for s in ("110", "011", "101")]
    verdict = supports_decision(A3, pairs, N=2)
    assert verdict.brute_value == 1
    assert not verdict.agrees
    assert verdict.brute_bound == 2
