"""
"""
import itertools
from fractions import Fraction as F

import hypothesis
import hypothesis.strategies as strat
import pytest

from boolmeas import (
    CantorAlgebra,
    CantorClopen,
    Chunk,
    FiniteCofinite,
    FiniteCofiniteAlgebra,
    FiniteSetAlgebra,
    ForeignElementError,
    ValidationError,
    cantor_to_interval,
    element_ops,
    enumerate_chunks,
    lambda_measure,
    normalize,
    shift_preimage,
    sikorski_check,
)

C = CantorAlgebra()


@strat.composite
def cantor_clopens(draw, max_index=4):
    support = draw(strat.lists(strat.integers(0, max_index), max_size=3, unique=True))
    patterns = draw(strat.sets(strat.tuples(*[strat.sampled_from((0, 1))] * len(support))))
    return CantorClopen.build(support, patterns)


finite_cofinites = strat.builds(
    FiniteCofinite, strat.frozensets(strat.integers(0, 6), max_size=4), strat.booleans()
)


def atom_sets(k=4):
    A = FiniteSetAlgebra.of_size(k)
    return strat.integers(0, A.unit_bits).map(A.element)


def boolean_laws(a, b, c):
    assert element_ops("meet", a, element_ops("join", b, c)) == element_ops(
        "join", element_ops("meet", a, b), element_ops("meet", a, c)
    )
    assert ~(a | b) == ~a & ~b
    assert (a & ~a).is_zero()
    assert (a | ~a).is_unit()
    assert (a ^ b) == (a & ~b) | (~a & b)
    assert ~~a == a


# ---------------------------------------------------------------- element_ops

def test_element_ops_examples():
    fc = FiniteCofinite(frozenset({0, 1}), False)
    assert element_ops("complement", fc) == FiniteCofinite(frozenset({0, 1}), True)
    assert element_ops("meet", C.generator(0), ~C.generator(0)).is_zero()
    A = FiniteSetAlgebra.of_size(3)
    assert element_ops("join", A.parse("100"), A.parse("010")).bitstring() == "110"


def test_mixed_presentations_rejected():
    A = FiniteSetAlgebra.of_size(2)
    with pytest.raises(ForeignElementError):
        element_ops("meet", A.unit(), C.generator(0))
    with pytest.raises(ForeignElementError):
        A.unit() & FiniteSetAlgebra.of_size(3).unit()


@hypothesis.given(atom_sets(), atom_sets(), atom_sets())
def test_finite_set_laws(a, b, c):
    boolean_laws(a, b, c)


@hypothesis.given(cantor_clopens(), cantor_clopens(), cantor_clopens())
def test_cantor_laws(a, b, c):
    boolean_laws(a, b, c)


@hypothesis.given(finite_cofinites, finite_cofinites, finite_cofinites)
def test_finite_cofinite_laws(a, b, c):
    boolean_laws(a, b, c)


def test_finite_algebra_parsing():
    A = FiniteSetAlgebra(("x", "y", "z"))
    assert A.parse("101").atoms() == [0, 2]
    assert A.atom("y").bitstring() == "010"
    assert len(list(A.elements())) == 8
    with pytest.raises(ValidationError):
        A.parse("10")
    with pytest.raises(ValidationError):
        FiniteSetAlgebra(("a", "a"))


# ---------------------------------------------------------------- Cantor canonical form

def test_cantor_canonical_support():
    redundant = CantorClopen.build([0, 3], ["10", "11"])
    assert redundant == C.generator(0)
    assert redundant.support == (0,)
    assert CantorClopen.build([2], ["0", "1"]).is_unit()
    assert CantorClopen.build([2], []).is_zero()


@hypothesis.given(cantor_clopens(), cantor_clopens())
def test_cantor_equality_is_set_equality(a, b):
    same_points = all(
        a.contains_bits(bits) == b.contains_bits(bits)
        for bits in itertools.product((0, 1), repeat=5)
    )
    assert same_points == (a == b)


def test_chunks():
    chunks = enumerate_chunks(2)
    assert len(chunks) == 8
    assert Chunk({0}, {1}).to_clopen() == C.generator(0) & ~C.generator(1)
    with pytest.raises(ValidationError):
        Chunk({0}, {0})


# ---------------------------------------------------------------- digit embedding

def test_cantor_to_interval_examples():
    assert cantor_to_interval(C.generator(0)) == normalize([(F(1, 2), 1)])
    assert cantor_to_interval(C.generator(1)) == normalize([(F(1, 4), F(1, 2)), (F(3, 4), 1)])
    assert cantor_to_interval(C.generator(0) & C.generator(1)) == normalize([(F(3, 4), 1)])


@hypothesis.given(cantor_clopens(), cantor_clopens())
def test_cantor_to_interval_is_homomorphism(a, b):
    assert cantor_to_interval(a & b) == cantor_to_interval(a) & cantor_to_interval(b)
    assert cantor_to_interval(a | b) == cantor_to_interval(a) | cantor_to_interval(b)
    assert cantor_to_interval(~a) == ~cantor_to_interval(a)
    assert lambda_measure(cantor_to_interval(a)) == a.uniform_measure()


@pytest.mark.parametrize("n", range(6))
def test_digit_shift_agrees_with_doubling_map(n):
    assert lambda_measure(cantor_to_interval(C.generator(n))) == F(1, 2)
    assert shift_preimage(cantor_to_interval(C.generator(n)), 1) == cantor_to_interval(
        C.generator(n + 1)
    )


# ---------------------------------------------------------------- Sikorski criterion

def test_sikorski_partition_of_unity():
    A = FiniteSetAlgebra.of_size(2)
    verdict = sikorski_check(A, {"a": normalize([(0, F(1, 2))]), "b": normalize([(F(1, 2), 1)])})
    assert verdict.extendable


def test_sikorski_overlap_counterexample():
    A = FiniteSetAlgebra.of_size(2)
    verdict = sikorski_check(A, {"a": normalize([(0, F(3, 4))]), "b": normalize([(F(1, 2), 1)])})
    assert not verdict.extendable
    assert verdict.counterexample == "a & b"
    assert verdict.witness == normalize([(F(1, 2), F(3, 4))])


def test_sikorski_free_generators():
    verdict = sikorski_check(C, {"C0": normalize([(0, F(1, 3))]), "C1": normalize([(0, 1)])})
    assert verdict.extendable
    assert sorted(verdict.images) == [0, 1]


def test_sikorski_missing_atom():
    A = FiniteSetAlgebra.of_size(3)
    with pytest.raises(ValidationError, match="missing"):
        sikorski_check(A, {"a": normalize([(0, 1)])})


def test_sikorski_finite_cofinite_points():
    verdict = sikorski_check(
        FiniteCofiniteAlgebra(),
        {0: normalize([(0, F(1, 2))]), 1: normalize([(F(1, 4), F(3, 4))])},
    )
    assert not verdict.extendable


def test_accepted_assignments_extend_to_homomorphisms():
    # exhaustive over all elements of a 3-atom algebra
    A = FiniteSetAlgebra.of_size(3)
    images = {
        0: normalize([(0, F(1, 3))]),
        1: normalize([(F(1, 3), F(1, 2)), (F(3, 4), 1)]),
        2: normalize([(F(1, 2), F(3, 4))]),
    }
    assert sikorski_check(A, images).extendable

    def extend(x):
        out = normalize([])
        for i in x.atoms():
            out = out | images[i]
        return out

    for x in A.elements():
        assert extend(~x) == ~extend(x)
        for y in A.elements():
            assert extend(x & y) == extend(x) & extend(y)
            assert extend(x | y) == extend(x) | extend(y)
