"""
"""
import itertools
from fractions import Fraction as F

import hypothesis
import hypothesis.strategies as strat
import pytest

from boolmeas import (
    CantorAlgebra,
    ClopenSet,
    FiniteSetAlgebra,
    ForeignElementError,
    Homomorphism,
    Measure,
    ValidationError,
    atomless_partition,
    epsilon_net_profile,
    epsilon_net_size,
    evaluate_measure,
    fn_distance,
    is_strictly_positive,
    measure_from_centering,
    metric_embedding,
)
from boolmeas.core.measures import is_atomless_at


@strat.composite
def weighted(draw, max_atoms=4):
    k = draw(strat.integers(1, max_atoms))
    raw = draw(strat.lists(strat.integers(0, 6), min_size=k, max_size=k).filter(any))
    total = sum(raw)
    A = FiniteSetAlgebra.of_size(k)
    return A, Measure.from_weights(A, [F(w, total) for w in raw])


# ---------------------------------------------------------------- evaluation

def test_evaluate_examples():
    A = FiniteSetAlgebra.of_size(4)
    assert evaluate_measure(Measure.uniform(A), A.parse("1010")) == F(1, 2)
    assert evaluate_measure(Measure.dirac(A, "c"), A.parse("0011")) == 1
    C = CantorAlgebra()
    mu = Measure.induced(Homomorphism.digit_identity())
    assert evaluate_measure(mu, C.generator(3)) == F(1, 2)


def test_evaluate_rejects_foreign_element():
    A = FiniteSetAlgebra.of_size(2)
    with pytest.raises(ForeignElementError):
        evaluate_measure(Measure.uniform(A), FiniteSetAlgebra.of_size(3).unit())


def test_weights_must_sum_to_one():
    A = FiniteSetAlgebra.of_size(2)
    with pytest.raises(ValidationError, match="sum"):
        Measure.from_weights(A, ["1/2", "1/3"])
    with pytest.raises(ValidationError, match="/weights/1"):
        Measure.from_weights(A, ["3/2", "-1/2"])
    with pytest.raises(ValidationError):
        Measure.from_weights(A, [0.5, 0.5])


@hypothesis.given(weighted())
def test_finite_additivity(case):
    A, mu = case
    assert evaluate_measure(mu, A.zero()) == 0
    assert evaluate_measure(mu, A.unit()) == 1
    for a, b in itertools.product(A.elements(), repeat=2):
        if (a & b).is_zero():
            assert evaluate_measure(mu, a | b) == evaluate_measure(mu, a) + evaluate_measure(mu, b)
        if (a & ~b).is_zero():
            assert evaluate_measure(mu, a) <= evaluate_measure(mu, b)


def test_to_dict_lists_positive_weights():
    A = FiniteSetAlgebra.of_size(3)
    mu = Measure.from_weights(A, ["1/2", "1/2", 0])
    assert mu.to_dict() == {"kind": "atoms", "weights": [["a", 1, 2], ["b", 1, 2]]}


# ---------------------------------------------------------------- positivity

def test_strict_positivity_examples():
    A = FiniteSetAlgebra.of_size(3)
    assert is_strictly_positive(Measure.uniform(A), A).positive
    report = is_strictly_positive(Measure.from_weights(A, ["1/2", "1/2", 0]), A)
    assert not report.positive
    assert report.null_atom == 2
    assert report.null_label == "c"
    B = FiniteSetAlgebra.of_size(2)
    assert not is_strictly_positive(Measure.dirac(B, 0), B).positive


# ---------------------------------------------------------------- atomless partitions

def test_partition_uniform_singletons():
    A = FiniteSetAlgebra.of_size(8)
    result = atomless_partition(Measure.uniform(A), F(1, 5))
    assert result.success
    assert [p.atoms() for p in result.parts] == [[i] for i in range(8)]
    assert all(m == F(1, 8) for m in result.measures)


def test_partition_dirac_fails_with_charged_atom():
    A = FiniteSetAlgebra.of_size(3)
    result = atomless_partition(Measure.dirac(A, "b"), F(1, 2))
    assert not result.success
    assert result.witness == A.atom("b")
    assert result.witness_measure == 1


def test_partition_cantor_chunks():
    mu = Measure.induced(Homomorphism.digit_identity())
    result = atomless_partition(mu, F(1, 3))
    assert result.success
    assert len(result.parts) == 4
    assert all(part.support == (0, 1) for part in result.parts)
    assert result.measures == [F(1, 4)] * 4
    joined = result.parts[0]
    for part in result.parts[1:]:
        assert (joined & part).is_zero()
        joined = joined | part
    assert joined.is_unit()


def test_partition_cantor_depth_cap():
    # every generator maps to the unit, so all mass stays on one chunk
    phi = Homomorphism(CantorAlgebra(), tail="one")
    result = atomless_partition(Measure.induced(phi), F(1, 2), max_depth=5)
    assert not result.success
    assert result.depth_cap_hit
    assert result.witness_measure == 1
    assert not is_atomless_at(Measure.induced(phi), F(1, 2), max_depth=5)
    assert phi.evaluate(CantorAlgebra().generator(7)) == ClopenSet.unit()


@hypothesis.given(weighted(max_atoms=6), strat.fractions(min_value=F(1, 20), max_value=1))
def test_partition_success_is_a_partition(case, eps):
    A, mu = case
    result = atomless_partition(mu, eps)
    if result.success:
        assert all(m < eps for m in result.measures)
        total = A.zero()
        for part in result.parts:
            assert (total & part).is_zero()
            total = total | part
        assert total.is_unit()
    else:
        assert result.witness_measure >= eps


# ---------------------------------------------------------------- epsilon nets

def brute_force_net(mu, A, eps):
    elements = list(A.elements())

    def d(x, y):
        return evaluate_measure(mu, x ^ y)

    for size in range(1, len(elements) + 1):
        for centers in itertools.combinations(elements, size):
            if all(any(d(x, c) < eps for c in centers) for x in elements):
                return size
    raise AssertionError("unreachable")


def test_net_examples():
    A = FiniteSetAlgebra.of_size(2)
    assert epsilon_net_size(Measure.uniform(A), A, F(3, 2)).size == 1
    assert epsilon_net_size(Measure.uniform(A), A, F(3, 5)).size == 2
    B = FiniteSetAlgebra.of_size(1)
    result = epsilon_net_size(Measure.uniform(B), B, F(1, 2))
    assert result.size == 2
    assert result.exact


@hypothesis.settings(max_examples=40, deadline=None)
@hypothesis.given(weighted(max_atoms=3), strat.fractions(min_value=F(1, 10), max_value=1))
def test_net_agrees_with_brute_force(case, eps):
    A, mu = case
    result = epsilon_net_size(mu, A, eps)
    assert result.exact
    assert result.size == brute_force_net(mu, A, eps)
    for x in A.elements():
        assert any(evaluate_measure(mu, x ^ c) < eps for c in result.centers)


def test_net_greedy_fallback_is_flagged(caplog):
    A = FiniteSetAlgebra.of_size(6)
    result = epsilon_net_size(Measure.uniform(A), A, F(1, 3), exact_cap=4)
    assert not result.exact
    assert "greedy" in caplog.text
    for x in A.elements():
        assert any(evaluate_measure(Measure.uniform(A), x ^ c) < F(1, 3) for c in result.centers)


def test_net_profile_is_monotone():
    A = FiniteSetAlgebra.of_size(4)
    sizes = [r.size for r in epsilon_net_profile(Measure.uniform(A), A, [F(1, 5), F(1, 2), F(3, 4), 2])]
    assert sizes == sorted(sizes, reverse=True)
    assert sizes[-1] == 1


# ---------------------------------------------------------------- centering measures

def test_measure_from_centering_examples():
    A = FiniteSetAlgebra.of_size(2)
    assert measure_from_centering(A, ["a"]) == Measure.dirac(A, "a")
    assert measure_from_centering(A, ["a", "b"]).weights == (F(1, 2), F(1, 2))
    assert measure_from_centering(A, ["a", "b", "a"]).weights == (F(3, 4), F(1, 4))
    with pytest.raises(ValidationError):
        measure_from_centering(A, [])


@hypothesis.given(strat.lists(strat.integers(0, 4), min_size=1, max_size=8))
def test_centering_positive_exactly_on_listed_atoms(sequence):
    A = FiniteSetAlgebra.of_size(5)
    mu = measure_from_centering(A, sequence)
    assert sum(mu.weights) == 1
    assert {i for i, w in enumerate(mu.weights) if w > 0} == set(sequence)


def test_fn_distance_matches_induced_metric():
    A = FiniteSetAlgebra.of_size(3)
    mu = Measure.from_weights(A, ["1/2", "1/3", "1/6"])
    phi = metric_embedding(A, mu)
    for x, y in itertools.product(A.elements(), repeat=2):
        assert fn_distance(phi(x), phi(y)) == evaluate_measure(mu, x ^ y)
