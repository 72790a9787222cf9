"""
Finitely Additive Measures - boolmeas v0.1

Probability measures on the algebra presentations, either given by atom
weights or induced by a homomorphism into the interval model (mu = lambda
o phi).

WHAT LIVES HERE:
----------------
- evaluate_measure        exact value of mu on an element
- is_strictly_positive    positivity on every atom, with a null witness
- atomless_partition      partition of unity into small pieces, or a heavy atom
- epsilon_net_size        minimal d_mu-net (exact search, greedy fallback)
- measure_from_centering  sum of Dirac deltas weighted 2^-(n+1)

All values are Fractions; masses are normalized to exactly 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import ForeignElementError, ValidationError
from .algebras import (
    AtomSet,
    CantorAlgebra,
    CantorClopen,
    FiniteSetAlgebra,
    Presentation,
    require_member,
)
from .interval_model import as_rational, lambda_measure

logger = logging.getLogger(__name__)

# depth cap for refining induced measures on the Cantor algebra
PARTITION_DEPTH_LIMIT = 16
# exact epsilon-net search
NET_EXACT_ATOMS = 16
NET_NODE_BUDGET = 200_000


@dataclass(frozen=True)
class Measure:
    """
    A probability measure on an algebra presentation.

    kind == 'atoms'   : `weights[i]` is the mass of atom i (FiniteSetAlgebra only)
    kind == 'induced' : mu(A) = lambda(hom.evaluate(A))

    Use the from_weights / dirac / induced constructors.
    """

    kind: str
    algebra: Presentation
    weights: Tuple[Fraction, ...] = ()
    hom: Optional[Any] = field(default=None, compare=False)

    @classmethod
    def from_weights(cls, algebra: FiniteSetAlgebra, weights: Sequence) -> "Measure":
        """
        Atom-weighted measure. Weights are nonnegative and sum to exactly 1.

        Raises:
            ValidationError: wrong length, negative weight, or mass != 1
        """
        if len(weights) != algebra.atom_count:
            raise ValidationError(
                f"expected {algebra.atom_count} weights, got {len(weights)}", pointer="/weights"
            )
        values = tuple(as_rational(w, pointer=f"/weights/{i}") for i, w in enumerate(weights))
        for i, w in enumerate(values):
            if w < 0:
                raise ValidationError(f"negative weight {w}", pointer=f"/weights/{i}")
        total = sum(values, Fraction(0))
        if total != 1:
            raise ValidationError(f"weights sum to {total}, not 1", pointer="/weights")
        return cls("atoms", algebra, values)

    @classmethod
    def dirac(cls, algebra: FiniteSetAlgebra, atom) -> "Measure":
        """The Dirac delta at the principal ultrafilter of `atom`."""
        index = algebra.index_of(atom)
        return cls("atoms", algebra, tuple(Fraction(int(i == index)) for i in range(algebra.atom_count)))

    @classmethod
    def uniform(cls, algebra: FiniteSetAlgebra) -> "Measure":
        k = algebra.atom_count
        return cls("atoms", algebra, (Fraction(1, k),) * k)

    @classmethod
    def induced(cls, hom) -> "Measure":
        """mu = lambda o hom."""
        return cls("induced", hom.domain, (), hom)

    def to_dict(self) -> dict:
        if self.kind == "atoms":
            labels = self.algebra.atom_labels
            return {
                "kind": "atoms",
                "weights": [
                    [labels[i], w.numerator, w.denominator]
                    for i, w in enumerate(self.weights) if w > 0
                ],
            }
        return {"kind": "induced", "hom": self.hom.to_dict()}


def evaluate_measure(mu: Measure, a) -> Fraction:
    """
    Exact value mu(a).

    Raises:
        ForeignElementError: a is not an element of mu's algebra
    """
    require_member(mu.algebra, a)
    if mu.kind == "atoms":
        return sum((mu.weights[i] for i in a.atoms()), Fraction(0))
    return lambda_measure(mu.hom.evaluate(a))


def atom_weights(mu: Measure) -> Tuple[Fraction, ...]:
    """Mass of every atom of a measure on a FiniteSetAlgebra."""
    if not isinstance(mu.algebra, FiniteSetAlgebra):
        raise ValidationError("atom weights exist only on finite set algebras")
    if mu.kind == "atoms":
        return mu.weights
    return tuple(evaluate_measure(mu, mu.algebra.atom(i)) for i in range(mu.algebra.atom_count))


def _check_algebra(mu: Measure, algebra: FiniteSetAlgebra) -> None:
    if mu.algebra != algebra:
        raise ForeignElementError("measure is defined on a different algebra")


# ========== Strict Positivity ==========

@dataclass(frozen=True)
class PositivityReport:
    positive: bool
    null_atom: Optional[int] = None
    null_label: Optional[str] = None


def is_strictly_positive(mu: Measure, algebra: FiniteSetAlgebra) -> PositivityReport:
    """True iff every atom has positive mass; otherwise the first null atom."""
    _check_algebra(mu, algebra)
    for i, w in enumerate(atom_weights(mu)):
        if w == 0:
            return PositivityReport(False, i, algebra.atom_labels[i])
    return PositivityReport(True)


# ========== Atomless Partitions ==========

@dataclass(frozen=True)
class PartitionResult:
    """
    Outcome of atomless_partition.

    success  : parts is a partition of unity with every part below eps
    failure  : witness is a part of mass >= eps that the presentation
               cannot split further (an atom of a finite algebra, or a
               Cantor chunk at the refinement depth cap)
    """

    success: bool
    eps: Fraction
    parts: List[Any] = field(default_factory=list)
    measures: List[Fraction] = field(default_factory=list)
    witness: Optional[Any] = None
    witness_measure: Optional[Fraction] = None
    depth_cap_hit: bool = False


def atomless_partition(mu: Measure, eps, max_depth: int = PARTITION_DEPTH_LIMIT) -> PartitionResult:
    """
    Partition of unity into elements of measure < eps, or a failure witness.

    On a FiniteSetAlgebra the atoms are the finest partition, so the answer
    is the singletons when every atom is light. On the Cantor algebra the
    unit is split along C_0, C_1, ... only where a part is still too heavy.
    """
    eps = as_rational(eps, pointer="/eps")
    if eps <= 0:
        raise ValidationError(f"eps must be positive, got {eps}", pointer="/eps")

    if isinstance(mu.algebra, FiniteSetAlgebra):
        algebra = mu.algebra
        weights = atom_weights(mu)
        heaviest = max(range(algebra.atom_count), key=lambda i: (weights[i], -i))
        if weights[heaviest] >= eps:
            return PartitionResult(False, eps, witness=algebra.atom(heaviest),
                                   witness_measure=weights[heaviest])
        return PartitionResult(
            True, eps,
            parts=[algebra.atom(i) for i in range(algebra.atom_count)],
            measures=list(weights),
        )

    if isinstance(mu.algebra, CantorAlgebra) and mu.kind == "induced":
        cantor = mu.algebra
        parts: List[CantorClopen] = []
        measures: List[Fraction] = []
        stack = [(cantor.unit(), 0)]
        while stack:
            element, depth = stack.pop()
            mass = evaluate_measure(mu, element)
            if mass < eps:
                parts.append(element)
                measures.append(mass)
            elif depth >= max_depth:
                logger.debug("partition stopped at depth cap %d with mass %s", max_depth, mass)
                return PartitionResult(False, eps, witness=element, witness_measure=mass,
                                       depth_cap_hit=True)
            else:
                generator = cantor.generator(depth)
                # pushed in reverse so parts come out in digit order
                stack.append((element & generator, depth + 1))
                stack.append((element & ~generator, depth + 1))
        return PartitionResult(True, eps, parts=parts, measures=measures)

    raise ValidationError(
        "atomless_partition needs a finite set algebra or an induced measure on the Cantor algebra"
    )


# ========== Epsilon Nets ==========

@dataclass(frozen=True)
class NetResult:
    """Minimal (exact=True) or greedy (exact=False) d_mu-net of radius eps."""

    eps: Fraction
    size: int
    centers: List[AtomSet]
    exact: bool


class _BudgetExhausted(Exception):
    pass


def _subset_masses(int_weights: List[int]) -> np.ndarray:
    """mass[b] = sum of int_weights over the set bits of b."""
    dtype = np.int64 if sum(int_weights) < 2 ** 62 else object
    masses = np.zeros(1 << len(int_weights), dtype=dtype)
    for b, w in enumerate(int_weights):
        masses[1 << b: 1 << (b + 1)] = masses[: 1 << b] + w
    return masses


def _cover_search(universe: int, ball: np.ndarray, upper: List[int], node_budget: int) -> List[int]:
    """
    Branch and bound for a minimum set of centers c with union of (c xor ball) = everything.

    Balls are translates of one another, so the first center may be taken
    to be 0; every later branch covers the lowest uncovered point.
    """
    best = list(upper)
    nodes = 0
    ball_size = ball.size

    def search(covered: np.ndarray, centers: List[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise _BudgetExhausted
        uncovered = np.flatnonzero(~covered)
        if uncovered.size == 0:
            if len(centers) < len(best):
                best = list(centers)
            return
        if len(centers) + math.ceil(uncovered.size / ball_size) >= len(best):
            return
        target = int(uncovered[0])
        candidates = [0] if not centers else sorted(
            {target ^ int(s) for s in ball},
            key=lambda c: (-int(np.count_nonzero(~covered[c ^ ball])), c),
        )
        for c in candidates:
            grown = covered.copy()
            grown[c ^ ball] = True
            search(grown, centers + [c])

    search(np.zeros(universe, dtype=bool), [])
    logger.debug("epsilon-net search visited %d nodes", nodes)
    return best


def _greedy_cover(universe: int, ball: np.ndarray) -> List[int]:
    covered = np.zeros(universe, dtype=bool)
    centers: List[int] = []
    while not covered.all():
        target = int(np.flatnonzero(~covered)[0])
        c = max(
            (target ^ int(s) for s in ball),
            key=lambda c: (int(np.count_nonzero(~covered[c ^ ball])), -c),
        )
        covered[c ^ ball] = True
        centers.append(c)
    return centers


def epsilon_net_size(
    mu: Measure,
    algebra: FiniteSetAlgebra,
    eps,
    exact_cap: int = NET_EXACT_ATOMS,
    node_budget: int = NET_NODE_BUDGET,
) -> NetResult:
    """
    Fewest open d_mu-balls of radius eps (strict) covering the whole algebra.

    Null atoms are collapsed first (they do not move d_mu). Up to `exact_cap`
    positive atoms the answer is exact; beyond that, or when the search
    exceeds `node_budget` nodes, a greedy upper bound is returned with
    exact=False.
    """
    _check_algebra(mu, algebra)
    eps = as_rational(eps, pointer="/eps")
    if eps <= 0:
        raise ValidationError(f"eps must be positive, got {eps}", pointer="/eps")
    if eps > 1:
        return NetResult(eps, 1, [algebra.zero()], True)

    weights = atom_weights(mu)
    positive = [i for i, w in enumerate(weights) if w > 0]
    den = math.lcm(*(weights[i].denominator for i in positive))
    masses = _subset_masses([int(weights[i] * den) for i in positive])
    threshold = math.ceil(eps * den)
    ball = np.flatnonzero(masses < threshold)
    universe = 1 << len(positive)

    greedy = _greedy_cover(universe, ball)
    exact = False
    centers = greedy
    if len(positive) <= exact_cap:
        try:
            centers = _cover_search(universe, ball, greedy, node_budget)
            exact = True
        except _BudgetExhausted:
            logger.warning("epsilon-net search exceeded %d nodes; reporting greedy bound", node_budget)
    else:
        logger.warning("%d positive atoms exceed exact cap %d; reporting greedy bound",
                       len(positive), exact_cap)

    def lift(c: int) -> AtomSet:
        return algebra.element(sum(1 << positive[b] for b in range(len(positive)) if c >> b & 1))

    return NetResult(eps, len(centers), [lift(c) for c in centers], exact)


def epsilon_net_profile(mu: Measure, algebra: FiniteSetAlgebra, eps_list: Sequence, **kwargs) -> List[NetResult]:
    """epsilon_net_size for each radius in turn."""
    return [epsilon_net_size(mu, algebra, eps, **kwargs) for eps in eps_list]


# ========== Centering Measures ==========

def measure_from_centering(algebra: FiniteSetAlgebra, ultrafilters: Sequence[Union[int, str]]) -> Measure:
    """
    mu = sum over n of delta(U_n) / 2^(n+1), truncated to the given list.

    The last term's weight is doubled so the total mass is exactly 1.
    Atoms may repeat.

    Example:
        [a, b, a] -> a: 1/2 + 1/8 + 1/8 = 3/4, b: 1/4
    """
    if not ultrafilters:
        raise ValidationError("at least one ultrafilter is needed", pointer="/ultrafilters")
    weights = [Fraction(0)] * algebra.atom_count
    for n, atom in enumerate(ultrafilters):
        weights[algebra.index_of(atom)] += Fraction(1, 2 ** (n + 1))
    last = len(ultrafilters)
    weights[algebra.index_of(ultrafilters[-1])] += Fraction(1, 2 ** last)
    return Measure.from_weights(algebra, weights)


def is_atomless_at(mu: Measure, eps, max_depth: int = PARTITION_DEPTH_LIMIT) -> bool:
    """True iff atomless_partition(mu, eps) succeeds."""
    return atomless_partition(mu, eps, max_depth).success
