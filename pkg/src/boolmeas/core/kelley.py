"""
Kelley Intersection Numbers - boolmeas v0.1

For a family F of nonzero elements of a finite set algebra:

    value(F) = max over probability measures mu of  min over A in F of mu(A)

which by LP duality equals the intersection number: the least ratio
(largest subfamily with a common atom) / (multiset size) over finite
multisets drawn from F.

LP FORMULATION:
---------------
The fractional packing problem

    maximize  sum_A u_A   subject to   sum_{A contains i} u_A <= 1  for each atom i,  u >= 0

has the origin as a feasible start. With optimum P*:

- value = 1 / P*
- its dual z (a fractional hitting set of F by atoms) gives the witness
  measure mu = z / P*
- u scaled by the least common denominator is a multiset whose ratio
  attains the value (the dual certificate)
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..errors import CapExceededError, ValidationError
from .algebras import AtomSet, FiniteSetAlgebra
from .simplex import maximize

logger = logging.getLogger(__name__)

MAX_ATOMS = 20
MAX_FAMILY = 20
MAX_MULTISET = 12
# total multisets the brute force may enumerate
MULTISET_LIMIT = 1_000_000


@dataclass(frozen=True)
class KelleyInstance:
    """
    A nonempty family of nonzero elements of a finite set algebra.

    Raises:
        ValidationError: empty family, zero member, or foreign member
        CapExceededError: more than max_atoms atoms or max_family members
    """

    algebra: FiniteSetAlgebra
    family: Tuple[AtomSet, ...]
    max_atoms: int = field(default=MAX_ATOMS, compare=False)
    max_family: int = field(default=MAX_FAMILY, compare=False)

    def __post_init__(self):
        family = tuple(self.family)
        object.__setattr__(self, "family", family)
        if not family:
            raise ValidationError("family must be nonempty", pointer="/family")
        if self.algebra.atom_count > self.max_atoms:
            raise CapExceededError("kelley atoms", self.max_atoms, self.algebra.atom_count)
        if len(family) > self.max_family:
            raise CapExceededError("kelley family size", self.max_family, len(family))
        for i, member in enumerate(family):
            if not self.algebra.contains(member):
                raise ValidationError("member is not an element of the algebra", pointer=f"/family/{i}")
            if member.is_zero():
                raise ValidationError("family members must be nonzero", pointer=f"/family/{i}")

    @classmethod
    def from_bitstrings(cls, algebra: FiniteSetAlgebra, family: Sequence[str], **caps) -> "KelleyInstance":
        return cls(algebra, tuple(algebra.parse(s, pointer=f"/family/{i}") for i, s in enumerate(family)), **caps)

    def incidence(self) -> np.ndarray:
        """atoms x members 0/1 matrix."""
        return np.array(
            [[member.bits >> i & 1 for member in self.family] for i in range(self.algebra.atom_count)],
            dtype=np.int64,
        )

    def to_dict(self) -> dict:
        return {
            "atoms": list(self.algebra.atom_labels),
            "family": [member.bitstring() for member in self.family],
        }


@dataclass(frozen=True)
class KelleyResult:
    """
    value       : max-min measure of the family
    witness     : atom weights attaining it
    certificate : family indices with repetition, and the largest number
                  of them sharing an atom; certificate_max / len(certificate) == value
    """

    value: Fraction
    witness: Tuple[Fraction, ...]
    certificate: Tuple[int, ...]
    certificate_max: int

    def to_dict(self) -> dict:
        return {
            "value": [self.value.numerator, self.value.denominator],
            "witness": [[w.numerator, w.denominator] for w in self.witness],
            "certificate": list(self.certificate),
            "certificate_max": self.certificate_max,
        }


def _max_load(incidence: np.ndarray, counts: Sequence[int]) -> int:
    return int((incidence @ np.asarray(counts, dtype=np.int64)).max())


def kelley_lp(instance: KelleyInstance) -> KelleyResult:
    """Exact value, witness measure and multiset certificate via the packing LP."""
    incidence = instance.incidence()
    atoms, members = incidence.shape
    solution = maximize(
        incidence.tolist(),
        [1] * atoms,
        [1] * members,
    )
    if solution.status != "optimal" or solution.value <= 0:
        raise ValidationError(f"packing LP ended with status {solution.status}")
    packing = solution.value
    value = 1 / packing
    witness = tuple(z / packing for z in solution.dual)

    scale = math.lcm(*(u.denominator for u in solution.x))
    counts = [int(u * scale) for u in solution.x]
    certificate = tuple(i for i, c in enumerate(counts) for _ in range(c))
    logger.debug("packing optimum %s, certificate of size %d", packing, len(certificate))
    return KelleyResult(value, witness, certificate, _max_load(incidence, counts))


@dataclass(frozen=True)
class BruteForceResult:
    value: Fraction
    multiset: Tuple[int, ...]
    max_intersecting: int
    bound: int


def intersection_number_bruteforce(
    instance: KelleyInstance, N: int, multiset_limit: int = MULTISET_LIMIT
) -> BruteForceResult:
    """
    Least (max members sharing an atom) / size over multisets of size <= N.

    Identical members are merged before enumeration. In a finite set
    algebra a subfamily has a nonzero meet iff its members share an atom,
    so the numerator is the heaviest atom load.

    Raises:
        ValidationError: N < 1
        CapExceededError: N above MAX_MULTISET, or too many multisets
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise ValidationError(f"multiset bound must be a positive integer, got {N!r}", pointer="/N")
    if N > MAX_MULTISET:
        raise CapExceededError("multiset size", MAX_MULTISET, N)

    distinct: Dict[int, int] = {}
    for i, member in enumerate(instance.family):
        distinct.setdefault(member.bits, i)
    representatives = list(distinct.values())
    incidence = instance.incidence()[:, representatives]
    f = len(representatives)
    total = sum(math.comb(k + f - 1, k) for k in range(1, N + 1))
    if total > multiset_limit:
        raise CapExceededError("multisets to enumerate", multiset_limit, total)

    best: Optional[Tuple[Fraction, Tuple[int, ...], int]] = None
    for k in range(1, N + 1):
        choices = np.array(list(itertools.combinations_with_replacement(range(f), k)), dtype=np.int64)
        counts = np.zeros((len(choices), f), dtype=np.int64)
        rows = np.repeat(np.arange(len(choices)), k)
        np.add.at(counts, (rows, choices.ravel()), 1)
        loads = (counts @ incidence.T).max(axis=1)
        row = int(np.argmin(loads))
        ratio = Fraction(int(loads[row]), k)
        if best is None or ratio < best[0]:
            multiset = tuple(representatives[j] for j in choices[row].tolist())
            best = (ratio, multiset, int(loads[row]))
    logger.debug("brute force enumerated %d multisets", total)
    return BruteForceResult(best[0], best[1], best[2], N)


@dataclass(frozen=True)
class SupportVerdict:
    value: Fraction
    witness: Tuple[Fraction, ...]
    certificate: Tuple[int, ...]
    certificate_max: int
    brute_value: Fraction
    brute_multiset: Tuple[int, ...]
    brute_bound: int
    agrees: bool

    def to_dict(self) -> dict:
        return {
            "value": [self.value.numerator, self.value.denominator],
            "witness": [[w.numerator, w.denominator] for w in self.witness],
            "certificate": list(self.certificate),
            "certificate_max": self.certificate_max,
            "brute_value": [self.brute_value.numerator, self.brute_value.denominator],
            "brute_multiset": list(self.brute_multiset),
            "brute_bound": self.brute_bound,
            "agrees": self.agrees,
        }


def supports_decision(
    algebra: FiniteSetAlgebra,
    family: Sequence[AtomSet],
    N: int = MAX_MULTISET,
    **caps,
) -> SupportVerdict:
    """Run the LP and the brute force; agrees iff they match at bound N."""
    instance = KelleyInstance(algebra, tuple(family), **caps)
    lp = kelley_lp(instance)
    brute = intersection_number_bruteforce(instance, N)
    if brute.value < lp.value:
        # weak duality
        raise AssertionError(f"brute force {brute.value} below LP value {lp.value}")
    return SupportVerdict(
        value=lp.value,
        witness=lp.witness,
        certificate=lp.certificate,
        certificate_max=lp.certificate_max,
        brute_value=brute.value,
        brute_multiset=brute.multiset,
        brute_bound=N,
        agrees=brute.value == lp.value,
    )
