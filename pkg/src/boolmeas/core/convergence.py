"""
Pointwise vs uniform convergence of homomorphism sequences.

Two built-in sequences converge pointwise but not uniformly:

- bit-flip  : member n flips binary digit n after a base homomorphism on
              the Cantor algebra; the limit is the base. An element with
              support in {0..s} is fixed by every member n > s, while
              member n moves C_n to its complement (distance 1).
- principal : member n is the two-valued homomorphism of the principal
              ultrafilter at n on the finite-cofinite algebra; the limit
              is the cofinite ultrafilter's homomorphism.

The constant sequence is the trivial baseline.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import ValidationError
from .algebras import (
    CantorAlgebra,
    Element,
    FiniteCofiniteAlgebra,
    FiniteSetAlgebra,
)
from .interval_model import fn_distance
from .names import Homomorphism

logger = logging.getLogger(__name__)

SEQUENCE_KINDS = ("bit-flip", "principal", "constant")


@dataclass(frozen=True)
class HomSequence:
    """
    kind  : 'bit-flip', 'principal' or 'constant'
    base  : the base homomorphism (bit-flip and constant)
    limit : set from the kind
    """

    kind: str
    base: Optional[Homomorphism] = None
    limit: Optional[Homomorphism] = field(default=None, init=False)

    def __post_init__(self):
        if self.kind not in SEQUENCE_KINDS:
            raise ValidationError(f"unknown sequence kind {self.kind!r}; expected one of {SEQUENCE_KINDS}",
                                  pointer="/sequence/kind")
        if self.kind == "principal":
            object.__setattr__(self, "limit", Homomorphism.cofinite_limit())
            return
        if self.base is None:
            raise ValidationError(f"a {self.kind} sequence needs a base homomorphism", pointer="/sequence/base")
        if self.kind == "bit-flip" and not isinstance(self.base.domain, CantorAlgebra):
            raise ValidationError("bit-flip sequences need a base on the Cantor algebra", pointer="/sequence/base")
        object.__setattr__(self, "limit", self.base)

    @classmethod
    def bit_flip(cls, base: Optional[Homomorphism] = None) -> "HomSequence":
        return cls("bit-flip", base or Homomorphism.digit_identity())

    @classmethod
    def principal(cls) -> "HomSequence":
        return cls("principal")

    @classmethod
    def constant(cls, base: Homomorphism) -> "HomSequence":
        return cls("constant", base)

    @property
    def domain(self):
        return self.limit.domain

    def member(self, n: int) -> Homomorphism:
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValidationError(f"member index must be a nonnegative integer, got {n!r}")
        if self.kind == "bit-flip":
            return replace(self.base, flips=self.base.flips + (n,))
        if self.kind == "principal":
            return Homomorphism.principal(n)
        return self.base

    def to_dict(self) -> dict:
        data = {"kind": self.kind}
        if self.base is not None:
            data["base"] = self.base.to_dict()
        return data


def sequence_member(seq: HomSequence, n: int) -> Homomorphism:
    return seq.member(n)


def pointwise_report(seq: HomSequence, a: Element, N: int) -> List[Fraction]:
    """[d(member n (a), limit(a)) for n = 0..N]."""
    _check_bound(N)
    target = seq.limit.evaluate(a)
    return [fn_distance(seq.member(n).evaluate(a), target) for n in range(N + 1)]


def uniform_defect(seq: HomSequence, n: int, test_family: Sequence[Element]) -> Tuple[Fraction, Element]:
    """Largest distance between member n and the limit over the family, with the first element attaining it."""
    if not test_family:
        raise ValidationError("test family must be nonempty", pointer="/family")
    member = seq.member(n)
    best: Optional[Tuple[Fraction, Element]] = None
    for a in test_family:
        d = fn_distance(member.evaluate(a), seq.limit.evaluate(a))
        if best is None or d > best[0]:
            best = (d, a)
    return best


def _check_bound(N: int) -> None:
    if not isinstance(N, int) or isinstance(N, bool) or N < 0:
        raise ValidationError(f"N must be a nonnegative integer, got {N!r}", pointer="/N")


def canonical_family(seq: HomSequence, N: int) -> List[Element]:
    """
    C_0 .. C_N on the Cantor algebra, {0} .. {N} and their complements on
    the finite-cofinite algebra, the atoms on a finite set algebra.
    """
    domain = seq.domain
    if isinstance(domain, CantorAlgebra):
        return [domain.generator(k) for k in range(N + 1)]
    if isinstance(domain, FiniteCofiniteAlgebra):
        singletons = [domain.singleton(k) for k in range(N + 1)]
        return singletons + [~s for s in singletons]
    if isinstance(domain, FiniteSetAlgebra):
        return [domain.atom(i) for i in range(domain.atom_count)]
    raise ValidationError(f"unsupported domain {type(domain).__name__}")


@dataclass(frozen=True)
class DefectRow:
    n: int
    defect: Fraction
    witness: Element


def defect_profile(seq: HomSequence, N: int) -> List[DefectRow]:
    """uniform_defect for n = 0..N over the canonical family of size bound N."""
    _check_bound(N)
    family = canonical_family(seq, N)
    return [DefectRow(n, *uniform_defect(seq, n, family)) for n in range(N + 1)]


@dataclass(frozen=True)
class ConvergenceVerdict:
    """
    pointwise     : every test element of support <= s is at distance 0
                    from the limit for all s < n <= N
    stabilization : element -> least k with distance 0 for all k <= n <= N
    uniform       : no n in (s, N] has defect >= 1/2 on the canonical family.
                    The window is the tail past the support bound only;
                    members n <= s are never defect witnesses, so a
                    sequence whose early members differ from the limit
                    but agree from s+1 on is reported uniform.
    """

    pointwise: bool
    uniform: bool
    stabilization: Dict[str, int]
    defect_witnesses: List[DefectRow]
    s: int
    N: int

    @property
    def nontrivial(self) -> bool:
        return self.pointwise and not self.uniform

    def to_dict(self) -> dict:
        return {
            "pointwise": self.pointwise,
            "uniform": self.uniform,
            "nontrivial": self.nontrivial,
            "s": self.s,
            "N": self.N,
            "stabilization": dict(self.stabilization),
            "defect_witnesses": [
                {"n": row.n, "element": str(row.witness),
                 "defect": [row.defect.numerator, row.defect.denominator]}
                for row in self.defect_witnesses
            ],
        }


def nontriviality_verdict(seq: HomSequence, s: int, N: int) -> ConvergenceVerdict:
    """
    Pointwise stabilization of the support-<= s test elements, and the
    uniform defect over the tail s < n <= N.

    Raises:
        ValidationError: N <= s
    """
    _check_bound(s)
    _check_bound(N)
    if N <= s:
        raise ValidationError(f"N must exceed the support bound s, got s={s}, N={N}", pointer="/N")

    stabilization: Dict[str, int] = {}
    pointwise = True
    for a in canonical_family(seq, s):
        distances = pointwise_report(seq, a, N)
        k = N + 1
        while k > 0 and distances[k - 1] == 0:
            k -= 1
        stabilization[str(a)] = k
        if k > s + 1:
            pointwise = False

    family = canonical_family(seq, N)
    witnesses = []
    for n in range(s + 1, N + 1):
        defect, witness = uniform_defect(seq, n, family)
        if defect >= Fraction(1, 2):
            witnesses.append(DefectRow(n, defect, witness))
    verdict = ConvergenceVerdict(pointwise, not witnesses, stabilization, witnesses, s, N)
    logger.debug("convergence verdict for %s: pointwise=%s uniform=%s",
                 seq.kind, verdict.pointwise, verdict.uniform)
    return verdict
