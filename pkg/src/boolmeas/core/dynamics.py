"""
Shift Dynamics - boolmeas v0.1

The doubling map T(x) = 2x mod 1 preserves lambda and is mixing: for
unions of dyadic intervals the product law
lambda(T^-n a meet b) = lambda(a) lambda(b) holds exactly once n reaches
the dyadic depth of b.

WHAT LIVES HERE:
----------------
- mixing_table            exact lambda(T^-n a meet b) for n = 0..N
- CenteringSequence       rho_n = T^-n o psi for a metric embedding psi
- centering_witness       least n with rho_n(a) meeting a cylinder
- centering_cover_report  the witness table over atoms x cylinders
- symmetry_check          chunk-wise meet-vanishing pattern of two names
- swap_automorphism       the involution exchanging the two names
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Union

from ..errors import CapExceededError, ValidationError
from .algebras import CantorAlgebra, Chunk, FiniteSetAlgebra, enumerate_chunks
from .interval_model import (
    ClopenSet,
    DyadicCylinder,
    SignVector,
    join_all,
    orbit_point,
    preimage_meet_measure,
    regions,
)
from .measures import Measure, atom_weights
from .names import Homomorphism, SamplePoint, metric_embedding, name_at_point

logger = logging.getLogger(__name__)

WITNESS_CAP = 64
# symmetry_check compares (3^m - 1)^2 chunk pairs
MAX_SUPPORT = 6


def mixing_table(a: ClopenSet, b: ClopenSet, N: int) -> List[Fraction]:
    """
    [lambda(T^-n a meet b) for n = 0..N], computed in closed form.

    Example:
        >>> half = ClopenSet.interval(0, Fraction(1, 2))
        >>> [str(v) for v in mixing_table(half, half, 2)]
        ['1/2', '1/4', '1/4']
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 0:
        raise ValidationError(f"N must be a nonnegative integer, got {N!r}", pointer="/N")
    return [preimage_meet_measure(a, n, b) for n in range(N + 1)]


# ============================================================================
# CENTERING SEQUENCES
# ============================================================================

@dataclass(frozen=True)
class CenteringSequence:
    """rho_n = T^-n o base. Each rho_n induces the same measure as base."""

    base: Homomorphism

    def __post_init__(self):
        if self.base.shift or self.base.flips:
            raise ValidationError("centering base must not be shifted or flipped")

    @classmethod
    def from_measure(cls, algebra: FiniteSetAlgebra, mu: Measure) -> "CenteringSequence":
        return cls(metric_embedding(algebra, mu))

    def member(self, n: int) -> Homomorphism:
        return replace(self.base, shift=n)


def _least_witness(image: ClopenSet, cell: ClopenSet, N: int) -> Optional[int]:
    for n in range(N + 1):
        if preimage_meet_measure(image, n, cell) > 0:
            return n
    return None


def centering_witness(seq: CenteringSequence, a, p: DyadicCylinder, N: int = WITNESS_CAP) -> int:
    """
    Least n <= N with rho_n(a) meet p nonzero.

    A nonempty finite union of half-open intervals has positive length,
    so the meet is nonzero exactly when its measure is positive.

    Raises:
        ValidationError: base(a) is zero
        CapExceededError: no witness up to N
    """
    image = seq.base.evaluate(a)
    if image.is_zero():
        raise ValidationError(f"element {a} has zero image; no shift can meet a cylinder")
    n = _least_witness(image, p.to_clopen(), N)
    if n is None:
        raise CapExceededError(f"centering witness for {p}", N)
    return n


@dataclass(frozen=True)
class CoverRow:
    atom: str
    cylinder: DyadicCylinder
    witness: Optional[int]


@dataclass(frozen=True)
class CoverReport:
    depth: int
    rows: List[CoverRow]

    @property
    def max_witness(self) -> Optional[int]:
        found = [row.witness for row in self.rows if row.witness is not None]
        return max(found) if found else None

    @property
    def cap_hits(self) -> List[CoverRow]:
        return [row for row in self.rows if row.witness is None]

    @property
    def complete(self) -> bool:
        return not self.cap_hits


def centering_cover_report(algebra: FiniteSetAlgebra, mu: Measure, g: int, N: int = WITNESS_CAP) -> CoverReport:
    """
    Witness table for every atom and every depth-g cylinder.

    Weights must be dyadic: then each atom image has dyadic endpoints and
    every witness is at most g.
    """
    if not isinstance(g, int) or isinstance(g, bool) or g < 0:
        raise ValidationError(f"depth must be a nonnegative integer, got {g!r}", pointer="/depth")
    for i, w in enumerate(atom_weights(mu)):
        if w.denominator & (w.denominator - 1):
            raise ValidationError(f"weight {w} is not dyadic", pointer=f"/weights/{i}")
    seq = CenteringSequence.from_measure(algebra, mu)
    rows = []
    for i in range(algebra.atom_count):
        image = seq.base.evaluate(algebra.atom(i))
        for index in range(2 ** g):
            cylinder = DyadicCylinder(g, index)
            rows.append(CoverRow(algebra.atom_labels[i], cylinder,
                                 _least_witness(image, cylinder.to_clopen(), N)))
    report = CoverReport(g, rows)
    if not report.complete:
        logger.warning("%d cover cells found no witness up to %d", len(report.cap_hits), N)
    return report


def itinerary(seq: CenteringSequence, x: SamplePoint, N: int) -> List[Optional[str]]:
    """Labels of the atoms rho_0 .. rho_N accept at x."""
    domain = seq.base.domain
    if not isinstance(domain, FiniteSetAlgebra):
        raise ValidationError("itinerary needs a finite set algebra domain")
    images = [seq.base.evaluate(domain.atom(i)) for i in range(domain.atom_count)]
    visited: List[Optional[str]] = []
    for n in range(N + 1):
        if x.value is not None:
            y = orbit_point(x.value, n)
            label = next((domain.atom_labels[i] for i, img in enumerate(images) if img.contains(y)), None)
        else:
            label = name_at_point(seq.member(n), x).accepted_atom()
        visited.append(label)
    return visited


def centering_measure(seq: CenteringSequence, algebra: FiniteSetAlgebra, N: int) -> Measure:
    """
    sum over n <= N of (lambda o rho_n) / 2^(n+1), last weight doubled.

    Each rho_n induces the base measure, so the result equals it.
    """
    if not isinstance(N, int) or N < 0:
        raise ValidationError(f"N must be a nonnegative integer, got {N!r}", pointer="/N")
    unit = ClopenSet.unit()
    images = [seq.base.evaluate(algebra.atom(i)) for i in range(algebra.atom_count)]
    weights = [Fraction(0)] * algebra.atom_count
    for n in range(N + 1):
        coefficient = Fraction(1, 2 ** (n + 1)) * (2 if n == N else 1)
        for i, image in enumerate(images):
            weights[i] += coefficient * preimage_meet_measure(image, n, unit)
    return Measure.from_weights(algebra, weights)


# ============================================================================
# CHUNK SYMMETRY AND THE SWAP AUTOMORPHISM
# ============================================================================

@dataclass(frozen=True)
class Violation:
    """
    side 0: phiA(first) meet phiB(second) is nonzero, the swapped meet is zero
    side 1: the other way round
    """

    first: Chunk
    second: Chunk
    side: int

    def to_dict(self) -> dict:
        return {"A": str(self.first), "B": str(self.second), "side": self.side}


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    m: int
    pairs_checked: int
    violations: List[Violation] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "m": self.m,
            "pairs_checked": self.pairs_checked,
            "violations": [v.to_dict() for v in self.violations],
        }


def _check_cantor(*homs: Homomorphism) -> None:
    for phi in homs:
        if not isinstance(phi.domain, CantorAlgebra):
            raise ValidationError("chunk symmetry needs homomorphisms on the Cantor algebra")


def _check_support(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValidationError(f"support bound must be a positive integer, got {m!r}", pointer="/m")
    if m > MAX_SUPPORT:
        raise CapExceededError("chunk support bound", MAX_SUPPORT, m)


def symmetry_check(phiA: Homomorphism, phiB: Homomorphism, m: int) -> SymmetryReport:
    """
    phiA(A) meet phiB(B) = 0  <=>  phiB(A) meet phiA(B) = 0  for all chunks A, B
    with support inside {0, ..., m-1}. Every violating ordered pair is listed.
    """
    _check_cantor(phiA, phiB)
    _check_support(m)
    chunks = enumerate_chunks(m)
    image_a = [phiA.evaluate(c.to_clopen()) for c in chunks]
    image_b = [phiB.evaluate(c.to_clopen()) for c in chunks]
    violations = []
    for i, j in itertools.product(range(len(chunks)), repeat=2):
        forward = (image_a[i] & image_b[j]).is_zero()
        backward = (image_b[i] & image_a[j]).is_zero()
        if forward != backward:
            violations.append(Violation(chunks[i], chunks[j], 0 if backward else 1))
    logger.debug("symmetry check over %d chunk pairs: %d violations", len(chunks) ** 2, len(violations))
    return SymmetryReport(not violations, m, len(chunks) ** 2, violations)


class SwapAutomorphism:
    """
    The Boolean isomorphism of the subalgebra generated by
    phiA(C_n), phiB(C_n) (n < m) that exchanges the two names.

    The subalgebra's atoms are indexed by sign vectors (u, v), u for the
    phiA generators and v for the phiB generators; the map sends the atom
    (u, v) to (v, u).
    """

    def __init__(self, phiA: Homomorphism, phiB: Homomorphism, m: int):
        self.phiA = phiA
        self.phiB = phiB
        self.m = m
        cantor = CantorAlgebra()
        generators = [phiA.evaluate(cantor.generator(n)) for n in range(m)] + [
            phiB.evaluate(cantor.generator(n)) for n in range(m)
        ]
        self.atoms: Dict[SignVector, ClopenSet] = regions(generators)
        self.keys: List[SignVector] = list(self.atoms)
        self.mapping: Dict[SignVector, SignVector] = {}
        for signs in self.keys:
            swapped = signs[m:] + signs[:m]
            if swapped not in self.atoms:
                raise ValidationError(f"swapped region {swapped} is empty; the names are not symmetric")
            self.mapping[signs] = swapped

    def decompose(self, x: ClopenSet) -> List[SignVector]:
        """
        The atoms whose join is x.

        Raises:
            ValidationError: x is not in the generated subalgebra
        """
        parts = []
        for signs, region in self.atoms.items():
            overlap = region & x
            if overlap == region:
                parts.append(signs)
            elif not overlap.is_zero():
                raise ValidationError(f"{x} is not in the subalgebra generated by the two names")
        if join_all(self.atoms[s] for s in parts) != x:
            raise ValidationError(f"{x} is not in the subalgebra generated by the two names")
        return parts

    def apply(self, x: ClopenSet) -> ClopenSet:
        return join_all(self.atoms[self.mapping[s]] for s in self.decompose(x))

    __call__ = apply

    def element(self, mask: int) -> ClopenSet:
        """The join of the atoms selected by the bits of `mask` (bit i = self.keys[i])."""
        return join_all(self.atoms[s] for i, s in enumerate(self.keys) if mask >> i & 1)

    @property
    def size(self) -> int:
        """Number of elements of the generated subalgebra."""
        return 2 ** len(self.keys)

    def is_identity(self) -> bool:
        return all(s == t for s, t in self.mapping.items())

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "atoms": len(self.keys),
            "mapping": [
                {"from": self.atoms[s].to_json(), "to": self.atoms[t].to_json()}
                for s, t in self.mapping.items()
            ],
        }


def swap_automorphism(
    phiA: Homomorphism, phiB: Homomorphism, m: int
) -> Union[SwapAutomorphism, SymmetryReport]:
    """The swap when the pair is symmetric, otherwise the obstruction report."""
    report = symmetry_check(phiA, phiB, m)
    if not report.symmetric:
        return report
    return SwapAutomorphism(phiA, phiB, m)
