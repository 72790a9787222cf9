"""
Homomorphisms and Names - boolmeas v0.1

A Homomorphism sends an algebra presentation into the interval model.
Read as a name for an ultrafilter, phi(A) is the set of points at which
"A belongs to the ultrafilter" holds; a SamplePoint x turns the name into
the concrete ultrafilter {A : x in phi(A)}.

DESIGN PHILOSOPHY:
------------------
- A homomorphism is determined by finitely many generator images plus a
  tail rule for the Cantor generators it does not list
- Extension is checked once, at construction, with sikorski_check
- Post-composition with the measure preserving maps of [0,1) (shift
  preimages and bit flips) is a field of the homomorphism, so shifted and
  flipped members of a sequence are ordinary homomorphisms

USAGE:
------
    A = FiniteSetAlgebra.of_size(3)
    mu = Measure.from_weights(A, ["1/2", "1/3", "1/6"])
    phi = metric_embedding(A, mu)
    oracle = name_at_point(phi, SamplePoint(Fraction(3, 5)))
    oracle.accepted_atom()      # 'b'
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ..errors import CapExceededError, ValidationError
from .algebras import (
    AtomSet,
    CantorAlgebra,
    CantorClopen,
    FiniteCofinite,
    FiniteCofiniteAlgebra,
    FiniteSetAlgebra,
    Presentation,
    cantor_to_interval,
    require_member,
    sikorski_check,
)
from .interval_model import (
    SHIFT_PIECE_LIMIT,
    ClopenSet,
    DyadicCylinder,
    as_rational,
    bit_flip,
    join_all,
    lambda_measure,
    regions,
    shift_preimage,
)
from .measures import Measure, atom_weights, is_strictly_positive, atomless_partition, PartitionResult
from .sampling import BitStream, sample_rationals

logger = logging.getLogger(__name__)

TAIL_RULES = ("digit-identity", "zero", "one")

# digits a stream point may draw before membership is declared undecidable
POINT_BIT_CAP = 256


@lru_cache(maxsize=64)
def _digit_image(n: int) -> ClopenSet:
    return cantor_to_interval(CantorAlgebra().generator(n))


# ============================================================================
# HOMOMORPHISMS
# ============================================================================

@dataclass(frozen=True)
class Homomorphism:
    """
    A Boolean homomorphism from `domain` into ClopenSet.

    images : atom index -> image    (FiniteSetAlgebra, every atom listed)
             generator n -> image   (CantorAlgebra, others follow `tail`)
             point n -> image of {n} (FiniteCofiniteAlgebra, others go to 0)
    shift  : evaluate, then take the preimage under T^shift
    flips  : then flip these binary digits, in order

    Raises:
        ValidationError: the assignment does not extend (Sikorski criterion)
    """

    domain: Presentation
    images: Mapping[int, ClopenSet] = field(default_factory=dict)
    tail: str = "digit-identity"
    shift: int = 0
    flips: Tuple[int, ...] = ()
    shift_limit: int = field(default=SHIFT_PIECE_LIMIT, compare=False)

    def __post_init__(self):
        if self.tail not in TAIL_RULES:
            raise ValidationError(f"unknown tail rule {self.tail!r}; expected one of {TAIL_RULES}",
                                  pointer="/tail")
        if not isinstance(self.shift, int) or self.shift < 0:
            raise ValidationError(f"shift must be a nonnegative integer, got {self.shift!r}",
                                  pointer="/shift")
        object.__setattr__(self, "flips", tuple(self.flips))
        verdict = sikorski_check(self.domain, self.images)
        if not verdict.extendable:
            raise ValidationError(
                f"assignment does not extend to a homomorphism: {verdict.counterexample} "
                f"must vanish but maps to {verdict.witness}",
                pointer="/images",
            )
        object.__setattr__(self, "images", verdict.images)

    # ----- constructors -----

    @classmethod
    def digit_identity(cls) -> "Homomorphism":
        """The canonical name on the Cantor algebra: C_n -> {x : digit n of x is 1}."""
        return cls(CantorAlgebra())

    @classmethod
    def principal(cls, n: int) -> "Homomorphism":
        """Two-valued homomorphism on FiniteCofinite: A -> unit iff n in A."""
        return cls(FiniteCofiniteAlgebra(), {n: ClopenSet.unit()})

    @classmethod
    def cofinite_limit(cls) -> "Homomorphism":
        """Two-valued homomorphism of the cofinite ultrafilter: finite sets -> 0."""
        return cls(FiniteCofiniteAlgebra(), {})

    # ----- evaluation -----

    def generator_image(self, n: int) -> ClopenSet:
        """Image of C_n before shift and flips."""
        if n in self.images:
            return self.images[n]
        if self.tail == "digit-identity":
            return _digit_image(n)
        return ClopenSet.unit() if self.tail == "one" else ClopenSet.zero()

    def _raw(self, a) -> ClopenSet:
        if isinstance(self.domain, FiniteSetAlgebra):
            return join_all(self.images[i] for i in a.atoms())
        if isinstance(self.domain, CantorAlgebra):
            if not a.support:
                return ClopenSet.unit() if a.patterns else ClopenSet.zero()
            admissible = {tuple(int(bit) for bit in p) for p in a.patterns}
            pieces = regions([self.generator_image(n) for n in a.support])
            return join_all(
                region for signs, region in pieces.items()
                if tuple(int(s) for s in signs) in admissible
            )
        finite = join_all(self.images[n] for n in a.finite_part if n in self.images)
        return ~finite if a.cofinite else finite

    def evaluate(self, a) -> ClopenSet:
        """
        phi(a) by structural recursion.

        Raises:
            ForeignElementError: a is not in the domain
        """
        require_member(self.domain, a)
        image = self._raw(a)
        if self.shift:
            image = shift_preimage(image, self.shift, limit=self.shift_limit)
        for digit in self.flips:
            image = bit_flip(image, digit)
        return image

    __call__ = evaluate

    # ----- serialization -----

    def to_dict(self) -> dict:
        if isinstance(self.domain, FiniteSetAlgebra):
            domain = {"kind": "finite", **self.domain.to_dict()}
            keys = self.domain.atom_labels
        else:
            domain = self.domain.to_dict()
            keys = None
        data = {
            "domain": domain,
            "images": {
                (keys[k] if keys else str(k)): image.to_json() for k, image in self.images.items()
            },
            "tail": self.tail,
        }
        if self.shift:
            data["shift"] = self.shift
        if self.flips:
            data["flips"] = list(self.flips)
        return data

    @classmethod
    def from_dict(cls, data: Mapping, pointer: str = "", shift_limit: int = SHIFT_PIECE_LIMIT) -> "Homomorphism":
        if not isinstance(data, Mapping):
            raise ValidationError("homomorphism must be an object", pointer=pointer or "/")
        domain = parse_domain(data.get("domain"), pointer=f"{pointer}/domain")
        raw_images = data.get("images", {})
        if not isinstance(raw_images, Mapping):
            raise ValidationError("images must be an object", pointer=f"{pointer}/images")
        images = {
            key: ClopenSet.from_json(value, pointer=f"{pointer}/images/{key}")
            for key, value in raw_images.items()
        }
        flips = data.get("flips", [])
        if not isinstance(flips, list) or not all(isinstance(d, int) and d >= 0 for d in flips):
            raise ValidationError("flips must be a list of nonnegative integers", pointer=f"{pointer}/flips")
        return cls(
            domain,
            images,
            tail=data.get("tail", "digit-identity"),
            shift=data.get("shift", 0),
            flips=tuple(flips),
            shift_limit=shift_limit,
        )


def parse_domain(data, pointer: str = "/domain") -> Presentation:
    """{"kind": "finite", "atoms": [...]}, {"kind": "cantor"} or {"kind": "finite-cofinite"}."""
    if not isinstance(data, Mapping):
        raise ValidationError("domain must be an object", pointer=pointer)
    kind = data.get("kind", "finite" if "atoms" in data else None)
    if kind == "finite":
        atoms = data.get("atoms")
        if isinstance(atoms, int) and not isinstance(atoms, bool):
            return FiniteSetAlgebra.of_size(atoms)
        if not isinstance(atoms, list):
            raise ValidationError("atoms must be a list of labels or a count", pointer=f"{pointer}/atoms")
        return FiniteSetAlgebra(tuple(atoms))
    if kind == "cantor":
        return CantorAlgebra()
    if kind == "finite-cofinite":
        return FiniteCofiniteAlgebra()
    raise ValidationError(f"unknown domain kind {kind!r}", pointer=f"{pointer}/kind")


def evaluate_hom(phi: Homomorphism, a) -> ClopenSet:
    return phi.evaluate(a)


def induced_measure(phi: Homomorphism) -> Measure:
    """mu(A) = lambda(phi(A))."""
    return Measure.induced(phi)


def metric_embedding(algebra: FiniteSetAlgebra, mu: Measure) -> Homomorphism:
    """
    Injective homomorphism with lambda o phi = mu.

    Atom i goes to [w_0 + ... + w_(i-1), w_0 + ... + w_i).

    Raises:
        ValidationError: mu has a null atom (named in the message and pointer)
    """
    report = is_strictly_positive(mu, algebra)
    if not report.positive:
        raise ValidationError(
            f"measure is not strictly positive: atom {report.null_label} has mass 0",
            pointer=f"/weights/{report.null_atom}",
        )
    images = {}
    cumulative = Fraction(0)
    for i, w in enumerate(atom_weights(mu)):
        images[i] = ClopenSet.interval(cumulative, cumulative + w)
        cumulative += w
    return Homomorphism(algebra, images)


# ============================================================================
# POINT SEMANTICS
# ============================================================================

class SamplePoint:
    """
    A point of [0,1): an exact rational, or the real whose binary digits
    come from a BitStream.

    Membership of a stream point is decided by drawing digits until the
    dyadic cell they pin down lies inside or outside the set.
    """

    def __init__(self, value=None, stream: Optional[BitStream] = None, bit_cap: int = POINT_BIT_CAP):
        if (value is None) == (stream is None):
            raise ValidationError("a sample point needs exactly one of value or stream")
        if value is not None:
            value = as_rational(value, pointer="/point")
            if not 0 <= value < 1:
                raise ValidationError(f"sample point must lie in [0,1), got {value}", pointer="/point")
        self.value: Optional[Fraction] = value
        self.stream = stream
        self.bit_cap = bit_cap

    @classmethod
    def seeded(cls, seed: int, bit_cap: int = POINT_BIT_CAP) -> "SamplePoint":
        return cls(stream=BitStream.seeded(seed), bit_cap=bit_cap)

    def digits(self, n: int) -> List[int]:
        """The first n binary digits (digit 0 first after the point)."""
        if self.stream is not None:
            return [int(b) for b in self.stream.bits(n)]
        out, y = [], self.value
        for _ in range(n):
            y *= 2
            bit = int(y >= 1)
            out.append(bit)
            y -= bit
        return out

    def in_set(self, c: ClopenSet) -> bool:
        """
        Raises:
            CapExceededError: a stream point still straddles a boundary after bit_cap digits
        """
        if self.value is not None:
            return c.contains(self.value)
        if c.is_zero() or c.is_unit():
            return c.is_unit()
        index = 0
        for depth, bit in enumerate(self.stream.bits(self.bit_cap).tolist(), start=1):
            index = 2 * index + bit
            cell = DyadicCylinder(depth, index).to_clopen()
            if cell <= c:
                return True
            if (cell & c).is_zero():
                return False
        raise CapExceededError("sample point digits", self.bit_cap)

    def to_dict(self) -> dict:
        if self.value is not None:
            return {"rational": [self.value.numerator, self.value.denominator]}
        return self.stream.describe()

    @classmethod
    def from_dict(cls, data, pointer: str = "/point", bit_cap: int = POINT_BIT_CAP) -> "SamplePoint":
        if isinstance(data, Mapping) and "rational" in data:
            return cls(as_rational(data["rational"], pointer=f"{pointer}/rational"))
        if isinstance(data, Mapping) and "seed" in data:
            seed = data["seed"]
            if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
                raise ValidationError(f"seed must be a nonnegative integer, got {seed!r}",
                                      pointer=f"{pointer}/seed")
            return cls.seeded(seed, bit_cap=bit_cap)
        raise ValidationError("expected {rational: [num, den]} or {seed: int}", pointer=pointer)

    def __str__(self) -> str:
        if self.value is not None:
            return f"{self.value.numerator}/{self.value.denominator}"
        return f"stream{self.stream.describe()}"


class UltrafilterOracle:
    """A -> (x in phi(A)): the ultrafilter a name determines at a point."""

    def __init__(self, phi: Homomorphism, point: SamplePoint):
        self.phi = phi
        self.point = point

    def __call__(self, a) -> bool:
        return self.point.in_set(self.phi.evaluate(a))

    def accepted_atom(self) -> Optional[str]:
        """The label of the atom the ultrafilter contains (finite domains only)."""
        domain = self.phi.domain
        if not isinstance(domain, FiniteSetAlgebra):
            raise ValidationError("accepted_atom needs a finite set algebra domain")
        for i in range(domain.atom_count):
            if self(domain.atom(i)):
                return domain.atom_labels[i]
        return None


def name_at_point(phi: Homomorphism, x: SamplePoint) -> UltrafilterOracle:
    return UltrafilterOracle(phi, x)


def sample_points(seed: int, count: int, precision: int = 62) -> List[SamplePoint]:
    """Seeded dyadic rational points for Monte Carlo checks."""
    return [SamplePoint(q) for q in sample_rationals(seed, count, precision)]


# ============================================================================
# PURELY ATOMIC STRUCTURE
# ============================================================================

@dataclass(frozen=True)
class AntichainReport:
    """p_n = phi(atom n); pairwise disjoint with total length 1."""

    labels: List[str]
    parts: List[ClopenSet]
    lengths: List[Fraction]
    weights: List[Fraction]

    @property
    def total(self) -> Fraction:
        return sum(self.lengths, Fraction(0))

    def is_antichain(self) -> bool:
        return all(
            (p & q).is_zero()
            for i, p in enumerate(self.parts)
            for q in self.parts[i + 1:]
        )


def purely_atomic_antichain(phi: Homomorphism) -> AntichainReport:
    """The images of the atoms, their lengths, and the induced atom weights."""
    domain = phi.domain
    if not isinstance(domain, FiniteSetAlgebra):
        raise ValidationError("purely_atomic_antichain needs a finite set algebra domain")
    parts = [phi.evaluate(domain.atom(i)) for i in range(domain.atom_count)]
    return AntichainReport(
        labels=list(domain.atom_labels),
        parts=parts,
        lengths=[lambda_measure(p) for p in parts],
        weights=list(atom_weights(induced_measure(phi))),
    )


def antichain_ladder(mu: Measure, n: int) -> PartitionResult:
    """
    A maximal antichain whose parts all have measure < 1/n.

    The result is atomless_partition(mu, 1/n); on failure it carries the
    heavy atom as witness.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"ladder index must be a positive integer, got {n!r}", pointer="/n")
    return atomless_partition(mu, Fraction(1, n))


# ============================================================================
# NAMES THAT AGREE IN MEASURE
# ============================================================================

def indistinguishable_pair(
    algebra: FiniteSetAlgebra, atom_i, atom_j, depth: int = 1
) -> Tuple[Homomorphism, Homomorphism]:
    """
    Two names inducing the same measure (delta_i + delta_j) / 2 whose
    ultrafilters differ at every point.

    atom_i takes the even depth-`depth` cells and atom_j the odd ones in
    the first name; the second name swaps them. Every other atom goes to 0.
    """
    i, j = algebra.index_of(atom_i), algebra.index_of(atom_j)
    if i == j:
        raise ValidationError("the two atoms must differ")
    if not isinstance(depth, int) or depth < 1:
        raise ValidationError(f"depth must be a positive integer, got {depth!r}", pointer="/depth")
    even = join_all(DyadicCylinder(depth, k).to_clopen() for k in range(0, 2 ** depth, 2))
    odd = ~even
    base = {k: ClopenSet.zero() for k in range(algebra.atom_count)}
    return (
        Homomorphism(algebra, {**base, i: even, j: odd}),
        Homomorphism(algebra, {**base, i: odd, j: even}),
    )


def disagreement(phi0: Homomorphism, phi1: Homomorphism, x: SamplePoint) -> List[AtomSet]:
    """Atoms on which the two ultrafilters at x disagree."""
    if phi0.domain != phi1.domain or not isinstance(phi0.domain, FiniteSetAlgebra):
        raise ValidationError("disagreement needs two names on the same finite set algebra")
    u0, u1 = name_at_point(phi0, x), name_at_point(phi1, x)
    domain = phi0.domain
    return [domain.atom(k) for k in range(domain.atom_count) if u0(domain.atom(k)) != u1(domain.atom(k))]


@dataclass(frozen=True)
class AvoidingResult:
    found: bool
    clopen: Optional[CantorClopen]
    measure: Fraction


def avoiding_clopen(phi: Homomorphism, prefix: Sequence[int]) -> AvoidingResult:
    """
    A clopen C of the Cantor algebra missing the ground real with digits
    `prefix`, yet charged by the induced measure.

    C is the complement of the prefix cylinder. It fails only when the
    induced measure puts all of its mass on that cylinder.
    """
    if not isinstance(phi.domain, CantorAlgebra):
        raise ValidationError("avoiding_clopen needs a homomorphism on the Cantor algebra")
    prefix = list(prefix)
    if not prefix or any(bit not in (0, 1) for bit in prefix):
        raise ValidationError(f"prefix must be a nonempty list of binary digits, got {prefix!r}",
                              pointer="/prefix")
    cylinder = CantorClopen.build(range(len(prefix)), [tuple(prefix)])
    clopen = ~cylinder
    mass = lambda_measure(phi.evaluate(clopen))
    return AvoidingResult(mass > 0, clopen if mass > 0 else None, mass)
