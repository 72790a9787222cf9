"""
Algebra Presentations - boolmeas v0.1

Ground Boolean algebras in three concrete presentations:

- FiniteSetAlgebra : powerset of k labelled atoms, elements are bitsets (AtomSet)
- CantorAlgebra    : clopen subsets of 2^omega, elements are CantorClopen
                     (minimal support + admissible digit patterns)
- FiniteCofiniteAlgebra : finite and cofinite subsets of omega (FiniteCofinite)

plus chunks (elementary conjunctions of free generators), the digit
embedding of the Cantor algebra into the interval model, and the Sikorski
extension check for assignments into ClopenSet.

DESIGN PHILOSOPHY:
------------------
- Every element knows its presentation; mixing presentations is an error
- Every element type is canonical, so == is set equality
- Elements support &, |, ~, ^ like the interval model
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..errors import CapExceededError, ForeignElementError, ValidationError
from .interval_model import ClopenSet, DyadicCylinder, join_all

Pattern = Tuple[int, ...]

# cantor_to_interval enumerates 2^depth cylinders
CANTOR_DEPTH_LIMIT = 22


# ============================================================================
# FINITE SET ALGEBRAS
# ============================================================================

def default_labels(k: int) -> Tuple[str, ...]:
    """'a', 'b', ... for small algebras, 'x0', 'x1', ... beyond 26 atoms."""
    if k <= 26:
        return tuple(string.ascii_lowercase[:k])
    return tuple(f"x{i}" for i in range(k))


@dataclass(frozen=True)
class FiniteSetAlgebra:
    """
    The powerset of k labelled atoms.

    Example:
        >>> A = FiniteSetAlgebra.of_size(3)
        >>> str(A.atom("a") | A.atom("b"))
        '110'
    """

    atom_labels: Tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.atom_labels)
        object.__setattr__(self, "atom_labels", labels)
        if not labels:
            raise ValidationError("a finite set algebra needs at least one atom", pointer="/atoms")
        for i, label in enumerate(labels):
            if not isinstance(label, str) or not label:
                raise ValidationError(f"atom label must be a nonempty string, got {label!r}",
                                      pointer=f"/atoms/{i}")
        if len(set(labels)) != len(labels):
            raise ValidationError("atom labels must be distinct", pointer="/atoms")

    @classmethod
    def of_size(cls, k: int) -> "FiniteSetAlgebra":
        return cls(default_labels(k))

    @property
    def atom_count(self) -> int:
        return len(self.atom_labels)

    @property
    def unit_bits(self) -> int:
        return (1 << self.atom_count) - 1

    def index_of(self, atom: Union[int, str]) -> int:
        """Resolve an atom given by index or label."""
        if isinstance(atom, str):
            try:
                return self.atom_labels.index(atom)
            except ValueError:
                raise ValidationError(f"unknown atom label {atom!r}")
        if isinstance(atom, int) and not isinstance(atom, bool) and 0 <= atom < self.atom_count:
            return atom
        raise ValidationError(f"atom index {atom!r} out of range for {self.atom_count} atoms")

    def element(self, bits: int) -> "AtomSet":
        return AtomSet(self, bits)

    def atom(self, atom: Union[int, str]) -> "AtomSet":
        return AtomSet(self, 1 << self.index_of(atom))

    def zero(self) -> "AtomSet":
        return AtomSet(self, 0)

    def unit(self) -> "AtomSet":
        return AtomSet(self, self.unit_bits)

    def elements(self) -> Iterator["AtomSet"]:
        """All 2^k elements in bitmask order."""
        for bits in range(self.unit_bits + 1):
            yield AtomSet(self, bits)

    def parse(self, bitstring: str, pointer: str = "") -> "AtomSet":
        """Character i of the bitstring is atom i ('110' = atoms 0 and 1)."""
        if not isinstance(bitstring, str) or len(bitstring) != self.atom_count or set(bitstring) - {"0", "1"}:
            raise ValidationError(
                f"expected a bitstring of length {self.atom_count}, got {bitstring!r}",
                pointer=pointer or None,
            )
        bits = sum(1 << i for i, ch in enumerate(bitstring) if ch == "1")
        return AtomSet(self, bits)

    def contains(self, element) -> bool:
        return isinstance(element, AtomSet) and element.algebra == self

    def to_dict(self) -> dict:
        return {"atoms": list(self.atom_labels)}


@dataclass(frozen=True)
class AtomSet:
    """An element of a FiniteSetAlgebra: a bitset over its atoms."""

    algebra: FiniteSetAlgebra
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits <= self.algebra.unit_bits:
            raise ValidationError(
                f"bitset {self.bits:#b} out of range for {self.algebra.atom_count} atoms"
            )

    def _same(self, other) -> None:
        if not isinstance(other, AtomSet) or other.algebra != self.algebra:
            raise ForeignElementError(f"cannot combine {self} with an element of another presentation")

    def __and__(self, other: "AtomSet") -> "AtomSet":
        self._same(other)
        return AtomSet(self.algebra, self.bits & other.bits)

    def __or__(self, other: "AtomSet") -> "AtomSet":
        self._same(other)
        return AtomSet(self.algebra, self.bits | other.bits)

    def __xor__(self, other: "AtomSet") -> "AtomSet":
        self._same(other)
        return AtomSet(self.algebra, self.bits ^ other.bits)

    def __invert__(self) -> "AtomSet":
        return AtomSet(self.algebra, self.algebra.unit_bits & ~self.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_unit(self) -> bool:
        return self.bits == self.algebra.unit_bits

    def atoms(self) -> List[int]:
        return [i for i in range(self.algebra.atom_count) if self.bits >> i & 1]

    def bitstring(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.algebra.atom_count))

    def __str__(self) -> str:
        return self.bitstring()


# ============================================================================
# CANTOR ALGEBRA
# ============================================================================

def _assignments(width: int) -> Iterator[Pattern]:
    return itertools.product((0, 1), repeat=width)


def _canonical(support: Tuple[int, ...], patterns: set) -> "CantorClopen":
    """Drop every index the denoted set does not depend on."""
    changed = True
    while changed:
        changed = False
        for pos in range(len(support)):
            if all(p[:pos] + (1 - p[pos],) + p[pos + 1:] in patterns for p in patterns):
                support = support[:pos] + support[pos + 1:]
                patterns = {p[:pos] + p[pos + 1:] for p in patterns}
                changed = True
                break
    return CantorClopen(support, tuple(sorted(patterns)))


@dataclass(frozen=True)
class CantorClopen:
    """
    A clopen subset of 2^omega: the x whose restriction to `support` is in `patterns`.

    `support` is sorted and minimal; pattern bit i belongs to support[i].
    Zero is (), (); unit is (), ((),). Build through CantorClopen.build()
    or the CantorAlgebra helpers; the raw constructor trusts canonical input.
    """

    support: Tuple[int, ...] = ()
    patterns: Tuple[Pattern, ...] = ()

    @classmethod
    def build(cls, support: Sequence[int], patterns, pointer: str = "") -> "CantorClopen":
        support = list(support)
        for i, index in enumerate(support):
            if not isinstance(index, int) or isinstance(index, bool) or index < 0:
                raise ValidationError(f"generator index must be a nonnegative integer, got {index!r}",
                                      pointer=f"{pointer}/support/{i}")
        if len(set(support)) != len(support):
            raise ValidationError("support indices must be distinct", pointer=f"{pointer}/support")
        order = sorted(range(len(support)), key=support.__getitem__)
        converted = set()
        for i, pattern in enumerate(patterns):
            if isinstance(pattern, str):
                if set(pattern) - {"0", "1"}:
                    raise ValidationError(f"bad pattern {pattern!r}", pointer=f"{pointer}/patterns/{i}")
                pattern = tuple(int(ch) for ch in pattern)
            pattern = tuple(pattern)
            if len(pattern) != len(support) or any(bit not in (0, 1) for bit in pattern):
                raise ValidationError(
                    f"pattern {pattern!r} does not match support of size {len(support)}",
                    pointer=f"{pointer}/patterns/{i}",
                )
            converted.add(tuple(pattern[j] for j in order))
        return _canonical(tuple(sorted(support)), converted)

    def _on(self, support: Tuple[int, ...]) -> set:
        """The patterns of this set re-expressed over a larger support."""
        positions = [support.index(i) for i in self.support]
        own = set(self.patterns)
        return {
            p for p in _assignments(len(support))
            if tuple(p[pos] for pos in positions) in own
        }

    def _combine(self, other: "CantorClopen", rule) -> "CantorClopen":
        if not isinstance(other, CantorClopen):
            raise ForeignElementError(f"cannot combine {self} with an element of another presentation")
        support = tuple(sorted(set(self.support) | set(other.support)))
        return _canonical(support, rule(self._on(support), other._on(support)))

    def __and__(self, other: "CantorClopen") -> "CantorClopen":
        return self._combine(other, lambda x, y: x & y)

    def __or__(self, other: "CantorClopen") -> "CantorClopen":
        return self._combine(other, lambda x, y: x | y)

    def __xor__(self, other: "CantorClopen") -> "CantorClopen":
        return self._combine(other, lambda x, y: x ^ y)

    def __invert__(self) -> "CantorClopen":
        complement = set(_assignments(len(self.support))) - set(self.patterns)
        return _canonical(self.support, complement)

    def is_zero(self) -> bool:
        return not self.patterns

    def is_unit(self) -> bool:
        return not self.support and bool(self.patterns)

    def uniform_measure(self) -> Fraction:
        """Product measure of the set: admissible patterns over 2^|support|."""
        return Fraction(len(self.patterns), 2 ** len(self.support))

    def contains_bits(self, bits: Sequence[int]) -> bool:
        """Membership of a point given by (at least max(support)+1) binary digits."""
        return tuple(bits[i] for i in self.support) in set(self.patterns)

    def to_dict(self) -> dict:
        return {
            "support": list(self.support),
            "patterns": ["".join(map(str, p)) for p in self.patterns],
        }

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        if self.is_unit():
            return "1"
        if len(self.support) == 1:
            n = self.support[0]
            return f"C{n}" if self.patterns == ((1,),) else f"~C{n}"
        body = "|".join("".join(map(str, p)) for p in self.patterns)
        return f"S{list(self.support)}:{body}".replace(" ", "")


@dataclass(frozen=True)
class CantorAlgebra:
    """The countable free Boolean algebra on generators C_0, C_1, ... ."""

    def generator(self, n: int) -> CantorClopen:
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValidationError(f"generator index must be a nonnegative integer, got {n!r}")
        return CantorClopen((n,), ((1,),))

    def zero(self) -> CantorClopen:
        return CantorClopen((), ())

    def unit(self) -> CantorClopen:
        return CantorClopen((), ((),))

    def contains(self, element) -> bool:
        return isinstance(element, CantorClopen)

    def to_dict(self) -> dict:
        return {"kind": "cantor"}


@dataclass(frozen=True)
class Chunk:
    """Elementary conjunction of generators (positive) and complemented generators (negative)."""

    positive: FrozenSet[int] = field(default_factory=frozenset)
    negative: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "positive", frozenset(self.positive))
        object.__setattr__(self, "negative", frozenset(self.negative))
        if self.positive & self.negative:
            raise ValidationError(
                f"chunk uses generators {sorted(self.positive & self.negative)} on both sides"
            )
        if not self.positive | self.negative:
            raise ValidationError("chunk must mention at least one generator")

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.positive | self.negative))

    def to_clopen(self) -> CantorClopen:
        support = self.support
        return CantorClopen(support, (tuple(int(i in self.positive) for i in support),))

    def to_dict(self) -> dict:
        return {"positive": sorted(self.positive), "negative": sorted(self.negative)}

    def __str__(self) -> str:
        return "&".join(f"C{i}" if i in self.positive else f"~C{i}" for i in self.support)


def enumerate_chunks(m: int) -> List[Chunk]:
    """All 3^m - 1 chunks with support inside {0, ..., m-1}, in a fixed order."""
    if m < 0:
        raise ValidationError(f"support bound must be >= 0, got {m}")
    chunks = []
    for choice in itertools.product((None, 1, 0), repeat=m):
        positive = {i for i, c in enumerate(choice) if c == 1}
        negative = {i for i, c in enumerate(choice) if c == 0}
        if positive or negative:
            chunks.append(Chunk(frozenset(positive), frozenset(negative)))
    return chunks


def cantor_to_interval(c: CantorClopen) -> ClopenSet:
    """
    Digit embedding: C_n goes to {x : binary digit n of x is 1}.

    Digit 0 is the first digit after the point, so C_0 maps to [1/2, 1).
    """
    if not c.support:
        return ClopenSet.unit() if c.patterns else ClopenSet.zero()
    depth = c.support[-1] + 1
    if depth > CANTOR_DEPTH_LIMIT:
        raise CapExceededError("cantor_to_interval depth", CANTOR_DEPTH_LIMIT, depth)
    shifts = [depth - 1 - i for i in c.support]
    admissible = set(c.patterns)
    return join_all(
        DyadicCylinder(depth, j).to_clopen()
        for j in range(2 ** depth)
        if tuple(j >> s & 1 for s in shifts) in admissible
    )


# ============================================================================
# FINITE-COFINITE ALGEBRA
# ============================================================================

@dataclass(frozen=True)
class FiniteCofinite:
    """finite_part if cofinite is False, omega minus finite_part otherwise."""

    finite_part: FrozenSet[int] = field(default_factory=frozenset)
    cofinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "finite_part", frozenset(self.finite_part))
        for n in self.finite_part:
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise ValidationError(f"finite part must hold naturals, got {n!r}")

    def _check(self, other) -> None:
        if not isinstance(other, FiniteCofinite):
            raise ForeignElementError(f"cannot combine {self} with an element of another presentation")

    def __invert__(self) -> "FiniteCofinite":
        return FiniteCofinite(self.finite_part, not self.cofinite)

    def __and__(self, other: "FiniteCofinite") -> "FiniteCofinite":
        self._check(other)
        f, g = self.finite_part, other.finite_part
        if self.cofinite and other.cofinite:
            return FiniteCofinite(f | g, True)
        if self.cofinite:
            return FiniteCofinite(g - f, False)
        if other.cofinite:
            return FiniteCofinite(f - g, False)
        return FiniteCofinite(f & g, False)

    def __or__(self, other: "FiniteCofinite") -> "FiniteCofinite":
        return ~(~self & ~other)

    def __xor__(self, other: "FiniteCofinite") -> "FiniteCofinite":
        return (self & ~other) | (~self & other)

    def contains(self, n: int) -> bool:
        return (n in self.finite_part) != self.cofinite

    def is_zero(self) -> bool:
        return not self.cofinite and not self.finite_part

    def is_unit(self) -> bool:
        return self.cofinite and not self.finite_part

    def to_dict(self) -> dict:
        return {"finite": sorted(self.finite_part), "cofinite": self.cofinite}

    def __str__(self) -> str:
        body = "{" + ",".join(map(str, sorted(self.finite_part))) + "}"
        return f"co{body}" if self.cofinite else body


@dataclass(frozen=True)
class FiniteCofiniteAlgebra:
    """Finite and cofinite subsets of the naturals."""

    def singleton(self, n: int) -> FiniteCofinite:
        return FiniteCofinite(frozenset({n}), False)

    def zero(self) -> FiniteCofinite:
        return FiniteCofinite(frozenset(), False)

    def unit(self) -> FiniteCofinite:
        return FiniteCofinite(frozenset(), True)

    def contains(self, element) -> bool:
        return isinstance(element, FiniteCofinite)

    def to_dict(self) -> dict:
        return {"kind": "finite-cofinite"}


Presentation = Union[FiniteSetAlgebra, CantorAlgebra, FiniteCofiniteAlgebra]
Element = Union[AtomSet, CantorClopen, FiniteCofinite]


# ============================================================================
# GENERIC OPERATIONS
# ============================================================================

def element_ops(op: str, a: Element, b: Optional[Element] = None) -> Element:
    """
    Canonical meet / join / complement / symmetric-difference in a's presentation.

    Raises:
        ForeignElementError: a and b come from different presentations
        ValidationError: unknown operation or missing operand
    """
    if op == "complement":
        if b is not None:
            raise ValidationError("complement takes a single operand")
        return ~a
    if b is None:
        raise ValidationError(f"{op} needs two operands")
    if type(a) is not type(b):
        raise ForeignElementError(
            f"mixed presentations: {type(a).__name__} and {type(b).__name__}"
        )
    if op == "meet":
        return a & b
    if op == "join":
        return a | b
    if op == "symmetric-difference":
        return a ^ b
    raise ValidationError(f"unknown operation {op!r}")


def require_member(domain: Presentation, element, pointer: Optional[str] = None) -> None:
    """Raise ForeignElementError unless `element` lives in `domain`."""
    if not domain.contains(element):
        raise ForeignElementError(
            f"element {element} does not belong to {type(domain).__name__}", pointer=pointer
        )


@dataclass(frozen=True)
class SikorskiVerdict:
    """
    Result of sikorski_check.

    When extendable, `images` is the validated assignment keyed by atom
    index / generator index / point - the description of the induced
    homomorphism. Otherwise `counterexample` names a Boolean polynomial
    that vanishes in the domain and `witness` is its nonzero image.
    """

    extendable: bool
    images: Dict[int, ClopenSet]
    counterexample: Optional[str] = None
    witness: Optional[ClopenSet] = None


def _generator_key(key, pointer: str) -> int:
    if isinstance(key, int) and not isinstance(key, bool) and key >= 0:
        return key
    if isinstance(key, str):
        text = key[2:] if key.startswith("C_") else key[1:] if key.startswith("C") else key
        if text.isdigit():
            return int(text)
    raise ValidationError(f"cannot read generator/point key {key!r}", pointer=pointer)


def sikorski_check(domain: Presentation, assignment: Mapping) -> SikorskiVerdict:
    """
    Does `assignment` extend to a homomorphism from `domain` into ClopenSet?

    - FiniteSetAlgebra: the assignment must cover every atom; it extends iff
      the images are pairwise disjoint and join to the unit.
    - CantorAlgebra: the generators are free, so every assignment extends.
    - FiniteCofiniteAlgebra: keys are points whose singletons are assigned;
      they must be pairwise disjoint (the rest of the unit goes to the
      cofinite sets).
    """
    for key, image in assignment.items():
        if not isinstance(image, ClopenSet):
            raise ValidationError(f"image of {key!r} is not a ClopenSet", pointer=f"/images/{key}")

    if isinstance(domain, FiniteSetAlgebra):
        images: Dict[int, ClopenSet] = {}
        for key, image in assignment.items():
            images[domain.index_of(key)] = image
        missing = [domain.atom_labels[i] for i in range(domain.atom_count) if i not in images]
        if missing:
            raise ValidationError(f"assignment is missing atoms {missing}", pointer="/images")
        names = domain.atom_labels
        for i, j in itertools.combinations(range(domain.atom_count), 2):
            overlap = images[i] & images[j]
            if not overlap.is_zero():
                return SikorskiVerdict(False, images, f"{names[i]} & {names[j]}", overlap)
        rest = ~join_all(images.values())
        if not rest.is_zero():
            return SikorskiVerdict(False, images, "~(" + " | ".join(names) + ")", rest)
        return SikorskiVerdict(True, dict(sorted(images.items())))

    if isinstance(domain, CantorAlgebra):
        images = {_generator_key(k, f"/images/{k}"): v for k, v in assignment.items()}
        return SikorskiVerdict(True, dict(sorted(images.items())))

    if isinstance(domain, FiniteCofiniteAlgebra):
        images = {_generator_key(k, f"/images/{k}"): v for k, v in assignment.items()}
        for i, j in itertools.combinations(sorted(images), 2):
            overlap = images[i] & images[j]
            if not overlap.is_zero():
                return SikorskiVerdict(False, images, f"{{{i}}} & {{{j}}}", overlap)
        return SikorskiVerdict(True, dict(sorted(images.items())))

    raise ValidationError(f"unsupported domain {type(domain).__name__}")
