"""
Interval Model - boolmeas v0.1

Canonical clopen sets of [0,1) with exact rational endpoints: the desk model
of the measure algebra.

DESIGN PHILOSOPHY:
------------------
- A ClopenSet is a finite union of half-open intervals [lo, hi)
- The representation is canonical (sorted, disjoint, maximally merged),
  so equality of sets is equality of tuples
- Everything is a Fraction; floats are rejected at the boundary
- Values are immutable; every operation returns a new ClopenSet

USAGE:
------
Build and combine:
    a = normalize([(0, Fraction(1, 2))])
    b = normalize([(Fraction(1, 4), Fraction(3, 4))])
    a & b            # meet  -> [(1/4,1/2)]
    ~a               # complement -> [(1/2,1)]

Measure and distance:
    lambda_measure(a)     # 1/2
    fn_distance(a, b)     # 1/2

Dynamics:
    shift_preimage(a, 1)  # T^-1 a for T(x) = 2x mod 1
    bit_flip(a, 0)        # swap the halves of [0,1)
"""

from __future__ import annotations

import logging
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..errors import CapExceededError, ValidationError

logger = logging.getLogger(__name__)

Interval = Tuple[Fraction, Fraction]
SignVector = Tuple[bool, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

# shift_preimage refuses to build more raw pieces than this
SHIFT_PIECE_LIMIT = 1 << 20


def as_rational(value, pointer: Optional[str] = None) -> Fraction:
    """
    Coerce user input to a Fraction.

    Accepts int, Fraction, 'p/q' strings and [num, den] pairs.
    Floats and bools are rejected: the whole package is exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError(
            f"expected an exact rational, got {value!r}", pointer=pointer
        )
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"cannot parse rational {value!r}", pointer=pointer)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        num, den = value
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (num, den)):
            raise ValidationError(
                f"rational pair must hold two integers, got {value!r}", pointer=pointer
            )
        if den == 0:
            raise ValidationError("zero denominator", pointer=pointer)
        return Fraction(num, den)
    raise ValidationError(f"expected an exact rational, got {value!r}", pointer=pointer)


def _merge(pairs: Iterable[Interval]) -> Tuple[Interval, ...]:
    """Sort and merge overlapping or adjacent half-open intervals."""
    merged: List[List[Fraction]] = []
    for lo, hi in sorted(pairs):
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


@dataclass(frozen=True)
class ClopenSet:
    """
    Finite union of rational half-open subintervals of [0,1), canonical form.

    Construct through normalize() (or the zero/unit/interval helpers);
    the raw constructor trusts its argument to be canonical already.

    Examples:
        >>> ClopenSet.unit()
        ClopenSet(intervals=((Fraction(0, 1), Fraction(1, 1)),))
        >>> str(normalize([(0, Fraction(1, 2)), (Fraction(1, 2), 1)]))
        '[(0,1)]'
    """

    intervals: Tuple[Interval, ...] = ()

    @classmethod
    def zero(cls) -> "ClopenSet":
        return cls(())

    @classmethod
    def unit(cls) -> "ClopenSet":
        return cls(((ZERO, ONE),))

    @classmethod
    def interval(cls, lo, hi) -> "ClopenSet":
        """The single interval [lo, hi)."""
        return normalize([(lo, hi)])

    def is_zero(self) -> bool:
        return not self.intervals

    def is_unit(self) -> bool:
        return self.intervals == ((ZERO, ONE),)

    def contains(self, x) -> bool:
        """Half-open membership: x in [lo, hi) for some interval."""
        x = Fraction(x)
        i = bisect_right(self._lows, x) - 1
        return i >= 0 and x < self.intervals[i][1]

    @cached_property
    def _lows(self) -> Tuple[Fraction, ...]:
        return tuple(lo for lo, _ in self.intervals)

    def endpoints(self) -> List[Fraction]:
        return [p for pair in self.intervals for p in pair]

    # Boolean operators delegate to combine()
    def __and__(self, other: "ClopenSet") -> "ClopenSet":
        return combine("meet", self, other)

    def __or__(self, other: "ClopenSet") -> "ClopenSet":
        return combine("join", self, other)

    def __xor__(self, other: "ClopenSet") -> "ClopenSet":
        return combine("symmetric-difference", self, other)

    def __sub__(self, other: "ClopenSet") -> "ClopenSet":
        return combine("difference", self, other)

    def __invert__(self) -> "ClopenSet":
        return combine("complement", self)

    def __le__(self, other: "ClopenSet") -> bool:
        return (self - other).is_zero()

    def __str__(self) -> str:
        body = ",".join(f"({_fmt(lo)},{_fmt(hi)})" for lo, hi in self.intervals)
        return f"[{body}]"

    def to_json(self) -> List[List[int]]:
        """[[num-lo, den-lo, num-hi, den-hi], ...] in canonical order."""
        return [
            [lo.numerator, lo.denominator, hi.numerator, hi.denominator]
            for lo, hi in self.intervals
        ]

    @classmethod
    def from_json(cls, data, pointer: str = "") -> "ClopenSet":
        """Parse the quadruple list written by to_json(); any order is accepted."""
        if not isinstance(data, list):
            raise ValidationError("clopen set must be a list of quadruples", pointer=pointer or "/")
        pairs = []
        for position, quad in enumerate(data):
            where = f"{pointer}/{position}"
            if (
                not isinstance(quad, list)
                or len(quad) != 4
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in quad)
            ):
                raise ValidationError(
                    "expected [num-lo, den-lo, num-hi, den-hi] integers", pointer=where
                )
            if quad[1] <= 0 or quad[3] <= 0:
                raise ValidationError("denominators must be positive", pointer=where)
            pairs.append((Fraction(quad[0], quad[1]), Fraction(quad[2], quad[3])))
        return normalize(pairs, pointer=pointer)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class DyadicCylinder:
    """The dyadic interval [index * 2^-depth, (index + 1) * 2^-depth)."""

    depth: int
    index: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValidationError(f"cylinder depth must be >= 0, got {self.depth}")
        if not 0 <= self.index < 2 ** self.depth:
            raise ValidationError(
                f"cylinder index {self.index} out of range for depth {self.depth}"
            )

    @property
    def lo(self) -> Fraction:
        return Fraction(self.index, 2 ** self.depth)

    @property
    def hi(self) -> Fraction:
        return Fraction(self.index + 1, 2 ** self.depth)

    def to_clopen(self) -> ClopenSet:
        return ClopenSet(((self.lo, self.hi),))

    def __str__(self) -> str:
        return f"cylinder({self.depth},{self.index})"


# ========== Construction ==========

def normalize(raw: Iterable[Sequence], pointer: str = "") -> ClopenSet:
    """
    Canonical ClopenSet equal to the union of the given (lo, hi) pairs.

    Raises:
        ValidationError: a pair is malformed; the message names its position
    """
    pairs: List[Interval] = []
    for position, pair in enumerate(raw):
        where = f"{pointer}/{position}" if pointer else f"interval {position}"
        try:
            lo, hi = pair
        except (TypeError, ValueError):
            raise ValidationError("expected a (lo, hi) pair", pointer=where)
        lo = as_rational(lo, pointer=where)
        hi = as_rational(hi, pointer=where)
        if not (ZERO <= lo < hi <= ONE):
            raise ValidationError(
                f"need 0 <= lo < hi <= 1, got ({lo}, {hi})", pointer=where
            )
        pairs.append((lo, hi))
    return ClopenSet(_merge(pairs))


# ========== Boolean Structure ==========

_BINARY_RULES: Dict[str, Callable[[bool, bool], bool]] = {
    "meet": lambda x, y: x and y,
    "join": lambda x, y: x or y,
    "symmetric-difference": lambda x, y: x != y,
    "difference": lambda x, y: x and not y,
}

OPERATIONS = ("meet", "join", "complement", "symmetric-difference", "difference")


def _elementary_pieces(sets: Sequence[ClopenSet]) -> List[Tuple[Interval, SignVector]]:
    """
    Cut [0,1) at every endpoint of every set and record, for each piece,
    which sets contain it. Each piece lies entirely inside or outside
    each set, so testing the left endpoint suffices.

    One sweep over the sorted cuts with a cursor per set: linear in the
    total number of intervals after sorting.
    """
    cuts = sorted({ZERO, ONE}.union(*(s.endpoints() for s in sets)))
    cursors = [0] * len(sets)
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        signs = []
        for k, s in enumerate(sets):
            intervals = s.intervals
            j = cursors[k]
            while j < len(intervals) and intervals[j][1] <= lo:
                j += 1
            cursors[k] = j
            signs.append(j < len(intervals) and intervals[j][0] <= lo)
        pieces.append(((lo, hi), tuple(signs)))
    return pieces


def _complement(a: ClopenSet) -> ClopenSet:
    gaps = []
    cursor = ZERO
    for lo, hi in a.intervals:
        if cursor < lo:
            gaps.append((cursor, lo))
        cursor = hi
    if cursor < ONE:
        gaps.append((cursor, ONE))
    return ClopenSet(tuple(gaps))


def combine(op: str, a: ClopenSet, b: Optional[ClopenSet] = None) -> ClopenSet:
    """
    Canonical result of a Boolean operation.

    Args:
        op: 'meet', 'join', 'complement', 'symmetric-difference' or 'difference'
        a: First operand
        b: Second operand (absent for 'complement')
    """
    if op == "complement":
        if b is not None:
            raise ValidationError("complement takes a single operand")
        return _complement(a)
    if op not in _BINARY_RULES:
        raise ValidationError(f"unknown operation {op!r}; expected one of {OPERATIONS}")
    if b is None:
        raise ValidationError(f"{op} needs two operands")
    rule = _BINARY_RULES[op]
    kept = [piece for piece, (x, y) in _elementary_pieces([a, b]) if rule(x, y)]
    return ClopenSet(_merge(kept))


def join_all(sets: Iterable[ClopenSet]) -> ClopenSet:
    """Join of any number of sets (zero for an empty iterable)."""
    return ClopenSet(_merge(pair for s in sets for pair in s.intervals))


def meet_all(sets: Iterable[ClopenSet]) -> ClopenSet:
    """Meet of any number of sets (unit for an empty iterable)."""
    result = ClopenSet.unit()
    for s in sets:
        result = result & s
    return result


def regions(generators: Sequence[ClopenSet]) -> Dict[SignVector, ClopenSet]:
    """
    Atoms of the finite subalgebra generated by `generators`.

    Returns a mapping from sign vector (True = inside generator i) to the
    nonzero region where exactly that pattern holds. Vectors whose region
    is empty are absent.
    """
    grouped: Dict[SignVector, List[Interval]] = {}
    for piece, signs in _elementary_pieces(generators):
        grouped.setdefault(signs, []).append(piece)
    return {signs: ClopenSet(_merge(grouped[signs])) for signs in sorted(grouped)}


@dataclass(frozen=True)
class ExtensionVerdict:
    """Outcome of the Sikorski criterion between two generator lists."""

    extendable: bool
    counterexample: Optional[SignVector] = None
    witness: Optional[ClopenSet] = None


def sikorski_extension(
    sources: Sequence[ClopenSet], targets: Sequence[ClopenSet]
) -> ExtensionVerdict:
    """
    Does sources[i] -> targets[i] extend to a homomorphism of the generated subalgebra?

    It does iff every sign vector whose source region vanishes also has a
    vanishing target region. Otherwise the first offending sign vector is
    returned together with its (nonzero) target region.
    """
    if len(sources) != len(targets):
        raise ValidationError(
            f"generator lists differ in length: {len(sources)} vs {len(targets)}"
        )
    present = regions(sources)
    for signs, region in regions(targets).items():
        if signs not in present:
            return ExtensionVerdict(False, counterexample=signs, witness=region)
    return ExtensionVerdict(True)


# ========== Measure and Metric ==========

def lambda_measure(a: ClopenSet) -> Fraction:
    """Lebesgue measure: the total length of the intervals."""
    return sum((hi - lo for lo, hi in a.intervals), ZERO)


def fn_distance(a: ClopenSet, b: ClopenSet) -> Fraction:
    """Frechet-Nikodym distance lambda(a xor b)."""
    return lambda_measure(a ^ b)


# ========== Doubling Map ==========

def _check_power(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValidationError(f"iteration count must be a nonnegative integer, got {n!r}")


def shift_preimage(a: ClopenSet, n: int, limit: int = SHIFT_PIECE_LIMIT) -> ClopenSet:
    """
    Exact preimage of `a` under n iterations of T(x) = 2x mod 1.

    T^-n a is the union over k < 2^n of (a + k) / 2^n, so the result has up
    to len(a.intervals) * 2^n pieces before merging.

    Raises:
        CapExceededError: more than `limit` pieces would be built. Use
            shifted_mass() when only measures are needed.
    """
    _check_power(n)
    if n == 0 or a.is_zero() or a.is_unit():
        return a
    scale = 2 ** n
    pieces = len(a.intervals) * scale
    if pieces > limit:
        raise CapExceededError("shift_preimage pieces", limit, pieces)
    raw = [
        ((lo + k) / scale, (hi + k) / scale)
        for k in range(scale)
        for lo, hi in a.intervals
    ]
    return ClopenSet(_merge(raw))


def _mass_below(a: ClopenSet, y: Fraction) -> Fraction:
    """lambda(a meet [0, y)) for y in [0, 1]."""
    total = ZERO
    for lo, hi in a.intervals:
        if lo >= y:
            break
        total += min(hi, y) - lo
    return total


def _wrapped_mass(a: ClopenSet, s: Fraction) -> Fraction:
    """Integral over [0, s) of the indicator of a evaluated at frac(u)."""
    whole = math.floor(s)
    return whole * lambda_measure(a) + _mass_below(a, s - whole)


def shifted_mass(a: ClopenSet, n: int, lo, hi) -> Fraction:
    """
    lambda(T^-n a meet [lo, hi)) in closed form, without building T^-n a.

    Substituting u = 2^n x turns the integral into (1/2^n) times the
    mass of the periodic extension of a over [2^n lo, 2^n hi).
    """
    _check_power(n)
    scale = 2 ** n
    lo, hi = Fraction(lo), Fraction(hi)
    return (_wrapped_mass(a, hi * scale) - _wrapped_mass(a, lo * scale)) / scale


def preimage_meet_measure(a: ClopenSet, n: int, b: ClopenSet) -> Fraction:
    """lambda(T^-n a meet b), summed interval by interval over b."""
    return sum((shifted_mass(a, n, lo, hi) for lo, hi in b.intervals), ZERO)


def orbit_point(x, n: int) -> Fraction:
    """T^n x = frac(2^n x) for a rational point x in [0,1)."""
    _check_power(n)
    y = Fraction(x) * 2 ** n
    return y - math.floor(y)


# ========== Bit Flips ==========

def _flip_within(lo: Fraction, hi: Fraction, start: Fraction, half: Fraction) -> List[Interval]:
    """Image of [lo, hi), contained in the cell [start, start + 2*half), under the half swap."""
    mid = start + half
    out = []
    if lo < mid:
        out.append((lo + half, min(hi, mid) + half))
    if hi > mid:
        out.append((max(lo, mid) - half, hi - half))
    return out


def bit_flip(a: ClopenSet, n: int) -> ClopenSet:
    """
    Image of `a` under flipping binary digit n (digit 0 is the first after the point).

    The map swaps the two halves of every dyadic interval of depth n; whole
    depth-n cells are invariant, so only the partial cells at the ends of
    each interval move.
    """
    _check_power(n)
    cell = Fraction(1, 2 ** n)
    half = cell / 2
    pieces: List[Interval] = []
    for lo, hi in a.intervals:
        left = math.ceil(lo / cell) * cell
        right = math.floor(hi / cell) * cell
        if left <= right:
            if left < right:
                pieces.append((left, right))
            if lo < left:
                pieces.extend(_flip_within(lo, left, left - cell, half))
            if right < hi:
                pieces.extend(_flip_within(right, hi, right, half))
        else:
            # interval sits inside a single cell
            start = math.floor(lo / cell) * cell
            pieces.extend(_flip_within(lo, hi, start, half))
    return ClopenSet(_merge(pieces))


# ========== Dyadic Structure ==========

def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def dyadic_depth(a: ClopenSet) -> Optional[int]:
    """Least g with every endpoint a multiple of 2^-g; None if some endpoint is not dyadic."""
    depth = 0
    for p in a.endpoints():
        if not _is_power_of_two(p.denominator):
            return None
        depth = max(depth, p.denominator.bit_length() - 1)
    return depth


def dyadic_refine(a: ClopenSet, g: int) -> List[DyadicCylinder]:
    """
    The depth-g cylinders whose union is `a`.

    Raises:
        ValidationError: an endpoint is not dyadic, or needs more than g digits
    """
    _check_power(g)
    scale = 2 ** g
    cylinders: List[DyadicCylinder] = []
    for position, (lo, hi) in enumerate(a.intervals):
        for endpoint in (lo, hi):
            den = endpoint.denominator
            if not _is_power_of_two(den):
                raise ValidationError(
                    f"non-dyadic endpoint {_fmt(endpoint)}", pointer=f"interval {position}"
                )
            if den > scale:
                raise ValidationError(
                    f"endpoint {_fmt(endpoint)} needs depth {den.bit_length() - 1}, got {g}",
                    pointer=f"interval {position}",
                )
        cylinders.extend(
            DyadicCylinder(g, index) for index in range(int(lo * scale), int(hi * scale))
        )
    return cylinders
