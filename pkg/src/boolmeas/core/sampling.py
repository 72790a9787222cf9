"""
Seeded randomness for sample points and the density demo.

Every draw goes through an explicit numpy Generator built with
np.random.default_rng(seed) (PCG64). Nothing reads global random state,
so a seed fully determines every report.

Bit streams are produced in fixed blocks of 64 draws of
Generator.integers(0, 2), which keeps a stream's prefix identical no
matter how many bits are requested at a time.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from ..errors import ValidationError

GENERATOR_NAME = "numpy-pcg64"
BLOCK = 64
MAX_PRECISION = 62


class BitStream:
    """
    Deterministic stream of binary digits.

    Either seeded (PCG64) or a repeating debug pattern.

    Example:
        >>> BitStream.alternating().bits(4).tolist()
        [0, 1, 0, 1]
    """

    def __init__(self, seed: Optional[int] = None, pattern: Optional[Sequence[int]] = None):
        if (seed is None) == (pattern is None):
            raise ValidationError("a bit stream needs exactly one of seed or pattern")
        if pattern is not None:
            pattern = [int(b) for b in pattern]
            if not pattern or any(b not in (0, 1) for b in pattern):
                raise ValidationError(f"debug pattern must be nonempty binary, got {pattern!r}")
        self._seed = seed
        self._pattern = pattern
        self._rng = np.random.default_rng(seed) if seed is not None else None
        self._cache = np.zeros(0, dtype=np.uint8)

    @classmethod
    def seeded(cls, seed: int) -> "BitStream":
        return cls(seed=seed)

    @classmethod
    def constant(cls, bit: int) -> "BitStream":
        return cls(pattern=[bit])

    @classmethod
    def alternating(cls) -> "BitStream":
        return cls(pattern=[0, 1])

    @property
    def seed(self) -> Optional[int]:
        return self._seed

    def bits(self, n: int) -> np.ndarray:
        """The first n digits as a uint8 array."""
        if n < 0:
            raise ValidationError(f"bit count must be >= 0, got {n}")
        if self._pattern is not None:
            reps = -(-n // len(self._pattern))
            return np.tile(np.array(self._pattern, dtype=np.uint8), reps)[:n]
        while self._cache.size < n:
            block = self._rng.integers(0, 2, size=BLOCK, dtype=np.uint8)
            self._cache = np.concatenate([self._cache, block])
        return self._cache[:n]

    def describe(self) -> dict:
        if self._pattern is not None:
            return {"pattern": "".join(map(str, self._pattern))}
        return {"seed": self._seed, "generator": GENERATOR_NAME}


def sample_rationals(seed: int, count: int, precision: int = MAX_PRECISION) -> List[Fraction]:
    """
    `count` uniform dyadic rationals k / 2^precision in [0, 1).

    Args:
        seed: Seed for np.random.default_rng
        count: Number of points
        precision: Binary digits per point (at most 62)
    """
    if not 1 <= precision <= MAX_PRECISION:
        raise ValidationError(f"precision must be in [1, {MAX_PRECISION}], got {precision}")
    if count < 0:
        raise ValidationError(f"sample count must be >= 0, got {count}")
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, 2 ** precision, size=count, dtype=np.int64)
    scale = 2 ** precision
    return [Fraction(int(k), scale) for k in draws]
