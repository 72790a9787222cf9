"""
Asymptotic density of ones in a sampled binary expansion.

A uniformly sampled point has digits that are independent fair bits, so
the running density of ones settles near 1/2 with standard deviation
1/(2 sqrt(k)) after k digits. Debug streams (all ones, alternating) give
exact values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from ..core.sampling import BitStream
from ..errors import ValidationError

logger = logging.getLogger(__name__)


def log_schedule(n_bits: int) -> List[int]:
    """1, 2, 5, 10, 20, 50, ... up to n_bits, always ending with n_bits."""
    points = []
    scale = 1
    while scale <= n_bits:
        for step in (1, 2, 5):
            if step * scale <= n_bits:
                points.append(step * scale)
        scale *= 10
    if points[-1] != n_bits:
        points.append(n_bits)
    return points


@dataclass(frozen=True)
class DensityReport:
    source: dict
    rows: List[Tuple[int, int, Fraction]]

    @property
    def final(self) -> Fraction:
        return self.rows[-1][2]

    def sigma(self) -> float:
        """Standard deviation of the final estimate for fair bits."""
        return 0.5 / float(np.sqrt(self.rows[-1][0]))


def density_demo(stream: BitStream, n_bits: int) -> DensityReport:
    """
    Running density d_k = (#ones among the first k digits) / k on a log schedule.

    Raises:
        ValidationError: n_bits < 1
    """
    if not isinstance(n_bits, int) or isinstance(n_bits, bool) or n_bits < 1:
        raise ValidationError(f"n_bits must be a positive integer, got {n_bits!r}", pointer="/bits")
    ones = np.cumsum(stream.bits(n_bits), dtype=np.int64)
    rows = [(k, int(ones[k - 1]), Fraction(int(ones[k - 1]), k)) for k in log_schedule(n_bits)]
    logger.debug("density over %d digits: %s", n_bits, rows[-1][2])
    return DensityReport(stream.describe(), rows)
