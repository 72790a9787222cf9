"""
Exact rational simplex.

Solves   maximize c.x  subject to  A x <= b,  x >= 0   with b >= 0,
so the slack basis is feasible and no phase one is needed. Entering and
leaving variables follow Bland's rule, which rules out cycling. All
arithmetic is on Fractions.

The optimal dual solution is read off the objective row under the slack
columns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from ..errors import CapExceededError, ValidationError

logger = logging.getLogger(__name__)

MAX_PIVOTS = 10_000


@dataclass(frozen=True)
class LPSolution:
    status: str
    value: Fraction
    x: List[Fraction]
    dual: List[Fraction]
    pivots: int


class RationalSimplex:
    """
    Dense tableau over Fractions.

    Columns 0..n-1 are the structural variables, n..n+m-1 the slacks.
    Row m is the objective row, holding reduced costs (negative entries
    mean the objective can still grow).
    """

    def __init__(self, A: Sequence[Sequence], b: Sequence, c: Sequence):
        self.m = len(A)
        self.n = len(c)
        if len(b) != self.m:
            raise ValidationError(f"{self.m} constraint rows but {len(b)} right-hand sides")
        for i, row in enumerate(A):
            if len(row) != self.n:
                raise ValidationError(f"constraint row {i} has {len(row)} entries, expected {self.n}")
        if any(Fraction(v) < 0 for v in b):
            raise ValidationError("right-hand sides must be nonnegative")

        width = self.n + self.m
        self.tableau: List[List[Fraction]] = []
        for i, row in enumerate(A):
            slack = [Fraction(int(i == k)) for k in range(self.m)]
            self.tableau.append([Fraction(v) for v in row] + slack + [Fraction(b[i])])
        self.tableau.append([-Fraction(v) for v in c] + [Fraction(0)] * self.m + [Fraction(0)])
        self.basis = list(range(self.n, width))

    def _pivot(self, row: int, col: int) -> None:
        logger.debug("pivot: x%d leaves, x%d enters", self.basis[row], col)
        pivot_row = self.tableau[row]
        p = pivot_row[col]
        self.tableau[row] = pivot_row = [v / p for v in pivot_row]
        for r, other in enumerate(self.tableau):
            if r != row and other[col] != 0:
                f = other[col]
                self.tableau[r] = [v - f * w for v, w in zip(other, pivot_row)]
        self.basis[row] = col

    def solve(self, max_pivots: int = MAX_PIVOTS) -> LPSolution:
        width = self.n + self.m
        objective = self.tableau[self.m]
        pivots = 0
        while True:
            objective = self.tableau[self.m]
            entering = next((j for j in range(width) if objective[j] < 0), None)
            if entering is None:
                break
            candidates = [
                (self.tableau[i][-1] / self.tableau[i][entering], self.basis[i], i)
                for i in range(self.m)
                if self.tableau[i][entering] > 0
            ]
            if not candidates:
                logger.debug("column x%d is unbounded", entering)
                return LPSolution("unbounded", Fraction(0), [], [], pivots)
            _, _, leaving = min(candidates)
            self._pivot(leaving, entering)
            pivots += 1
            if pivots > max_pivots:
                raise CapExceededError("simplex pivots", max_pivots)

        x = [Fraction(0)] * self.n
        for i, var in enumerate(self.basis):
            if var < self.n:
                x[var] = self.tableau[i][-1]
        dual = [objective[self.n + k] for k in range(self.m)]
        logger.debug("optimal after %d pivots, value %s", pivots, objective[-1])
        return LPSolution("optimal", objective[-1], x, dual, pivots)


def maximize(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPSolution:
    """Convenience wrapper: RationalSimplex(A, b, c).solve()."""
    return RationalSimplex(A, b, c).solve()
