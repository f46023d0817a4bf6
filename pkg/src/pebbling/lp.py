"""Exact rational simplex for small packing LPs.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0`` (so the slack
basis is feasible) using Bland's rule, entirely in :class:`fractions.Fraction`.
Every optimum comes with a dual vector that is checked for feasibility and
matching objective before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class LPError(ValueError):
    pass


class LPUnbounded(LPError):
    """The objective is unbounded; ``column`` is the variable that escapes."""

    def __init__(self, column: int):
        super().__init__(f"LP unbounded along variable {column}")
        self.column = column


@dataclass(frozen=True)
class LPResult:
    optimum: Fraction
    x: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]
    pivots: int


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence, max_pivots: int = 100000) -> LPResult:
    m, n = len(A), len(c)
    c = [_frac(v) for v in c]
    b = [_frac(v) for v in b]
    if any(len(row) != n for row in A):
        raise LPError("constraint rows must match the objective length")
    if any(v < 0 for v in b):
        raise LPError("right-hand side must be nonnegative")
    # tableau rows: [A | I | b]; objective row holds reduced costs
    T = [[_frac(v) for v in row] + [Fraction(int(i == k)) for k in range(m)] + [b[i]]
         for i, row in enumerate(A)]
    z = c + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))
    pivots = 0
    while True:
        enter = next((j for j in range(n + m) if z[j] > 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise LPUnbounded(enter)
        pivots += 1
        if pivots > max_pivots:
            raise LPError("pivot limit exceeded")
        prow = T[leave]
        p = prow[enter]
        if p != 1:
            prow = [v / p for v in prow]
            T[leave] = prow
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    row = T[i]
                    T[i] = [a - f * q for a, q in zip(row, prow)]
        f = z[enter]
        z = [a - f * q for a, q in zip(z, prow)]
        basis[leave] = enter
    x = [Fraction(0)] * (n + m)
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    opt = -z[-1]
    dual = tuple(-z[n + i] for i in range(m))
    res = LPResult(opt, tuple(x[:n]), dual, pivots)
    check_duality(c, A, b, res)
    return res


def check_duality(c, A, b, res: LPResult) -> None:
    """Raise unless ``res.dual`` certifies ``res.optimum`` (strong duality)."""
    y = res.dual
    if any(v < 0 for v in y):
        raise LPError("dual vector has a negative entry")
    for j in range(len(c)):
        if sum(_frac(A[i][j]) * y[i] for i in range(len(A))) < c[j]:
            raise LPError(f"dual constraint {j} violated")
    if sum(_frac(bi) * yi for bi, yi in zip(b, y)) != res.optimum:
        raise LPError("dual objective differs from primal optimum")
    if sum(_frac(ci) * xi for ci, xi in zip(c, res.x)) != res.optimum:
        raise LPError("primal objective mismatch")
