"""Exact rational scalars and small dense rational matrices.

Scalars are :class:`fractions.Fraction` values, which Python already keeps
in canonical form (reduced, positive denominator), so every equality and
sign test is exact.  Matrices are immutable and row-major.  Determinants
use fraction-free Bareiss elimination on an integer-rescaled copy of the
matrix; ranks use division-free integer elimination.  Both are exact for
any input and tuned for the tiny (at most 8 x 8) matrices this package
actually builds, where intermediate growth is a non-issue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str, float]


class DimensionError(ValueError):
    """Raised when a matrix operation receives incompatible dimensions."""


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Accepts Fractions, ints, floats and strings.  Strings may be ``"p/q"``
    or decimal literals; ``"0.25"`` converts exactly to 1/4.  Floats convert
    from their exact binary value, so prefer strings whenever the decimal
    spelling matters.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational values")
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_sign(q: Fraction) -> int:
    """Exact sign of a rational: -1, 0 or +1."""
    return (q > 0) - (q < 0)


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Square root of ``q`` if it is a perfect rational square, else None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class RatMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[RationalLike]]) -> "RatMatrix":
        data = [tuple(as_rational(x) for x in row) for row in rows]
        if not data:
            return cls(0, 0, ())
        ncols = len(data[0])
        if any(len(row) != ncols for row in data):
            raise DimensionError("rows have unequal lengths")
        return cls(len(data), ncols, tuple(x for row in data for x in row))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix.from_rows(
            [[self.at(i, j) for j in col_idx] for i in row_idx]
        )


def _integer_rows(m: RatMatrix) -> tuple[list[list[int]], Fraction]:
    """Rescale each row to integers; return the rows and the overall factor.

    The determinant of the original matrix is the integer determinant
    divided by the returned factor.
    """
    factor = Fraction(1)
    out: list[list[int]] = []
    for i in range(m.rows):
        row = m.row(i)
        mult = 1
        for x in row:
            mult = mult * x.denominator // math.gcd(mult, x.denominator)
        factor *= mult
        out.append([int(x * mult) for x in row])
    return out, factor


def rat_det(m: RatMatrix) -> Fraction:
    """Exact determinant via fraction-free Bareiss elimination."""
    if not m.is_square:
        raise DimensionError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a, factor = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1]) / factor


def rat_rank(m: RatMatrix) -> int:
    """Exact rank over the rationals, by division-free integer elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a, _ = _integer_rows(m)
    rank = 0
    pivot_row = 0
    for col in range(m.cols):
        piv = next((r for r in range(pivot_row, m.rows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[pivot_row], a[piv] = a[piv], a[pivot_row]
        lead = a[pivot_row]
        for r in range(pivot_row + 1, m.rows):
            if a[r][col] != 0:
                f1, f2 = lead[col], a[r][col]
                a[r] = [f1 * a[r][j] - f2 * lead[j] for j in range(m.cols)]
        pivot_row += 1
        rank += 1
        if pivot_row == m.rows:
            break
    return rank


def solve_linear(
    coefficients: Sequence[Sequence[RationalLike]],
    rhs: Sequence[RationalLike],
) -> tuple[Fraction, ...] | None:
    """Solve an exact (possibly overdetermined) linear system A x = b.

    Returns one solution with free variables set to zero, or None if the
    system is inconsistent.
    """
    a = [list(map(as_rational, row)) for row in coefficients]
    b = [as_rational(x) for x in rhs]
    if len(a) != len(b):
        raise DimensionError("matrix and right-hand side sizes differ")
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if any(len(row) != ncols for row in a):
        raise DimensionError("rows have unequal lengths")

    pivots: list[tuple[int, int]] = []
    prow = 0
    for col in range(ncols):
        piv = next((r for r in range(prow, nrows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[prow], a[piv] = a[piv], a[prow]
        b[prow], b[piv] = b[piv], b[prow]
        inv = a[prow][col]
        a[prow] = [x / inv for x in a[prow]]
        b[prow] = b[prow] / inv
        for r in range(nrows):
            if r != prow and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[prow])]
                b[r] = b[r] - f * b[prow]
        pivots.append((prow, col))
        prow += 1
        if prow == nrows:
            break
    for r in range(prow, nrows):
        if b[r] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, c in pivots:
        x[c] = b[r]
    return tuple(x)
