"""Exact arithmetic in the Eisenstein integers Z[z6], z6 = (1 + sqrt(-3)) / 2.

Elements are stored as m + n*z6 with arbitrary-precision integer
coordinates; multiplication reduces with z6**2 = z6 - 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

__all__ = ["EisensteinInt", "RecognitionResult", "mul", "conj", "norm", "unit", "recognize",
           "table_entry"]


@dataclass(frozen=True, slots=True)
class EisensteinInt:
    m: int
    n: int

    def __mul__(self, other: EisensteinInt) -> EisensteinInt:
        return mul(self, other)

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.m, -self.n)

    def conj(self) -> EisensteinInt:
        return conj(self)

    def norm(self) -> int:
        return norm(self)

    def __str__(self) -> str:
        return f"{self.m} + {self.n}*z6"


def mul(u: EisensteinInt, v: EisensteinInt) -> EisensteinInt:
    # (m1 + n1 z)(m2 + n2 z) = m1 m2 + (m1 n2 + n1 m2) z + n1 n2 (z - 1)
    return EisensteinInt(u.m * v.m - u.n * v.n, u.m * v.n + u.n * v.m + u.n * v.n)


def conj(u: EisensteinInt) -> EisensteinInt:
    # conj(z6) = 1 - z6
    return EisensteinInt(u.m + u.n, -u.n)


def norm(u: EisensteinInt) -> int:
    return u.m * u.m + u.m * u.n + u.n * u.n


_UNITS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def unit(k: int) -> EisensteinInt:
    """Return z6**k for 0 <= k <= 5."""
    if not 0 <= k <= 5:
        raise ValueError(f"unit index must be in 0..5, got {k}")
    return EisensteinInt(*_UNITS[k])


class RecognitionResult(NamedTuple):
    x: int
    #: 0..5 is z6**k * (x + z6), 6..11 is z6**(k-6) * conj(x + z6)
    form_index: int


def table_entry(x: int, form_index: int) -> EisensteinInt:
    """Entry ``form_index`` of the twelve unit multiples of x + z6 and its conjugate."""
    if not 0 <= form_index <= 11:
        raise ValueError(f"form_index must be in 0..11, got {form_index}")
    base = EisensteinInt(x, 1)
    if form_index >= 6:
        base = conj(base)
    return mul(unit(form_index % 6), base)


def _table(x: int) -> tuple[tuple[int, int], ...]:
    # closed forms of table_entry(x, 0..11)
    y = x + 1
    return ((x, 1), (-1, y), (-y, x), (-x, -1), (1, -y), (y, -x),
            (y, -1), (1, x), (-x, y), (-y, 1), (-1, -x), (x, -y))


def _solve_x(m: int, n: int) -> int | None:
    # Sign cases, tried in the fixed order m=1, m=-1, n=1, n=-1, m+n=1, m+n=-1.
    if m == 1:
        return n if n >= 0 else -n - 1
    if m == -1:
        return n - 1 if n >= 1 else -n
    if n == 1:
        return m if m >= 0 else -m - 1
    if n == -1:
        return -m if m <= 0 else m - 1
    if m + n == 1:
        return m - 1 if m >= 1 else -m
    if m + n == -1:
        return m if m >= 0 else -m - 1
    return None


def recognize(u: EisensteinInt) -> RecognitionResult | None:
    """Find x >= 0 with u a unit multiple of x + z6 or of its conjugate.

    Such an x exists exactly when m = +-1, n = +-1 or m + n = +-1, and it is
    unique.  The returned form index is the smallest one matching u.
    """
    x = _solve_x(u.m, u.n)
    if x is None:
        return None
    return RecognitionResult(x, _table(x).index((u.m, u.n)))
