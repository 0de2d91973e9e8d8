"""Same-form factorizations Phi_3(x) = prod Phi_3(a_i) for n = 2, 3, 4.

A solution corresponds to choosing, for every a_i, one of the two conjugate
Eisenstein primes a_i + z6 or 1 + a_i*z6 and asking the product to be a unit
multiple of x + z6 (or its conjugate).  This module holds the resulting
sporadic tables, the parameterized families and a classifier.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .eisenstein import EisensteinInt, mul, recognize
from .polynomial import VARIABLES, IntPolynomial
from .primality import inv_phi3, is_prime, phi3

__all__ = [
    "DIRECT",
    "TWISTED",
    "Solution",
    "Match",
    "Classification",
    "expand_product",
    "factor_element",
    "two_factor_family",
    "three_factor_family",
    "four_factor_family",
    "FOUR_FACTOR_FAMILIES",
    "sporadics",
    "ones_tuples",
    "compute_x",
    "x_from_product",
    "classify",
    "catalog",
]

DIRECT = "direct"    # a + z6
TWISTED = "twisted"  # 1 + a*z6


@dataclass(frozen=True)
class Solution:
    """x together with the multiset {a_1, ..., a_n}, args kept ascending.

    Construction checks the identity phi3(x) == prod phi3(a_i) but not the
    primality of the factors; use :meth:`verified` for that.
    """

    x: int
    args: tuple[int, ...]

    def __post_init__(self):
        args = tuple(sorted(int(a) for a in self.args))
        object.__setattr__(self, "args", args)
        if self.x < 1 or not args or args[0] < 1:
            raise ValueError(f"x and every a_i must be positive: {self.x}, {args}")
        if phi3(self.x) != math.prod(phi3(a) for a in args):
            raise ValueError(f"phi3({self.x}) != product of phi3 over {args}")

    @classmethod
    def verified(cls, x: int, args: Iterable[int]) -> Solution:
        sol = cls(x, tuple(args))
        if not sol.factors_prime():
            raise ValueError(f"not every phi3(a_i) is prime for {sol.args}")
        return sol

    @property
    def n(self) -> int:
        return len(self.args)

    def factors_prime(self) -> bool:
        return all(is_prime(phi3(a)) for a in set(self.args))

    def __str__(self) -> str:
        return f"x={self.x} args=({','.join(map(str, self.args))})"


@dataclass(frozen=True, order=True)
class Match:
    label: str
    #: indices into the sorted args giving the family's parameter order
    witness: tuple[int, ...]


@dataclass(frozen=True)
class Classification:
    x: int
    matches: tuple[Match, ...] = field(default_factory=tuple)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(m.label for m in self.matches))

    def __bool__(self) -> bool:
        return bool(self.matches)


def _check_selection(sel: Sequence[str]) -> None:
    if not 2 <= len(sel) <= 4:
        raise ValueError(f"selection length must be 2..4, got {len(sel)}")
    bad = [s for s in sel if s not in (DIRECT, TWISTED)]
    if bad:
        raise ValueError(f"unknown selection entries {bad}")


def factor_element(a: int, kind: str) -> EisensteinInt:
    return EisensteinInt(a, 1) if kind == DIRECT else EisensteinInt(1, a)


def expand_product(sel: Sequence[str]) -> tuple[IntPolynomial, IntPolynomial]:
    """Coefficients (m, n) of prod_i f_i as polynomials in a, b, c, d."""
    _check_selection(sel)
    one = IntPolynomial.constant(1)
    pm, pn = one, IntPolynomial()
    for name, kind in zip(VARIABLES, sel):
        v = IntPolynomial.var(name)
        fm, fn = (v, one) if kind == DIRECT else (one, v)
        pm, pn = pm * fm - pn * fn, pm * fn + pn * fm + pn * fn
    return pm, pn


# --- families -------------------------------------------------------------

def two_factor_family(a: int) -> Solution:
    if a < 1:
        raise ValueError(f"a must be positive, got {a}")
    return Solution((a + 1) ** 2, (a, a + 1))


def three_factor_family(a: int, b: int) -> Solution | None:
    """Member (a, b, ab/(a+b+1)) of the three-factor family, when c is integral."""
    if not 1 <= a <= b:
        raise ValueError(f"need 1 <= a <= b, got a={a}, b={b}")
    c, rem = divmod(a * b, a + b + 1)
    if rem or c < 1:
        return None
    return Solution(c * (a * b + a + b) + a + b, (a, b, c))


# each returns (numerator, denominator) of d
def _family_4_1(a, b, c):
    return a * b * c - a - b - c - 2, a * b + a * c + b * c + a + b + c


def _family_4_2(a, b, c):
    return a * b * c - a - b - c, a * b + a * c + b * c + a + b + c


def _family_4_3(a, b, c):
    return a * b * c + a * b + a + b - c - 1, a * c + b * c - a * b + c + 1


def _family_4_4(a, b, c):
    return a * b * c + a * b + a + b - c + 1, a * c + b * c - a * b + c + 1


def _ordered_abc(a, b, c):
    return a <= b <= c


def _min_first(a, b, c):
    return a <= b and a <= c


#: index -> (d as a function of (a, b, c), side condition, text form, side-condition text)
FOUR_FACTOR_FAMILIES = {
    1: (_family_4_1, _ordered_abc, "(abc-a-b-c-2)/(ab+ac+bc+a+b+c)", "a<=b<=c"),
    2: (_family_4_2, _ordered_abc, "(abc-a-b-c)/(ab+ac+bc+a+b+c)", "a<=b<=c"),
    3: (_family_4_3, _min_first, "(abc+ab+a+b-c-1)/(ac+bc-ab+c+1)", "a<=b and a<=c"),
    4: (_family_4_4, _min_first, "(abc+ab+a+b-c+1)/(ac+bc-ab+c+1)", "a<=b and a<=c"),
}


def four_factor_family(k: int, a: int, b: int, c: int) -> int | None:
    """d for the k-th four-factor family, or None unless it is a positive integer."""
    try:
        formula, side, _, side_text = FOUR_FACTOR_FAMILIES[k]
    except KeyError:
        raise ValueError(f"four-factor family index must be 1..4, got {k}") from None
    if min(a, b, c) < 1:
        raise ValueError("a, b, c must be positive")
    if not side(a, b, c):
        raise ValueError(f"family {k} requires {side_text}, got ({a}, {b}, {c})")
    num, den = formula(a, b, c)
    if den == 0:
        return None
    d, rem = divmod(num, den)
    if rem or d < 1:
        return None
    return d


# --- x from a multiset ----------------------------------------------------

def x_from_product(args: Iterable[int]) -> int | None:
    """Integer root x >= 1 of x^2 + x + 1 = prod phi3(a_i), if any."""
    x = inv_phi3(math.prod(phi3(a) for a in args))
    return x if x else None


def _recognized_x(args: Sequence[int], sel: Sequence[str]) -> int | None:
    prod = EisensteinInt(1, 0)
    for a, kind in zip(args, sel):
        prod = mul(prod, factor_element(a, kind))
    hit = recognize(prod)
    return hit.x if hit is not None else None


def compute_x(args: Sequence[int], sel: Sequence[str] | None = None) -> int | None:
    """x with phi3(x) = prod phi3(a_i), found through the Eisenstein product.

    With ``sel`` given only that choice of conjugates is tried; otherwise all
    of them.  The recognizer's answer is checked against the integer root of
    the product and a disagreement raises.
    """
    args = list(args)
    if not 2 <= len(args) <= 4:
        raise ValueError(f"compute_x supports 2..4 arguments, got {len(args)}")
    if sel is not None:
        _check_selection(sel)
        if len(sel) != len(args):
            raise ValueError("selection length differs from number of arguments")
        selections = [tuple(sel)]
    else:
        # conjugating everything conjugates the product, so fix the first entry
        selections = [(DIRECT,) + rest
                      for rest in itertools.product((DIRECT, TWISTED), repeat=len(args) - 1)]
    for choice in selections:
        x = _recognized_x(args, choice)
        if x is None or x < 1:
            continue
        other = x_from_product(args)
        if other is not None and other != x:
            raise AssertionError(f"recognizer x={x} disagrees with root x={other} for {args}")
        return x
    return None


# --- tables ---------------------------------------------------------------

_SPORADIC_3 = ((2, 2, 2, 18), (1, 2, 5, 25), (1, 3, 3, 22))
_SPORADIC_4 = ((2, 2, 2, 17), (2, 2, 3, 6))
_ONES_TUPLES = ((1, 2, 2, 5), (1, 2, 2, 6), (1, 2, 3, 15), (1, 2, 3, 17),
                (1, 2, 5, 24), (1, 2, 6, 14), (1, 2, 6, 15), (1, 3, 3, 21))


def sporadics(n: int) -> list[Solution]:
    if n == 3:
        return [Solution(row[3], row[:3]) for row in _SPORADIC_3]
    if n == 4:
        out = []
        for row in _SPORADIC_4:
            x = compute_x(row)
            if x is None:
                raise AssertionError(f"no x for sporadic {row}")
            out.append(Solution(x, row))
        return out
    raise ValueError(f"sporadic tables exist for n = 3 and 4, got {n}")


def ones_tuples() -> list[Solution]:
    """The eight four-factor solutions having an entry equal to 1."""
    out = []
    for row in _ONES_TUPLES:
        x = compute_x(row)
        if x is None:
            raise AssertionError(f"no x for {row}")
        out.append(Solution(x, row))
    return out


def _sporadic_label(args) -> str:
    return "sporadic:" + ",".join(map(str, args))


# --- classification -------------------------------------------------------

def _matches_n2(sol: Solution) -> list[Match]:
    a, b = sol.args
    if b == a + 1 and two_factor_family(a) == sol:
        return [Match("family-2", (0, 1))]
    return []


def _matches_n3(sol: Solution) -> list[Match]:
    out = []
    for row in _SPORADIC_3:
        if sol.args == row[:3] and sol.x == row[3]:
            out.append(Match(_sporadic_label(row[:3]), (0, 1, 2)))
    seen = set()
    for perm in itertools.permutations(range(3)):
        a, b, c = (sol.args[i] for i in perm)
        if a > b or (a, b, c) in seen:
            continue
        seen.add((a, b, c))
        fam = three_factor_family(a, b)
        if fam is not None and fam.args == sol.args and fam.x == sol.x and (a * b) // (a + b + 1) == c:
            out.append(Match("family-3", perm))
    return out


def _matches_n4(sol: Solution) -> list[Match]:
    out = []
    for row in _SPORADIC_4:
        if sol.args == row:
            out.append(Match(_sporadic_label(row), (0, 1, 2, 3)))
    for k, (_, side, _, _) in FOUR_FACTOR_FAMILIES.items():
        seen = set()
        for perm in itertools.permutations(range(4)):
            a, b, c, d = (sol.args[i] for i in perm)
            if not side(a, b, c) or (a, b, c, d) in seen:
                continue
            seen.add((a, b, c, d))
            if four_factor_family(k, a, b, c) == d and x_from_product((a, b, c, d)) == sol.x:
                out.append(Match(f"family-4.{k}", perm))
    return out


def classify(sol: Solution) -> Classification:
    """Every sporadic entry or family that reproduces ``sol``, with witnesses.

    Family identities are polynomial, so primality of the factors is not
    required here.
    """
    handlers = {2: _matches_n2, 3: _matches_n3, 4: _matches_n4}
    if sol.n not in handlers:
        raise ValueError(f"classification covers n = 2, 3, 4; got n = {sol.n}")
    # permutations giving the same parameter tuple are already collapsed above
    return Classification(sol.x, tuple(sorted(handlers[sol.n](sol))))


def catalog() -> list[dict]:
    """Machine-readable description of every family and sporadic table entry."""
    rows = [
        {"kind": "family", "id": "family-2", "n": 2,
         "formula": "(a, a+1), x=(a+1)^2", "side_conditions": "a>=1"},
        {"kind": "family", "id": "family-3", "n": 3,
         "formula": "c=ab/(a+b+1), x=c(ab+a+b)+a+b", "side_conditions": "a<=b"},
    ]
    for k, (_, _, text, side_text) in FOUR_FACTOR_FAMILIES.items():
        rows.append({"kind": "family", "id": f"family-4.{k}", "n": 4,
                     "formula": f"d={text}", "side_conditions": side_text})
    for n in (3, 4):
        for sol in sporadics(n):
            rows.append({"kind": "sporadic", "id": _sporadic_label(sol.args), "n": n,
                         "args": list(sol.args), "x": sol.x})
    return rows
