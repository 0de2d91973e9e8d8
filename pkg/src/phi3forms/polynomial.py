"""Sparse multivariate polynomials with integer coefficients over a, b, c, d."""
from __future__ import annotations

from typing import Mapping, Union

VARIABLES = ("a", "b", "c", "d")
_NVARS = len(VARIABLES)

Monomial = tuple[int, int, int, int]


class IntPolynomial:
    """Immutable polynomial stored as ``{exponent vector: coefficient}``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term dictionaries are.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms = {mono: coef for mono, coef in (terms or {}).items() if coef}

    @classmethod
    def constant(cls, value: int) -> IntPolynomial:
        return cls({(0,) * _NVARS: value})

    @classmethod
    def var(cls, name: str) -> IntPolynomial:
        exps = [0] * _NVARS
        exps[VARIABLES.index(name)] = 1
        return cls({tuple(exps): 1})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def _coerce(self, other: Union[IntPolynomial, int]) -> IntPolynomial:
        return other if isinstance(other, IntPolynomial) else IntPolynomial.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for mono, coef in other._terms.items():
            out[mono] = out.get(mono, 0) + coef
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial({mono: -coef for mono, coef in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __call__(self, *values: int) -> int:
        """Evaluate at (a, b, c, d); missing trailing values default to 0."""
        point = list(values) + [0] * (_NVARS - len(values))
        total = 0
        for mono, coef in self._terms.items():
            term = coef
            for v, e in zip(point, mono):
                if e:
                    term *= v ** e
            total += term
        return total

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        # graded, then lexicographic in a > b > c > d
        order = sorted(self._terms, key=lambda m: (-sum(m), tuple(-e for e in m)))
        parts = []
        for mono in order:
            coef = self._terms[mono]
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(VARIABLES, mono) if e]
            body = "*".join(factors)
            mag = abs(coef)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            sign = "-" if coef < 0 else "+"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"IntPolynomial({self})"
