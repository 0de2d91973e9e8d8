"""Evaluation and inversion of Phi_3, primality testing and small-scale factoring.

Primality is deterministic below 2**64 (Miller-Rabin over the first twelve
prime bases, which is known to be complete there) and BPSW above it.  The
verdict carries a method tag so callers can tell a certified answer from a
probable one.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "COMPOSITE",
    "PRIME_DETERMINISTIC",
    "PROBABLE_PRIME",
    "DETERMINISTIC_LIMIT",
    "FACTOR_LIMIT",
    "PrimalityEvidence",
    "ScaleError",
    "phi3",
    "inv_phi3",
    "is_prime",
    "isprime",
    "factor",
    "primes_up_to",
]

COMPOSITE = "composite"
PRIME_DETERMINISTIC = "prime-deterministic"
PROBABLE_PRIME = "probable-prime"

#: every n below this gets an unconditional verdict
DETERMINISTIC_LIMIT = 1 << 64
#: largest input accepted by :func:`factor`
FACTOR_LIMIT = 1 << 64

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


class ScaleError(ValueError):
    """Input is outside the range an operation supports."""


@dataclass(frozen=True)
class PrimalityEvidence:
    """Verdict of :func:`is_prime` plus the name of the test that produced it.

    Truthy when the verdict is not composite, so ``if is_prime(n):`` reads
    naturally.
    """

    verdict: str
    method: str

    def __bool__(self) -> bool:
        return self.verdict != COMPOSITE

    @property
    def deterministic(self) -> bool:
        return self.verdict != PROBABLE_PRIME

    def tag(self) -> str:
        return f"{self.verdict}/{self.method}"


def phi3(t: int) -> int:
    """Return t**2 + t + 1."""
    if t < 0:
        raise ValueError(f"phi3 expects a nonnegative argument, got {t}")
    return t * t + t + 1


def inv_phi3(p: int) -> int | None:
    """Return the a >= 0 with a**2 + a + 1 == p, or None if there is none."""
    if p < 1:
        raise ValueError(f"inv_phi3 expects a positive argument, got {p}")
    disc = 4 * p - 3
    r = math.isqrt(disc)
    if r * r != disc:
        return None
    # disc is odd, so r is odd and (r - 1) / 2 is exact
    return (r - 1) // 2


def _strong_probable_prime(n: int, base: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    y = pow(base, d, n)
    if y == 1 or y == n - 1:
        return True
    for _ in range(s - 1):
        y = y * y % n
        if y == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge method A parameters
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and math.isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4

    d = n + 1
    s = (d & -d).bit_length() - 1
    d >>= s

    # binary ladder for U_d, V_d, Q^d
    U, V, Qk = 1, P, Q % n
    inv2 = (n + 1) // 2
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> PrimalityEvidence:
    """Test n for primality.

    Returns ``prime-deterministic`` or ``composite`` for n < 2**64 and
    ``probable-prime`` (BPSW) for larger primes.  n = 1 is reported as
    composite, i.e. not prime.
    """
    if n < 1:
        raise ValueError(f"is_prime expects a positive integer, got {n}")
    if n == 1:
        return PrimalityEvidence(COMPOSITE, "unit")
    for p in _SMALL_PRIMES:
        if n == p:
            return PrimalityEvidence(PRIME_DETERMINISTIC, "trial")
        if n % p == 0:
            return PrimalityEvidence(COMPOSITE, "trial")
    if n < 97 * 97:
        return PrimalityEvidence(PRIME_DETERMINISTIC, "trial")
    if n < DETERMINISTIC_LIMIT:
        for base in _MR_BASES:
            if not _strong_probable_prime(n, base):
                return PrimalityEvidence(COMPOSITE, "miller-rabin")
        return PrimalityEvidence(PRIME_DETERMINISTIC, "miller-rabin-64")
    if not _strong_probable_prime(n, 2):
        return PrimalityEvidence(COMPOSITE, "miller-rabin")
    if not _strong_lucas_probable_prime(n):
        return PrimalityEvidence(COMPOSITE, "strong-lucas")
    return PrimalityEvidence(PROBABLE_PRIME, "bpsw")


def isprime(n: int) -> bool:
    """Boolean shortcut for :func:`is_prime`; 0 and 1 are not prime."""
    return n > 1 and bool(is_prime(n))


def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes, primes p <= limit."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_LIMIT = 1 << 12
_TRIAL_PRIMES = primes_up_to(_TRIAL_LIMIT)


def _brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor(n: int, seed: int = 0) -> list[tuple[int, int]]:
    """Factor n completely into ``[(prime, exponent), ...]`` ascending.

    Trial division clears small primes, Pollard-Brent splits what remains.
    Inputs at or above :data:`FACTOR_LIMIT` raise :class:`ScaleError` rather
    than returning a partial answer.
    """
    if n < 1:
        raise ValueError(f"factor expects a positive integer, got {n}")
    if n >= FACTOR_LIMIT:
        raise ScaleError(f"factor supports n < 2**64, got a {n.bit_length()}-bit input")
    counts: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    rng = random.Random(seed)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < _TRIAL_LIMIT * _TRIAL_LIMIT or isprime(m):
            # trial division above already removed every prime below the limit
            counts[m] = counts.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _brent(m, rng)
        stack += [f, m // f]
    return sorted(counts.items())


def multiply_out(factorization: Iterable[tuple[int, int]]) -> int:
    out = 1
    for p, e in factorization:
        out *= p ** e
    return out
