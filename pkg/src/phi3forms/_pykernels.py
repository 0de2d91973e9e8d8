"""Pure-Python implementations of the hot loops (fallback for ``_kernels``).

Both modules expose the same functions with the same results; see
``phi3forms.kernels`` for the dispatch.
"""
from __future__ import annotations

import math


def sieve_chunk(lo, hi, primes, roots, prime_form):
    """Factor phi3(x) for lo <= x < hi by sieving with the given primes.

    ``primes`` must hold every prime p < hi that can divide some phi3(x)
    (3 and the primes 1 mod 3), ``roots[2*i]``, ``roots[2*i+1]`` the roots of
    t^2 + t + 1 mod primes[i] and ``prime_form[i]`` whether primes[i] is itself
    a phi3 value.  Returns ``(nfac, same_form)``: the number of prime factors of
    phi3(x) with multiplicity and whether all of them are phi3 values.
    """
    size = hi - lo
    res = [x * x + x + 1 for x in range(lo, hi)]
    nfac = [0] * size
    same = [1] * size
    for i, p in enumerate(primes):
        if p >= hi:
            break
        form = prime_form[i]
        r1, r2 = roots[2 * i], roots[2 * i + 1]
        for r in (r1, r2) if r1 != r2 else (r1,):
            start = (r - lo) % p
            for j in range(start, size, p):
                v = res[j]
                cnt = 0
                while v % p == 0:
                    v //= p
                    cnt += 1
                res[j] = v
                nfac[j] += cnt
                if not form:
                    same[j] = 0
    for j in range(size):
        v = res[j]
        if v > 1:
            # at most one prime factor of phi3(x) exceeds x
            nfac[j] += 1
            disc = 4 * v - 3
            r = math.isqrt(disc)
            if r * r != disc:
                same[j] = 0
    return nfac, same


def anchor_pairs(d, a, t):
    """All (b, c) with a <= b <= c solving the anchored four-factor equation.

    The equation is abc - a - b - c - t = d(ab + ac + bc + a + b + c) with
    d < a fixed; t = 2 is the first four-factor family, t = 0 the second.
    Writing k = a - d and s = da + d + 1 it becomes
    (kb - s)(kc - s) = k(a + t + da) + s^2, so b ranges over divisor
    candidates on both sides of s/k.
    """
    k = a - d
    if k <= 0:
        return []
    s = d * a + d + 1
    M = k * (a + t + d * a) + s * s
    r = math.isqrt(M)
    rc = r if r * r == M else r + 1
    out = []
    # kb - s < 0: both factors negative, |kb - s| >= sqrt(M) so that c >= b
    b = a
    b_end = (s - rc) // k
    while b <= b_end:
        e = s - k * b
        if e > 0 and M % e == 0:
            num = s - M // e
            if num % k == 0:
                c = num // k
                if c >= b:
                    out.append((b, c))
        b += 1
    # kb - s > 0 and kb - s <= sqrt(M)
    b = max(a, s // k + 1)
    b_end = (s + r) // k
    while b <= b_end:
        e = k * b - s
        if M % e == 0:
            num = M // e + s
            if num % k == 0:
                c = num // k
                if c >= b:
                    out.append((b, c))
        b += 1
    return out
