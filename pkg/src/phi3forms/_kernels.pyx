# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in ``_pykernels``; same signatures and results."""

from libc.stdint cimport int64_t, uint64_t
from libc.math cimport sqrtl
from libc.stdlib cimport malloc, free

import math

cdef extern from *:
    ctypedef long long i128 "__int128"

#: largest M handled with 64-bit arithmetic by anchor_pairs
ANCHOR_LIMIT = (1 << 62)
#: s = da + d + 1 below this uses 128-bit arithmetic; larger falls back to Python
ANCHOR_WIDE_LIMIT = (1 << 61)


cdef inline uint64_t _isqrt(uint64_t v) nogil:
    cdef uint64_t r = <uint64_t> sqrtl(<long double> v)
    while r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


def sieve_chunk(lo, hi, primes, roots, prime_form):
    cdef int64_t clo = lo, chi = hi
    cdef Py_ssize_t size = chi - clo, j, i, nprimes = len(primes)
    cdef uint64_t x, v, p, r, disc, s
    cdef int64_t start
    cdef int cnt, form
    if size <= 0:
        return [], []
    if chi > 2000000000:
        raise OverflowError("sieve_chunk supports x < 2e9")
    cdef uint64_t *res = <uint64_t *> malloc(size * sizeof(uint64_t))
    cdef signed char *nfac = <signed char *> malloc(size)
    cdef unsigned char *same = <unsigned char *> malloc(size)
    cdef const unsigned long long[:] cprimes = primes
    cdef const unsigned long long[:] croots = roots
    cdef const unsigned char[:] cform = prime_form
    try:
        for j in range(size):
            x = <uint64_t> (clo + j)
            res[j] = x * x + x + 1
            nfac[j] = 0
            same[j] = 1
        for i in range(nprimes):
            p = cprimes[i]
            if <int64_t> p >= chi:
                break
            form = cform[i]
            for cnt in range(2):
                r = croots[2 * i + cnt]
                if cnt == 1 and r == croots[2 * i]:
                    break
                start = (<int64_t> r - clo) % <int64_t> p
                if start < 0:
                    start += p
                j = start
                while j < size:
                    v = res[j]
                    while v % p == 0:
                        v //= p
                        nfac[j] += 1
                    res[j] = v
                    if not form:
                        same[j] = 0
                    j += p
        for j in range(size):
            v = res[j]
            if v > 1:
                nfac[j] += 1
                disc = 4 * v - 3
                s = _isqrt(disc)
                if s * s != disc:
                    same[j] = 0
        return [nfac[j] for j in range(size)], [same[j] for j in range(size)]
    finally:
        free(res)
        free(nfac)
        free(same)


def anchor_pairs(d, a, t):
    k_py = a - d
    if k_py <= 0:
        return []
    s_py = d * a + d + 1
    M_py = k_py * (a + t + d * a) + s_py * s_py
    if M_py >= ANCHOR_LIMIT:
        if s_py < ANCHOR_WIDE_LIMIT:
            return _anchor_pairs_wide(k_py, s_py, a, a + t + d * a, math.isqrt(M_py))
        from ._pykernels import anchor_pairs as slow
        return slow(d, a, t)
    cdef int64_t k = k_py, s = s_py, M = M_py, ca = a
    cdef int64_t r = <int64_t> _isqrt(<uint64_t> M)
    cdef int64_t rc = r if r * r == M else r + 1
    cdef int64_t b, b_end, e, num, c
    out = []
    b = ca
    b_end = (s - rc) // k if s >= rc else ca - 1
    while b <= b_end:
        e = s - k * b
        if e > 0 and M % e == 0:
            num = s - M // e
            if num % k == 0:
                c = num // k
                if c >= b:
                    out.append((b, c))
        b += 1
    b = s // k + 1
    if b < ca:
        b = ca
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


cdef list _anchor_pairs_wide(int64_t k, int64_t s, int64_t ca, int64_t lin, int64_t r):
    # same scan as the 64-bit path with M = k*lin + s^2 held in 128 bits
    cdef i128 M = <i128> k * lin + <i128> s * s
    cdef i128 e, num
    cdef int64_t rc = r if <i128> r * r == M else r + 1
    cdef int64_t b, b_end, c
    out = []
    b = ca
    b_end = (s - rc) // k if s >= rc else ca - 1
    while b <= b_end:
        e = s - <i128> k * b
        if e > 0 and M % e == 0:
            num = s - M // e
            if num % k == 0:
                c = <int64_t> (num // k)
                if c >= b:
                    out.append((b, c))
        b += 1
    b = s // k + 1
    if b < ca:
        b = ca
    b_end = (s + r) // k
    while b <= b_end:
        e = <i128> k * b - s
        if M % e == 0:
            num = M // e + s
            if num % k == 0:
                # c can exceed 64 bits here
                num = num // k
                if num >= b:
                    out.append((b, int(<int64_t> (num >> 64)) << 64 | int(<uint64_t> num)))
        b += 1
    return out
