"""Brute-force ground truth: every same-form factorization of phi3(x) up to a bound.

For each x the value phi3(x) is factored by sieving with the primes below the
bound (a prime p divides phi3(x) only for x in two residue classes mod p).
After that at most one prime factor remains, because phi3(x) < (x + 1)**2.
A row is a solution when every prime factor p is itself phi3(a) for some a.
"""
from __future__ import annotations

import logging
from array import array
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from . import kernels
from .families import Classification, Solution, classify
from .primality import ScaleError, factor, inv_phi3, phi3, primes_up_to

__all__ = [
    "ORACLE_LIMIT",
    "OracleReport",
    "sieve_tables",
    "iter_solutions",
    "enumerate_solutions",
    "completeness_check",
    "labels_for",
    "solution_record",
]

log = logging.getLogger(__name__)

#: largest x_max accepted; keeps 4*phi3(x) inside 64 bits for the sieve
ORACLE_LIMIT = 10**9
DEFAULT_CHUNK = 1 << 16


def _cube_root_of_unity(p: int) -> int:
    e = (p - 1) // 3
    g = 2
    while True:
        w = pow(g, e, p)
        if w != 1:
            return w
        g += 1


def sieve_tables(limit: int) -> tuple[array, array, bytes]:
    """Primes p <= limit dividing some phi3 value, their roots, and phi3-form flags."""
    primes = array("Q")
    roots = array("Q")
    form = bytearray()
    for p in primes_up_to(limit):
        if p == 3:
            r1 = r2 = 1
        elif p % 3 == 1:
            r1 = _cube_root_of_unity(p)
            r2 = p - 1 - r1
        else:
            continue
        primes.append(p)
        roots.extend((r1, r2))
        form.append(inv_phi3(p) is not None)
    return primes, roots, bytes(form)


def _check_bound(x_max: int) -> None:
    if x_max < 1:
        raise ValueError(f"x_max must be positive, got {x_max}")
    if x_max > ORACLE_LIMIT:
        raise ScaleError(f"x_max={x_max} exceeds the supported oracle bound {ORACLE_LIMIT}")


_TABLES: tuple | None = None


def _init_worker(tables) -> None:
    global _TABLES
    _TABLES = tables


def _solve_chunk(bounds: tuple[int, int, int], tables=None) -> list[Solution]:
    lo, hi, seed = bounds
    primes, roots, form = tables if tables is not None else _TABLES
    nfac, same = kernels.sieve_chunk(lo, hi, primes, roots, form)
    out = []
    for j, ok in enumerate(same):
        if not ok:
            continue
        x = lo + j
        if nfac[j] == 1:
            out.append(Solution(x, (x,)))
            continue
        # independent re-factorization; the sieve only told us where to look
        args = []
        for p, e in factor(phi3(x), seed):
            a = inv_phi3(p)
            if a is None:
                raise AssertionError(f"sieve marked x={x} same-form but {p} is not a phi3 value")
            args += [a] * e
        if len(args) != nfac[j]:
            raise AssertionError(f"sieve counted {nfac[j]} factors for x={x}, factor() found {len(args)}")
        out.append(Solution(x, tuple(args)))
    return out


def _chunks(x_max: int, chunk: int, seed: int) -> list[tuple[int, int, int]]:
    return [(lo, min(lo + chunk, x_max + 1), seed) for lo in range(1, x_max + 1, chunk)]


def iter_solutions(x_max: int, workers: int = 1, chunk: int = DEFAULT_CHUNK,
                   seed: int = 0) -> Iterator[Solution]:
    """Yield every solution with x <= x_max in increasing x, chunk by chunk.

    Single-factor rows (phi3(x) itself prime) are included; their args are
    just (x,).  The output does not depend on ``workers``, ``chunk`` or
    ``seed`` (which only steers Pollard-Brent inside :func:`factor`).
    """
    _check_bound(x_max)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    tables = sieve_tables(x_max)
    ranges = _chunks(x_max, chunk, seed)
    if workers == 1 or len(ranges) == 1:
        for bounds in ranges:
            yield from _solve_chunk(bounds, tables)
        return
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(tables,)) as pool:
        for part in pool.map(_solve_chunk, ranges):
            yield from part


def enumerate_solutions(x_max: int, workers: int = 1, chunk: int = DEFAULT_CHUNK,
                        seed: int = 0) -> list[Solution]:
    return list(iter_solutions(x_max, workers, chunk, seed))


def labels_for(sol: Solution, cls: Classification | None = None) -> list[str]:
    if sol.n == 1:
        return ["prime"]
    if sol.n >= 5:
        return ["unclassified"]
    cls = cls if cls is not None else classify(sol)
    return list(cls.labels)


def solution_record(sol: Solution, cls: Classification | None = None) -> dict:
    """Flat record with the fixed field order x, n, args, labels."""
    return {
        "x": sol.x,
        "n": sol.n,
        "args": ",".join(map(str, sol.args)),
        "labels": labels_for(sol, cls),
    }


@dataclass
class OracleReport:
    x_max: int
    solutions: dict[int, list[Solution]] = field(default_factory=dict)
    classifications: dict[int, Classification] = field(default_factory=dict)
    mismatches: list[Solution] = field(default_factory=list)

    def count(self, n: int) -> int:
        return len(self.solutions.get(n, []))

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        sizes = ", ".join(f"n={n}: {len(v)}" for n, v in sorted(self.solutions.items()))
        return f"x_max={self.x_max} ({sizes}); mismatches={len(self.mismatches)}"


def completeness_check(x_max: int, workers: int = 1, chunk: int = DEFAULT_CHUNK,
                       seed: int = 0) -> OracleReport:
    """Classify every n = 2, 3, 4 solution up to x_max and collect the failures."""
    report = OracleReport(x_max)
    for sol in iter_solutions(x_max, workers, chunk, seed):
        report.solutions.setdefault(sol.n, []).append(sol)
        if 2 <= sol.n <= 4:
            cls = classify(sol)
            report.classifications[sol.x] = cls
            if not cls:
                report.mismatches.append(sol)
    log.info("oracle %s", report.summary())
    return report
