"""Threats: same-form factorizations where x, every a_i and every phi3(a_i) are prime.

There are no double or triple threats.  Quadruple threats exist, e.g.
phi3(191) = phi3(2) phi3(3) phi3(3) phi3(5); odd ones can only come from the
first four-factor family, whose computed d is always the smallest entry.
Searching those by their two smallest entries (d, a) is finite per anchor
because a <= 3d + 2 is forced, see :func:`max_second_entry`.
"""
from __future__ import annotations

import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import kernels
from .families import (FOUR_FACTOR_FAMILIES, Solution, compute_x, four_factor_family,
                       ones_tuples, sporadics)
from .oracle import iter_solutions
from .primality import PrimalityEvidence, inv_phi3, is_prime, isprime, phi3, primes_up_to

__all__ = [
    "ThreatCertificate",
    "CheckpointError",
    "FixtureError",
    "is_n_threat",
    "no_double_triple_threats",
    "search_quadruple_threats",
    "search_odd_quadruple_threats",
    "min_prime_factor_scan",
    "max_second_entry",
    "load_fixture",
    "verify_fixture",
    "DEFAULT_FIXTURE",
]

log = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "phi3forms-checkpoint"
CHECKPOINT_VERSION = 1


class FixtureError(Exception):
    """Fixture file missing or malformed."""


class CheckpointError(Exception):
    """Checkpoint file unreadable or written by an incompatible run."""


@dataclass(frozen=True)
class ThreatCertificate:
    x: int
    args: tuple[int, ...]
    #: quantity name -> evidence, in the order x, a1..an, phi3(a1)..phi3(an)
    evidence: dict[str, PrimalityEvidence]

    @property
    def n(self) -> int:
        return len(self.args)

    @property
    def quantities(self) -> dict[str, int]:
        out = {"x": self.x}
        for i, a in enumerate(self.args, 1):
            out[f"a{i}"] = a
        for i, a in enumerate(self.args, 1):
            out[f"phi3(a{i})"] = phi3(a)
        return out

    @property
    def deterministic(self) -> bool:
        return all(ev.deterministic for ev in self.evidence.values())

    @property
    def odd(self) -> bool:
        return all(q % 2 for q in self.quantities.values())

    def revalidate(self) -> bool:
        """Recheck the product identity and every primality verdict from scratch."""
        if phi3(self.x) != math.prod(phi3(a) for a in self.args):
            return False
        for name, value in self.quantities.items():
            ev = is_prime(value)
            if not ev or ev != self.evidence.get(name):
                return False
        return True

    def record(self) -> dict:
        return {
            "n": self.n,
            "x": self.x,
            "args": list(self.args),
            "evidence": {name: ev.tag() for name, ev in self.evidence.items()},
        }

    @classmethod
    def from_record(cls, rec: dict) -> ThreatCertificate:
        cert = is_n_threat(int(rec["x"]), [int(a) for a in rec["args"]])
        if cert is None or cert.record() != rec:
            raise CheckpointError(f"stored certificate does not revalidate: {rec}")
        return cert


def is_n_threat(x: int, args: Iterable[int]) -> ThreatCertificate | None:
    """Certificate when all 2n + 1 quantities are prime, else None.

    Raises ValueError if (x, args) does not satisfy the product identity.
    """
    sol = Solution(x, tuple(args))
    evidence = {}
    quantities = [("x", x)]
    quantities += [(f"a{i}", a) for i, a in enumerate(sol.args, 1)]
    quantities += [(f"phi3(a{i})", phi3(a)) for i, a in enumerate(sol.args, 1)]
    for name, value in quantities:
        ev = is_prime(value)
        if not ev:
            return None
        evidence[name] = ev
    return ThreatCertificate(sol.x, sol.args, evidence)


# --- double and triple threats --------------------------------------------

@dataclass
class ThreatSweepReport:
    bound: int
    double_threats: list[ThreatCertificate] = field(default_factory=list)
    triple_threats: list[ThreatCertificate] = field(default_factory=list)
    structural_violations: list[str] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not (self.double_threats or self.triple_threats or self.structural_violations)


def no_double_triple_threats(bound: int, pair_bound: int | None = None) -> ThreatSweepReport:
    """Structural and empirical check that no n = 2 or n = 3 threat exists.

    Structural part: x = (a+1)^2 is never prime; in the three-factor family
    with primes a <= b <= pair_bound (default min(bound, 2000)), c = ab/(a+b+1) is below both a and b
    while dividing ab, so c = 1; the sporadic x values are composite.
    Empirical part: no oracle solution with x <= bound is a threat.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    report = ThreatSweepReport(bound)
    for a in range(1, bound + 1):
        if isprime((a + 1) ** 2):
            report.structural_violations.append(f"two-factor x=({a}+1)^2 prime")
    report.checked["two_factor_params"] = bound

    primes = primes_up_to(pair_bound if pair_bound is not None else min(bound, 2000))
    pairs = 0
    for i, a in enumerate(primes):
        for b in primes[i:]:
            c, rem = divmod(a * b, a + b + 1)
            if rem or c < 1:
                continue
            pairs += 1
            if not (c < a and c < b and (a * b) % c == 0):
                report.structural_violations.append(f"three-factor ({a},{b},{c}) breaks c < min(a,b)")
            if isprime(c):
                report.structural_violations.append(f"three-factor ({a},{b},{c}) has prime c")
    report.checked["three_factor_family_pairs"] = pairs

    for sol in sporadics(3):
        if isprime(sol.x):
            report.structural_violations.append(f"sporadic {sol} has prime x")

    swept = 0
    for sol in iter_solutions(bound):
        if sol.n not in (2, 3):
            continue
        swept += 1
        cert = is_n_threat(sol.x, sol.args)
        if cert is not None:
            (report.double_threats if sol.n == 2 else report.triple_threats).append(cert)
    report.checked["oracle_solutions"] = swept
    return report


# --- checkpointed anchored searches ---------------------------------------

class _Checkpoint:
    """Resumable state: last finished anchor plus the certificates found so far.

    Written atomically (temporary file, then rename).
    """

    def __init__(self, path: str | os.PathLike | None, search: str, params: dict):
        self.path = Path(path) if path is not None else None
        self.search = search
        self.params = params
        self.last_anchor: int | None = None
        self.anchor_counts: dict[int, int] = {}
        self.certificates: list[ThreatCertificate] = []

    def load(self) -> None:
        if self.path is None or not self.path.exists():
            return
        try:
            state = json.loads(self.path.read_text())
        except (OSError, ValueError) as exc:
            raise CheckpointError(f"cannot read checkpoint {self.path}: {exc}") from exc
        if state.get("format") != CHECKPOINT_FORMAT or state.get("version") != CHECKPOINT_VERSION:
            raise CheckpointError(
                f"checkpoint {self.path} has format {state.get('format')!r} "
                f"version {state.get('version')!r}, expected {CHECKPOINT_FORMAT!r} "
                f"version {CHECKPOINT_VERSION}")
        if state.get("search") != self.search or state.get("params") != self.params:
            raise CheckpointError(f"checkpoint {self.path} belongs to a different search")
        self.last_anchor = state["last_anchor"]
        self.anchor_counts = {int(k): v for k, v in state["anchor_counts"].items()}
        self.certificates = [ThreatCertificate.from_record(r) for r in state["certificates"]]

    def save(self) -> None:
        if self.path is None:
            return
        state = {
            "format": CHECKPOINT_FORMAT,
            "version": CHECKPOINT_VERSION,
            "search": self.search,
            "params": self.params,
            "last_anchor": self.last_anchor,
            "anchor_counts": {str(k): v for k, v in sorted(self.anchor_counts.items())},
            "certificates": [c.record() for c in self.certificates],
        }
        tmp = self.path.with_name(self.path.name + ".tmp")
        tmp.write_text(json.dumps(state, indent=1) + "\n")
        os.replace(tmp, self.path)


def _canonical(certs: Iterable[ThreatCertificate]) -> list[ThreatCertificate]:
    unique = {(c.x, c.args): c for c in certs}
    return [unique[key] for key in sorted(unique)]


def _run_anchors(search: str, params: dict, anchors: Sequence[int],
                 work: Callable[[int], tuple[int, list[ThreatCertificate]]],
                 checkpoint, workers: int,
                 progress: Callable[[int, int, list], None] | None) -> _Checkpoint:
    state = _Checkpoint(checkpoint, search, params)
    state.load()
    todo = [d for d in anchors if state.last_anchor is None or d > state.last_anchor]

    def absorb(anchor, result):
        count, certs = result
        state.anchor_counts[anchor] = count
        state.certificates = _canonical(state.certificates + certs)
        state.last_anchor = anchor
        state.save()
        if progress is not None:
            progress(anchor, count, certs)

    try:
        if workers <= 1 or len(todo) <= 1:
            for anchor in todo:
                absorb(anchor, work(anchor))
        else:
            with ProcessPoolExecutor(workers) as pool:
                for anchor, result in zip(todo, pool.map(work, todo)):
                    absorb(anchor, result)
    except KeyboardInterrupt:
        state.save()
        raise
    return state


@lru_cache(maxsize=None)
def _eligible(q: int) -> bool:
    """q can appear in a threat: q and phi3(q) are both prime."""
    return isprime(q) and isprime(phi3(q))


def _threat_entries(lo: int, hi: int) -> list[int]:
    return [q for q in primes_up_to(hi) if q >= lo and _eligible(q)]


def _family_threats(k: int, a: int, bc: Sequence[int]) -> list[ThreatCertificate]:
    _, side, _, _ = FOUR_FACTOR_FAMILIES[k]
    out = []
    for b in bc:
        for c in bc:
            if not side(a, b, c):
                continue
            d = four_factor_family(k, a, b, c)
            if d is None or not _eligible(d):
                continue
            x = compute_x((a, b, c, d))
            if x is None:
                raise AssertionError(f"family {k} member {(a, b, c, d)} has no x")
            cert = is_n_threat(x, (a, b, c, d))
            if cert is not None:
                out.append(cert)
    return out


class _QuadAnchor:
    def __init__(self, entry_bound: int):
        self.entries = _threat_entries(1, entry_bound)

    def __call__(self, a: int) -> tuple[int, list[ThreatCertificate]]:
        if a == 0:
            certs = [is_n_threat(s.x, s.args) for s in sporadics(4) + ones_tuples()]
            return 0, [c for c in certs if c is not None]
        rest = [q for q in self.entries if q >= a]
        certs = []
        for k in FOUR_FACTOR_FAMILIES:
            certs += _family_threats(k, a, rest)
        return len(rest), certs


def search_quadruple_threats(entry_bound: int, workers: int = 1, checkpoint=None,
                             progress=None) -> list[ThreatCertificate]:
    """Quadruple threats among the sporadics, the 1-containing tuples and the
    four families with parameters a, b, c <= entry_bound; sorted by x.

    Only parameters that are primes with prime phi3 value are tried, since
    every entry of a threat must be one.
    """
    if entry_bound < 1:
        raise ValueError("entry_bound must be positive")
    work = _QuadAnchor(entry_bound)
    state = _run_anchors("quad", {"entry_bound": entry_bound}, [0] + work.entries,
                         work, checkpoint, workers, progress)
    return state.certificates


def max_second_entry(d: int) -> int:
    """Upper bound on the second-smallest entry a of a first- or second-family
    quadruple whose smallest entry is d.

    With k = a - d and s = da + d + 1 the family equation reads
    (kb - s)(kc - s) = k(a + t + da) + s^2 (t = 2 or 0).  For a >= 3d + 3 one
    has kb - s >= ka - s > 0 and (ka - s)^2 exceeds the right side, which
    rules out b >= a.
    """
    return 3 * d + 2


class _OddAnchor:
    def __init__(self, t: int = 2):
        self.t = t

    def __call__(self, d: int) -> tuple[int, list[ThreatCertificate]]:
        family = 1 if self.t == 2 else 2
        count = 0
        certs = []
        for a in _threat_entries(d + 1, max_second_entry(d)):
            for b, c in kernels.anchor_pairs(d, a, self.t):
                count += 1
                if not (_eligible(b) and _eligible(c)):
                    continue
                if four_factor_family(family, a, b, c) != d:
                    raise AssertionError(f"anchor kernel returned non-member {(d, a, b, c)}")
                x = compute_x((d, a, b, c))
                cert = is_n_threat(x, (d, a, b, c)) if x is not None else None
                if cert is not None and cert.odd:
                    certs.append(cert)
        return count, certs


def _odd_anchors(d_max: int) -> list[int]:
    return _threat_entries(3, d_max)


def search_odd_quadruple_threats(a_max: int, workers: int = 1, checkpoint=None,
                                 progress=None, family: int = 1) -> list[ThreatCertificate]:
    """Odd quadruple threats in the first family whose smallest entry is <= a_max.

    Anchors are the smallest entry d; for each, the second entry runs over
    threat-eligible primes up to :func:`max_second_entry` and the remaining
    pair comes from :func:`kernels.anchor_pairs`.
    """
    if a_max < 1:
        raise ValueError("a_max must be positive")
    if family not in (1, 2):
        raise ValueError("anchored search covers families 1 and 2")
    state = _run_anchors(f"odd-quad-{family}", {"a_max": a_max}, _odd_anchors(a_max),
                         _OddAnchor(2 if family == 1 else 0), checkpoint, workers, progress)
    return state.certificates


@dataclass
class MinFactorReport:
    q_bound: int
    #: largest smallest-entry d with phi3(d) <= q_bound
    d_max: int
    anchor_counts: dict[int, int]
    certificates: list[ThreatCertificate]

    @property
    def certified(self) -> bool:
        return not self.certificates

    @property
    def candidates(self) -> int:
        return sum(self.anchor_counts.values())


def min_prime_factor_scan(q_bound: int, workers: int = 1, checkpoint=None,
                          progress=None) -> MinFactorReport:
    """Rule out odd quadruple threats whose smallest prime factor is <= q_bound.

    The smallest prime factor of phi3(x) is phi3(d) for the smallest entry d,
    so this is the anchored search over every eligible d with phi3(d) <= q_bound.
    """
    if q_bound < 1:
        raise ValueError("q_bound must be positive")
    r = math.isqrt(4 * q_bound - 3)
    d_max = max((r - 1) // 2, 0)
    while phi3(d_max + 1) <= q_bound:
        d_max += 1
    state = _run_anchors("min-factor", {"q_bound": q_bound}, _odd_anchors(d_max),
                         _OddAnchor(2), checkpoint, workers, progress)
    return MinFactorReport(q_bound, d_max, dict(state.anchor_counts), state.certificates)


# --- fixture ---------------------------------------------------------------

DEFAULT_FIXTURE = "odd_quadruple_threat.txt"


def load_fixture(path: str | os.PathLike | None = None) -> tuple[int, tuple[int, ...]]:
    """Read x and the args from a fixture file (one decimal integer per line)."""
    try:
        if path is None:
            text = resources.files("phi3forms").joinpath("data").joinpath(DEFAULT_FIXTURE).read_text()
        else:
            text = Path(path).read_text()
    except OSError as exc:
        raise FixtureError(f"cannot read fixture: {exc}") from exc
    values = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.isdigit():
            raise FixtureError(f"fixture line is not a decimal integer: {line!r}")
        values.append(int(line))
    if len(values) < 3:
        raise FixtureError(f"fixture needs x and at least two args, found {len(values)} values")
    return values[0], tuple(values[1:])


@dataclass
class FixtureResult:
    x: int
    args: tuple[int, ...]
    identity: bool
    certificate: ThreatCertificate | None

    @property
    def ok(self) -> bool:
        return self.identity and self.certificate is not None


def verify_fixture(path: str | os.PathLike | None = None) -> FixtureResult:
    """Exact product identity plus primality evidence for every quantity."""
    x, args = load_fixture(path)
    identity = phi3(x) == math.prod(phi3(a) for a in args)
    cert = is_n_threat(x, args) if identity else None
    return FixtureResult(x, tuple(sorted(args)), identity, cert)
