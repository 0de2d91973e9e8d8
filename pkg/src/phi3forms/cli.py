"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 configuration error, 3 fixture
error, 4 scale error, 5 checkpoint error, 130 interrupted.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import TextIO

from . import __version__
from .families import (DIRECT, TWISTED, Solution, catalog, classify, compute_x, expand_product,
                       ones_tuples, sporadics, two_factor_family)
from .kernels import BACKEND
from .oracle import ORACLE_LIMIT, completeness_check, iter_solutions, labels_for, solution_record
from .polynomial import IntPolynomial
from .primality import ScaleError, factor, inv_phi3, phi3
from .threats import (CheckpointError, FixtureError, is_n_threat, min_prime_factor_scan,
                      search_odd_quadruple_threats, search_quadruple_threats, verify_fixture)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_FIXTURE = 3
EXIT_SCALE = 4
EXIT_CHECKPOINT = 5
EXIT_INTERRUPT = 130

FORMATS = ("human", "jsonl", "csv")
RECORD_FIELDS = ("x", "n", "args", "labels")

log = logging.getLogger("phi3forms")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    x_max: int | None = None
    entry_bound: int | None = None
    a_max: int | None = None
    q_bound: int | None = None
    format: str = "human"
    workers: int = 1
    seed: int = 0
    checkpoint: str | None = None
    fixture: str | None = None
    skip_bignum: bool = False

    def validate(self) -> None:
        for name in ("x_max", "entry_bound", "a_max", "q_bound", "workers", "seed"):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        for name in ("x_max", "entry_bound", "a_max", "q_bound"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"--{name.replace('_', '-')} must be positive, got {value}")
        if self.workers < 1:
            raise ConfigError(f"--workers must be >= 1, got {self.workers}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")


# --- output -----------------------------------------------------------------

class RecordWriter:
    """Streams flat records as aligned text, JSON lines or CSV."""

    def __init__(self, fmt: str, fields: tuple[str, ...], out: TextIO):
        self.fmt = fmt
        self.fields = fields
        self.out = out
        self._csv = csv.writer(out, lineterminator="\n") if fmt == "csv" else None

    def header(self) -> None:
        if self.fmt == "csv":
            self._csv.writerow(self.fields)
        elif self.fmt == "human":
            self.out.write("  ".join(f.upper() for f in self.fields) + "\n")

    def row(self, rec: dict) -> None:
        if self.fmt == "jsonl":
            self.out.write(json.dumps({f: rec[f] for f in self.fields}) + "\n")
        elif self.fmt == "csv":
            self._csv.writerow([";".join(v) if isinstance(v, list) else v
                                for v in (rec[f] for f in self.fields)])
        else:
            self.out.write("  ".join(",".join(map(str, v)) if isinstance(v, list) else str(v)
                                     for v in (rec[f] for f in self.fields)) + "\n")
        self.out.flush()


def _warn_probable(certs, err: TextIO) -> None:
    probable = [c for c in certs if not c.deterministic]
    if probable:
        err.write(f"warning: {len(probable)} certificate(s) rely on probable-prime (BPSW) "
                  "evidence, not a primality proof\n")


# --- subcommands -------------------------------------------------------------

def cmd_enumerate(cfg: RunConfig, args, out: TextIO, err: TextIO) -> int:
    if cfg.x_max > ORACLE_LIMIT:
        raise ScaleError(f"--x-max beyond the oracle limit {ORACLE_LIMIT}")
    writer = RecordWriter(cfg.format, RECORD_FIELDS, out)
    writer.header()
    for sol in iter_solutions(cfg.x_max, cfg.workers, seed=cfg.seed):
        if sol.n == 1 and not args.include_prime:
            continue
        writer.row(solution_record(sol))
    return EXIT_OK


def cmd_check(cfg: RunConfig, args, out: TextIO, err: TextIO) -> int:
    report = completeness_check(cfg.x_max, cfg.workers, seed=cfg.seed)
    out.write(report.summary() + "\n")
    writer = RecordWriter(cfg.format, RECORD_FIELDS, out)
    for sol in report.mismatches:
        writer.row(solution_record(sol))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_classify(cfg: RunConfig, args, out: TextIO, err: TextIO) -> int:
    x = args.x
    if x < 1:
        raise ConfigError("x must be positive")
    value = phi3(x)
    fac = factor(value, cfg.seed)
    parts = []
    for p, e in fac:
        a = inv_phi3(p)
        if a is None:
            out.write(f"x={x}: phi3(x)={value} = {_format_factorization(fac)}; "
                      f"{p} is not a phi3 value, not a same-form factorization\n")
            return EXIT_OK
        parts += [a] * e
    sol = Solution(x, tuple(parts))
    cls = classify(sol) if 2 <= sol.n <= 4 else None
    rec = solution_record(sol, cls)
    rec["threat"] = is_n_threat(sol.x, sol.args) is not None if sol.n >= 2 else False
    if cfg.format == "jsonl":
        rec["witnesses"] = [[m.label, list(m.witness)] for m in cls.matches] if cls else []
        out.write(json.dumps(rec) + "\n")
        return EXIT_OK
    out.write(f"x={x}: phi3(x)={value} = {_format_factorization(fac)}\n")
    out.write(f"args: {rec['args']} (n={sol.n})\n")
    if cls is not None:
        for m in cls.matches:
            out.write(f"match: {m.label} witness={m.witness}\n")
        if not cls:
            out.write("match: none\n")
    else:
        out.write(f"labels: {', '.join(labels_for(sol))}\n")
    out.write(f"threat: {'yes' if rec['threat'] else 'no'}\n")
    return EXIT_OK


def _format_factorization(fac) -> str:
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in fac) or "1"


def cmd_expand(cfg: RunConfig, args, out: TextIO, err: TextIO) -> int:
    sel = [DIRECT if s.startswith("d") else TWISTED if s.startswith("t") else s
           for s in args.selection]
    try:
        pm, pn = expand_product(sel)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.format == "jsonl":
        out.write(json.dumps({"selection": sel, "m": str(pm), "n": str(pn)}) + "\n")
    else:
        out.write(f"({pm}) + ({pn})*z6\n")
    return EXIT_OK


def cmd_catalog(cfg: RunConfig, args, out: TextIO, err: TextIO) -> int:
    for row in catalog():
        out.write(json.dumps(row) + "\n")
    return EXIT_OK


def _reference_claims(cfg: RunConfig):
    """Yield (claim, status) with status in PASS / FAIL / SKIP."""
    def check(name, fn):
        try:
            ok = bool(fn())
        except (AssertionError, ValueError) as exc:
            log.debug("claim %s raised %s", name, exc)
            ok = False
        return name, "PASS" if ok else "FAIL"

    yield check("two factors: (1,2) gives x=4", lambda: two_factor_family(1).x == 4)
    for sol in sporadics(3):
        yield check(f"three-factor sporadic {sol}",
                    lambda s=sol: s.factors_prime() and compute_x(s.args) == s.x and classify(s))
    for sol in sporadics(4):
        yield check(f"four-factor sporadic {sol}",
                    lambda s=sol: s.factors_prime() and classify(s))
    ones = ones_tuples()
    yield check("eight four-factor tuples contain 1", lambda: len(ones) == 8 and all(1 in s.args for s in ones))
    for sol in ones:
        yield check(f"1-tuple {sol} is a prime-factor solution",
                    lambda s=sol: s.factors_prime() and classify(s))
    yield check("(1,3,3,21) is the only 1-tuple without even entry, and x=484 is even",
                lambda: [s.args for s in ones if all(a % 2 for a in s.args)] == [(1, 3, 3, 21)]
                and next(s.x for s in ones if s.args == (1, 3, 3, 21)) == 484)
    a, b, c = (IntPolynomial.var(v) for v in "abc")
    golden = [
        ((DIRECT, DIRECT), (a * b - 1, a + b + 1)),
        ((DIRECT, TWISTED), (a - b, a * b + b + 1)),
        ((DIRECT,) * 3, (a * b * c - a - b - c - 1, a * b + a * c + b * c + a + b + c)),
        ((DIRECT, DIRECT, TWISTED), (a * b - a * c - b * c - c - 1,
                                     a * b * c + a * c + b * c + a + b + 1)),
    ]
    for sel, expected in golden:
        yield check(f"expansion {'/'.join(sel)}", lambda s=sel, e=expected: expand_product(s) == e)
    yield check("quadruple threat (2,3,3,5) with x=191",
                lambda: is_n_threat(191, (2, 3, 3, 5)) is not None)
    if cfg.skip_bignum:
        yield "odd quadruple threat fixture", "SKIP"
        return
    result = verify_fixture(cfg.fixture)
    yield "odd quadruple threat fixture: product identity", "PASS" if result.identity else "FAIL"
    yield ("odd quadruple threat fixture: nine quantities non-composite",
           "PASS" if result.certificate is not None else "FAIL")
    yield ("odd quadruple threat fixture: all quantities odd",
           "PASS" if result.certificate is not None and result.certificate.odd else "FAIL")
    if result.certificate is not None:
        _warn_probable([result.certificate], sys.stderr)


def cmd_verify_reference(cfg: RunConfig, args, out: TextIO, err: TextIO) -> int:
    failed = False
    if cfg.fixture is not None and not cfg.skip_bignum and not os.path.exists(cfg.fixture):
        raise FixtureError(f"fixture not found: {cfg.fixture}")
    for claim, status in _reference_claims(cfg):
        out.write(f"{status:4}  {claim}\n")
        out.flush()
        failed |= status == "FAIL"
    return EXIT_FAIL if failed else EXIT_OK


def cmd_search_threats(cfg: RunConfig, args, out: TextIO, err: TextIO) -> int:
    modes = [m for m in ("quad", "odd_quad", "min_factor") if getattr(args, m)]
    if len(modes) != 1:
        raise ConfigError("choose exactly one of --quad, --odd-quad, --min-factor")
    mode = modes[0]

    def progress(anchor, count, certs):
        log.info("anchor %d: %d candidates, %d certificates", anchor, count, len(certs))

    if mode == "quad":
        certs = search_quadruple_threats(cfg.entry_bound or 100, cfg.workers,
                                         cfg.checkpoint, progress)
    elif mode == "odd_quad":
        certs = search_odd_quadruple_threats(cfg.a_max or 1000, cfg.workers,
                                             cfg.checkpoint, progress)
    else:
        report = min_prime_factor_scan(cfg.q_bound or 10**6, cfg.workers, cfg.checkpoint, progress)
        certs = report.certificates
        summary = {"q_bound": report.q_bound, "d_max": report.d_max,
                   "anchors": len(report.anchor_counts), "candidates": report.candidates,
                   "certified": report.certified}
        if cfg.format == "jsonl":
            out.write(json.dumps({"summary": summary,
                                  "anchor_counts": {str(k): v for k, v in
                                                    sorted(report.anchor_counts.items())}}) + "\n")
        else:
            verdict = "certified" if report.certified else "NOT certified"
            out.write(f"smallest prime factor bound {report.q_bound}: {verdict} "
                      f"(anchors d <= {report.d_max}: {summary['anchors']}, "
                      f"candidates: {summary['candidates']})\n")
    for cert in certs:
        rec = cert.record()
        if cfg.format == "jsonl":
            out.write(json.dumps(rec) + "\n")
        elif cfg.format == "csv":
            csv.writer(out, lineterminator="\n").writerow(
                [rec["x"], rec["n"], ",".join(map(str, rec["args"])),
                 ";".join(f"{k}={v}" for k, v in rec["evidence"].items())])
        else:
            out.write(f"threat x={rec['x']} args=({','.join(map(str, rec['args']))})\n")
            for name, tag in rec["evidence"].items():
                out.write(f"    {name}: {tag}\n")
    if not certs and cfg.format == "human" and mode != "min_factor":
        out.write("no certificates found\n")
    _warn_probable(certs, err)
    if mode == "min_factor" and not report.certified:
        return EXIT_FAIL
    return EXIT_OK


# --- parsing -------------------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default option values")
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--workers", type=_positive_int, default=argparse.SUPPRESS,
                        help="worker processes (env PHI3FORMS_WORKERS)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="phi3forms", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list same-form solutions up to x-max")
    p.add_argument("--x-max", type=_positive_int, default=argparse.SUPPRESS)
    p.add_argument("--include-prime", action="store_true",
                   help="also emit rows where phi3(x) itself is prime")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("check", parents=[common], help="classify every oracle solution up to x-max")
    p.add_argument("--x-max", type=_positive_int, default=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="factor phi3(x) and classify it")
    p.add_argument("x", type=_positive_int)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("verify-paper", parents=[common],
                       help="check the known solution tables and threat examples")
    p.add_argument("--fixture", default=argparse.SUPPRESS)
    p.add_argument("--skip-bignum", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_verify_reference)

    p = sub.add_parser("search-threats", parents=[common], help="quadruple threat searches")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--quad", action="store_true")
    group.add_argument("--odd-quad", action="store_true")
    group.add_argument("--min-factor", action="store_true")
    p.add_argument("--entry-bound", type=_positive_int, default=argparse.SUPPRESS)
    p.add_argument("--a-max", type=_positive_int, default=argparse.SUPPRESS)
    p.add_argument("--q-bound", type=_positive_int, default=argparse.SUPPRESS)
    p.add_argument("--checkpoint", default=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_search_threats)

    p = sub.add_parser("expand", parents=[common], help="expand a product of Eisenstein factors")
    p.add_argument("selection", nargs="+", help="direct|twisted for each factor")
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("catalog", parents=[common], help="print the family catalog as JSON lines")
    p.set_defaults(handler=cmd_catalog)
    return parser


_DEFAULT_X_MAX = 10**6


def make_config(ns: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if ns.config:
        try:
            with open(ns.config) as fh:
                values.update(json.load(fh))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {ns.config}: {exc}") from exc
    env_workers = os.environ.get("PHI3FORMS_WORKERS")
    if env_workers:
        try:
            values["workers"] = int(env_workers)
        except ValueError:
            raise ConfigError(f"PHI3FORMS_WORKERS is not an integer: {env_workers!r}") from None
    fields = RunConfig.__dataclass_fields__
    unknown = set(values) - set(fields)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for name in fields:
        if name != "command" and hasattr(ns, name):
            values[name] = getattr(ns, name)
    if ns.command in ("enumerate", "check"):
        values.setdefault("x_max", _DEFAULT_X_MAX)
    cfg = RunConfig(command=ns.command, **values)
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=err)
    try:
        cfg = make_config(ns)
        code = ns.handler(cfg, ns, out, err)
        out.flush()
        return code
    except ConfigError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except FixtureError as exc:
        err.write(f"fixture error: {exc}\n")
        return EXIT_FIXTURE
    except ScaleError as exc:
        err.write(f"scale error: {exc}\n")
        return EXIT_SCALE
    except CheckpointError as exc:
        err.write(f"checkpoint error: {exc}\n")
        return EXIT_CHECKPOINT
    except KeyboardInterrupt:
        err.write("interrupted; checkpoint (if any) flushed\n")
        return EXIT_INTERRUPT
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        if out is sys.stdout:
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
