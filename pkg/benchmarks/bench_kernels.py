"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--x-max N] [--anchors D ...] [--repeat R]

Both backends are imported directly, so the PHI3FORMS_PURE switch is not
needed here.  Results are checked for equality before timing is reported.
"""
from __future__ import annotations

import argparse
import sys
import timeit

from phi3forms import _pykernels
from phi3forms.oracle import sieve_tables
from phi3forms.threats import max_second_entry

try:
    from phi3forms import _kernels
except ImportError:
    _kernels = None


def bench(label: str, impls: dict, call, repeat: int) -> None:
    results = {name: call(mod) for name, mod in impls.items()}
    first = next(iter(results.values()))
    if any(r != first for r in results.values()):
        raise SystemExit(f"{label}: backends disagree")
    times = {}
    for name, mod in impls.items():
        times[name] = min(timeit.repeat(lambda: call(mod), number=1, repeat=repeat))
    base = times["python"]
    for name, t in times.items():
        print(f"{label:<28} {name:<7} {t * 1e3:10.2f} ms  x{base / t:6.1f}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--x-max", type=int, default=200_000)
    parser.add_argument("--anchors", type=int, nargs="+", default=[101, 1013],
                        help="smallest entries d to scan")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    impls = {"python": _pykernels}
    if _kernels is None:
        print("compiled extension not built; timing the pure-Python backend only",
              file=sys.stderr)
    else:
        impls["cython"] = _kernels

    primes, roots, form = sieve_tables(args.x_max)
    bench(f"sieve_chunk 1..{args.x_max}", impls,
          lambda m: m.sieve_chunk(1, args.x_max + 1, primes, roots, form), args.repeat)

    anchors = [(d, a) for d in args.anchors for a in (d + 2, max_second_entry(d))]
    bench(f"anchor_pairs ({len(anchors)} anchors)", impls,
          lambda m: [m.anchor_pairs(d, a, t) for d, a in anchors for t in (0, 2)], args.repeat)
    return 0


if __name__ == "__main__":
    sys.exit(main())
