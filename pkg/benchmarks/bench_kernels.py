"""Compare the compiled sieve kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--n 2000000] [--repeat 3]

Both backends are imported directly, so the comparison does not depend on
ULTRALEVELS_PURE. Results are checked for equality before timing is reported.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from ultralevels import _kernels_py as pure

try:
    from ultralevels import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    n = args.n
    lo, hi = 10**12, 10**12 + n // 4
    base = pure._base_primes(int(hi**0.5) + 1)
    cases = {
        "spf_table": lambda k: k.spf_table(n),
        "omega_table": lambda k: k.omega_table(n),
        "omega_segment": lambda k: k.omega_segment(lo, hi, base),
    }
    print(f"{'kernel':16s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for name, call in cases.items():
        tp = bench(lambda: call(pure), args.repeat)
        if compiled is None:
            print(f"{name:16s} {tp:11.4f} {'n/a':>11s} {'n/a':>8s}")
            continue
        if not np.array_equal(np.asarray(call(pure)), np.asarray(call(compiled))):
            raise SystemExit(f"{name}: backends disagree")
        tc = bench(lambda: call(compiled), args.repeat)
        print(f"{name:16s} {tp:11.4f} {tc:11.4f} {tp / tc:8.2f}x")


if __name__ == "__main__":
    main()
