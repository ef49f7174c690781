"""Time the compiled ordering kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--count N] [--sizes 4 5 6] [--seed S]

Both backends run on the same matrices; their outputs are compared before
any timing is reported.
"""

import argparse
import random
import sys
import time

import numpy as np

from triangulift import kernels
from triangulift.harness.synthetic import planted_matrix, random_matrix


def corpus(rng, sizes, count):
    out = []
    for k in range(count):
        n = rng.choice(sizes)
        m = planted_matrix(rng, n)[0] if k % 2 else random_matrix(rng, n, weights=(12, 3, 1))
        out.append(np.ascontiguousarray(m.entries))
    return out


def timed(fn, mats):
    start = time.perf_counter()
    res = [fn(d) for d in mats]
    return time.perf_counter() - start, res


def _call(mod, name):
    if name == "peel":
        return lambda d: mod.peel(d, np.arange(d.shape[0], dtype=np.int64))
    return mod.exhaustive


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 5, 6])
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args(argv)
    comp = kernels.compiled()
    if comp is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    mats = corpus(random.Random(ns.seed), ns.sizes, ns.count)
    print(f"{len(mats)} matrices, sizes {ns.sizes}")
    print(f"{'kernel':<12}{'compiled s':>12}{'python s':>12}{'speedup':>10}")
    for name in ("peel", "exhaustive"):
        tc, rc = timed(_call(comp, name), mats)
        tp, rp = timed(_call(kernels.fallback, name), mats)
        if rc != rp:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        print(f"{name:<12}{tc:>12.3f}{tp:>12.3f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
