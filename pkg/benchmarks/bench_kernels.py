"""Time the compiled kernels against the pure-Python fallback.

Runs both implementations of the two hot loops (current throughflow
accumulation, percolation profile) on identical random inputs, checks
they agree, and reports best-of-N wall times with the speedup.

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 50,100,400 --repeats 5
"""

import argparse
import time

import numpy as np

from tiecut import _kernels_py

try:
    from tiecut import _kernels as _compiled
except ImportError:
    _compiled = None


def build_component(rng, n):
    """Random connected weighted component plus its grounded inverse."""
    w = np.zeros((n, n))
    order = rng.permutation(n)
    for a, b in zip(order, order[1:]):  # spanning tree first
        w[a, b] = w[b, a] = rng.uniform(0.1, 3.0)
    extra = int(0.6 * n)
    for _ in range(extra):
        a, b = rng.integers(0, n, size=2)
        if a != b and w[a, b] == 0.0:
            w[a, b] = w[b, a] = rng.uniform(0.1, 3.0)
    lap = np.diag(w.sum(axis=1)) - w
    K = np.zeros((n, n))
    K[1:, 1:] = np.linalg.inv(lap[1:, 1:])
    eu, ev = np.nonzero(np.triu(w, k=1))
    return K, eu.astype(np.int64), ev.astype(np.int64), w[eu, ev]


def best_of(fn, args, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="50,150,400",
                        help="comma list of component sizes")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats, best is reported")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if _compiled is None:
        print("compiled extension not importable; timing the fallback only")
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)

    header = f"{'kernel':<26}{'n':>6}{'python':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        K, eu, ev, ew = build_component(rng, n)
        m = 4 * n
        pu = rng.integers(0, n, size=m).astype(np.int64)
        pv = rng.integers(0, n, size=m).astype(np.int64)

        for name, fn_args in (
            ("throughflow_accumulate", (K, eu, ev, ew)),
            ("percolation_profile", (pu, pv, n)),
        ):
            t_py = best_of(getattr(_kernels_py, name), fn_args, args.repeats)
            if _compiled is None:
                print(f"{name:<26}{n:>6}{t_py:>11.4f}s{'n/a':>12}{'n/a':>10}")
                continue
            ref = getattr(_kernels_py, name)(*fn_args)
            got = getattr(_compiled, name)(*fn_args)
            if not np.allclose(ref, got, rtol=1e-10, atol=1e-12):
                raise SystemExit(f"backends disagree on {name} at n={n}")
            t_c = best_of(getattr(_compiled, name), fn_args, args.repeats)
            print(f"{name:<26}{n:>6}{t_py:>11.4f}s{t_c:>11.4f}s"
                  f"{t_py / t_c:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
