"""Compare the compiled and pure kernel backends on the hot paths.

Run from the repo root:

    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import random
import time

from primematrix.kernels import get_backend


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t0, out


def bench(quick):
    pure = get_backend("pure")
    try:
        fast = get_backend("cython")
    except ImportError:
        fast = None
        print("cython backend not built; timing pure only\n")

    scale = 10 if quick else 1
    rng = random.Random(12345)
    u64_batch = [rng.randrange(2, 2**64) for _ in range(40000 // scale)]
    basis8 = [2, 3, 5, 7, 11, 13, 17, 19]

    def primality(mod):
        hits = 0
        for n in u64_batch:
            hits += mod.is_prime_u64(n)
        return hits

    cases = [
        (f"is_prime_u64 on {len(u64_batch)} random u64", primality),
        (
            "count_twin_lowers, order-8 wheel",
            lambda mod: mod.count_twin_lowers(basis8, 1, 9699690 // scale),
        ),
        (
            "count_prime_columns, step 30030",
            lambda mod: mod.count_prime_columns(17, 30030, 200000 // scale),
        ),
        (
            "count_twin_columns, census stride 6",
            lambda mod: mod.count_twin_columns(5, 6, 1000000 // scale),
        ),
    ]

    width = max(len(name) for name, _ in cases)
    header = f"{'kernel':<{width}}  {'pure':>9}  {'cython':>9}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        t_pure, out_pure = timed(call, pure)
        if fast is None:
            print(f"{name:<{width}}  {t_pure:>8.3f}s  {'-':>9}  {'-':>8}")
            continue
        t_fast, out_fast = timed(call, fast)
        if out_pure != out_fast:
            raise AssertionError(f"backends disagree on {name}: {out_pure} vs {out_fast}")
        print(f"{name:<{width}}  {t_pure:>8.3f}s  {t_fast:>8.3f}s  {t_pure / t_fast:>7.1f}x")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    bench(parser.parse_args().quick)
