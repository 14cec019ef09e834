"""Compare the compiled and pure-Python search kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time
from itertools import permutations

from actlab import _kernels_py
from actlab.act import example_act, regular_act
from actlab.monoid import enumerate_monoids, sl2

try:
    from actlab import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _perms_fixing_zero(n):
    return [(0,) + p for p in permutations(range(1, n))]


def workloads():
    M4 = list(enumerate_monoids(4))[-1]
    X = example_act(6, sl2())
    S = regular_act(M4)
    return {
        "monoid_tables n=4": lambda k: k.monoid_tables(4, _perms_fixing_zero(4)),
        "action_tables over M4, size 3": lambda k: k.action_tables(M4.flat, 4, M4.identity, 3),
        "homs example_6 -> example_6": lambda k: k.homs(X.hom_flat, 6, X.hom_flat, 6, 2),
        "right_congruences S(M4)": lambda k: k.right_congruences(S.flat, 4, 4),
    }


def bench(fn, kernel, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(kernel)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'workload':<34} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, fn in workloads().items():
        py = bench(fn, _kernels_py, args.repeat)
        if _ckernels is None:
            print(f"{name:<34} {py * 1e3:>10.2f} {'n/a':>10} {'':>8}")
            continue
        cy = bench(fn, _ckernels, args.repeat)
        if fn(_kernels_py) != fn(_ckernels):
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:<34} {py * 1e3:>10.2f} {cy * 1e3:>10.2f} {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
