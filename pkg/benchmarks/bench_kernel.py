"""Compare the compiled and pure-Python geometric kernels.

    python benchmarks/bench_kernel.py [--repeat 3]

Two measurements per backend: the raw in-place recurrence on a dense box,
and a full ternary oracle expansion (which is dominated by that kernel).
"""

import argparse
import time

import numpy as np

from poincare_series import kernels, ternary
from poincare_series.multisection import multisect
from poincare_series.series import TruncationWindow, expand


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_raw(backend, shape, steps, repeat):
    base = np.random.default_rng(0).integers(-3, 4, size=shape)

    def run():
        arr = np.array(base, dtype=kernels.working_dtype(backend), order="C")
        for step in steps:
            kernels.geometric_inplace(arr, step, backend=backend)

    return best_of(repeat, run)


def bench_oracle(backend, d, order, repeat):
    f = ternary.ternary_generating_function(d).scale_exponents((1, 3, 3))
    window = TruncationWindow((0, -3, -3), (order, d * order, d * order))
    result = []

    def run():
        result[:] = [multisect(expand(f, window, backend=backend), (1, d, d), order)]

    return best_of(repeat, run), result[0]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--degree", type=int, default=6)
    parser.add_argument("--order", type=int, default=10)
    args = parser.parse_args()

    backends = ["python"] + (["compiled"] if kernels.has_compiled() else [])
    if len(backends) == 1:
        print("compiled kernel not built; only the Python backend is timed")

    shape = (40, 120, 120)
    steps = [(1, 0, 0), (1, 3, 0), (1, 0, 3), (1, 3, 3), (0, 3, -3), (0, -3, 3)]
    print(f"raw kernel: box {shape}, {len(steps)} factors")
    raw = {b: bench_raw(b, shape, steps, args.repeat) for b in backends}
    for b, t in raw.items():
        print(f"  {b:9} {t * 1000:9.1f} ms")

    print(f"ternary oracle: d={args.degree}, N={args.order}")
    oracle = {}
    values = {}
    for b in backends:
        oracle[b], values[b] = bench_oracle(b, args.degree, args.order, args.repeat)
        print(f"  {b:9} {oracle[b] * 1000:9.1f} ms")
    if "compiled" in values:
        assert values["compiled"] == values["python"], "backends disagree"
        print(f"speedup: raw x{raw['python'] / raw['compiled']:.1f}, oracle x{oracle['python'] / oracle['compiled']:.1f}")
    print("coefficients:", " ".join(map(str, values[backends[-1]])))


if __name__ == "__main__":
    main()
