"""Compare the numba and numpy kernels on the workloads the library actually runs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each workload is run once per backend to warm up (numba compiles on first
call), then timed.  Outputs of the two backends are checked for equality.
"""

import argparse
import time

import numpy as np

from jacring import _kernels as K

rng = np.random.default_rng(20241015)


def small_series(rows, cols, bound):
    return rng.integers(-bound, bound, size=(rows, cols)).astype(object)


def big_series(rows, cols, digits):
    a = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            a[i, j] = int(rng.integers(-10**9, 10**9)) * 10 ** (digits - 9) + int(rng.integers(0, 10**9))
    return a


# each workload builds its inputs once and returns the timed call
def conv_small():
    a, b = small_series(64, 33, 1000), small_series(64, 33, 1000)
    return lambda: K.convolve2d(a, b, 64)


def conv_big():
    a, b = big_series(48, 25, 40), big_series(48, 25, 40)
    return lambda: K.convolve2d(a, b, 48)


def e8():
    return lambda: K.e8_histogram(6, [-4, -2, -2, 0, 0, 0, 0, 0])[0]


WORKLOADS = {
    "conv int64 (64x33)": conv_small,
    "conv multi-modular (48x25, 40 digits)": conv_big,
    "E8 histogram (n <= 6)": e8,
}


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"{'workload':40s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>8s}")
    for name, make in WORKLOADS.items():
        run = make()
        results = {}
        for backend in ("numpy", "numba"):
            with K.use_backend(backend):
                run()  # warm-up / compile
                results[backend] = timed(run, args.repeat)
        (tp, outp), (tn, outn) = results["numpy"], results["numba"]
        same = np.array_equal(outp, outn)
        print(f"{name:40s} {1e3 * tp:12.2f} {1e3 * tn:12.2f} {tp / tn:8.1f}x" + ("" if same else "  MISMATCH"))


if __name__ == "__main__":
    main()
