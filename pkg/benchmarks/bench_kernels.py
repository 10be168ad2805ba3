"""Benchmark the compiled recurrence kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--h 50] [--d 32] [--steps 40]
"""
import argparse
import time

import numpy as np

from scriptgrader.similarity import kernels_numpy

try:
    from scriptgrader.similarity import _ckernels
except ImportError:
    _ckernels = None


def bench(kernels, x, wx, wh, b, dh, repeats):
    start = time.perf_counter()
    for _ in range(repeats):
        _, cache = kernels.lstm_forward(x, wx, wh, b)
        kernels.lstm_backward(x, wx, wh, b, cache, dh)
    return (time.perf_counter() - start) / repeats


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--h", type=int, default=50)
    parser.add_argument("--d", type=int, default=32)
    parser.add_argument("--steps", type=int, default=40)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    x = rng.uniform(-0.1, 0.1, (args.steps, args.d))
    wx = rng.uniform(-0.1, 0.1, (4 * args.h, args.d))
    wh = rng.uniform(-0.1, 0.1, (4 * args.h, args.h))
    b = rng.uniform(-0.1, 0.1, 4 * args.h)
    dh = rng.uniform(-1, 1, args.h)

    t_py = bench(kernels_numpy, x, wx, wh, b, dh, args.repeats)
    print(f"LSTM fwd+bwd  T={args.steps} d={args.d} h={args.h}")
    print(f"  numpy fallback : {t_py * 1e3:8.3f} ms")
    if _ckernels is None:
        print("  compiled kernel: not built")
        return
    t_cy = bench(_ckernels, x, wx, wh, b, dh, args.repeats)
    print(f"  compiled kernel: {t_cy * 1e3:8.3f} ms  ({t_py / t_cy:.1f}x faster)")


if __name__ == "__main__":
    main()
