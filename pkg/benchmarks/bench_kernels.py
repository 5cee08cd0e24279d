"""Benchmark: compiled sweep kernels vs the NumPy fallback.

Times the full (alpha, tau) grid evaluation that dominates calibration
runtime, at several sample counts and grid densities, and verifies both
backends return identical counts.

Usage: python benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from polarkit import _pure

try:
    from polarkit import _native
except ImportError:
    _native = None


def grid(step_pct: int, lo: int = 0, hi: int = 100) -> np.ndarray:
    return np.array([i / 100 for i in range(lo, hi + 1, step_pct)])


def time_one(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if _native is None:
        print("compiled kernel not built; showing fallback timings only")

    cases = [
        ("dev-sized, default grid", 160, grid(5), grid(5, 30, 70)),
        ("test-sized, default grid", 4000, grid(5), grid(5, 30, 70)),
        ("dev-sized, dense grid", 160, grid(1), grid(1, 30, 70)),
        ("test-sized, dense grid", 4000, grid(1), grid(1, 30, 70)),
    ]

    rng = np.random.default_rng(0)
    header = f"{'case':<28} {'cells':>7} {'pure':>10} {'native':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, n, alphas, taus in cases:
        spec = rng.random(n)
        gen = rng.random(n)
        gold = (rng.random(n) < 0.55).astype(np.uint8)
        call_args = (spec, gen, gold, alphas, taus)

        pure_s = time_one(_pure.pair_grid_counts, call_args, args.repeats)
        if _native is not None:
            native_s = time_one(_native.pair_grid_counts, call_args, args.repeats)
            assert np.array_equal(
                _pure.pair_grid_counts(*call_args), _native.pair_grid_counts(*call_args)
            ), "backends disagree"
            speedup = f"{pure_s / native_s:7.1f}x"
            native_txt = f"{native_s * 1e3:8.2f}ms"
        else:
            speedup = "-"
            native_txt = "-"
        cells = len(alphas) * len(taus)
        print(f"{name:<28} {cells:>7} {pure_s * 1e3:8.2f}ms {native_txt:>10} {speedup:>8}")


if __name__ == "__main__":
    main()
