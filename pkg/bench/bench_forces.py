"""Benchmark the compiled force kernel against the pure-Python fallback.

Runs the spring + repulsion kernel on colonies of increasing size and reports
per-call timings for both backends, plus the max absolute difference between
their outputs (they must agree to float64 round-off).

Usage: python3 bench/bench_forces.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from growforms.sim.forces_py import spring_repulsion_forces as forces_py

try:
    from growforms.sim._kernels import spring_repulsion_forces as forces_cy
except ImportError:
    forces_cy = None


def make_case(n_rings: int, cells_per_ring: int, seed: int):
    rng = np.random.default_rng(seed)
    pos = []
    starts = [0]
    for i in range(n_rings):
        centre = rng.uniform(50, 550, size=2)
        theta = np.linspace(0, 2 * np.pi, cells_per_ring, endpoint=False)
        r = 15.0 + rng.uniform(-2, 2, size=cells_per_ring)
        ring = centre + np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1)
        pos.append(ring)
        starts.append(starts[-1] + cells_per_ring)
    return (np.concatenate(pos),
            np.asarray(starts, dtype=np.int64))


def bench(fn, pos, starts, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(pos, starts, 0.5, 4.0, 10.0, 0.5)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    if forces_cy is None:
        print("compiled kernel not available; benchmarking fallback only")

    print(f"{'cells':>7} {'python (ms)':>12} {'compiled (ms)':>14} "
          f"{'speedup':>8} {'max |diff|':>11}")
    for n_rings, cells in [(2, 20), (4, 40), (8, 60), (16, 80), (24, 120)]:
        pos, starts = make_case(n_rings, cells, seed=n_rings)
        t_py, out_py = bench(forces_py, pos, starts, args.repeats)
        if forces_cy is not None:
            t_cy, out_cy = bench(forces_cy, pos, starts, args.repeats)
            diff = float(np.max(np.abs(out_py - out_cy)))
            print(f"{len(pos):>7} {t_py * 1e3:>12.3f} {t_cy * 1e3:>14.3f} "
                  f"{t_py / t_cy:>8.2f} {diff:>11.2e}")
        else:
            print(f"{len(pos):>7} {t_py * 1e3:>12.3f} {'-':>14} {'-':>8} {'-':>11}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
