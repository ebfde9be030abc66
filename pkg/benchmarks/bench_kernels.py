"""Compare the numba and numpy kernel paths.

Times each kernel on default-grid sized inputs, then a full 10-kick
propagation with each path switched in.  Usage:

    python3 benchmarks/bench_kernels.py [--repeat 20]
"""
import argparse
import timeit

import numpy as np

from aokr import _kernels
from aokr.evolution import build_plan, run_kicks
from aokr.units import DEFAULT_CONSTANTS, KickSchedule
from aokr.wavepacket import SpatialGrid, init_plane_wave


def kernel_cases(n):
    rng = np.random.default_rng(0)
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    b = np.exp(1j * rng.normal(size=n))
    p = np.linspace(-256, 256, n, endpoint=False)
    prob = np.abs(a) ** 2
    prob /= prob.sum()
    xs = np.linspace(0.0, 30.0, 400)
    return {
        "mul_inplace": lambda m: m.mul_inplace(a.copy(), b),
        "abs2": lambda m: m.abs2(a),
        "power_sum q=2": lambda m: m.power_sum(prob, p, 2),
        "window_sums": lambda m: m.window_sums(prob, p, 0.0, -128, 257),
        "bessel_table 400x120": lambda m: m.bessel_table(120, xs),
    }


def best_of(fn, repeat):
    fn()  # warm-up, includes JIT compilation
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()

    impls = [_kernels.numpy_impl] + ([_kernels.numba_impl] if _kernels.numba_impl else [])
    grid = SpatialGrid()
    print(f"grid: {grid.num_points} points, {grid.num_periods} periods")
    print(f"{'case':<24}" + "".join(f"{m.name:>12}" for m in impls) + f"{'speedup':>10}")

    rows = [(name, [best_of(lambda f=fn, m=m: f(m), args.repeat) for m in impls])
            for name, fn in kernel_cases(grid.num_points).items()]

    plan = build_plan(KickSchedule(2.5, DEFAULT_CONSTANTS.T_talbot, 10), grid)
    psi = init_plane_wave(grid)
    saved = _kernels.active
    times = []
    for m in impls:
        _kernels.active = m
        times.append(best_of(lambda: run_kicks(psi, plan), max(3, args.repeat // 4)))
    _kernels.active = saved
    rows.append(("run_kicks N=10", times))

    for name, t in rows:
        speed = f"{t[0] / t[-1]:9.2f}x" if len(t) > 1 else ""
        print(f"{name:<24}" + "".join(f"{x * 1e3:10.3f}ms" for x in t) + speed)


if __name__ == "__main__":
    main()
