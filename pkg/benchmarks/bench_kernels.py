"""Benchmark the compiled kernel core against the NumPy reference backend.

Usage:
    python benchmarks/bench_kernels.py [--grid 200000] [--modes 60]
                                       [--offsets 600] [--repeat 5]

Times the two hot kernels (ladder sweep, sliding cross-correlation) on a
realistic workload and reports the speedup of the compiled extension. The
two backends are also checked against each other to 1e-12 relative.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from omsim import _ref_kernels


def _load_compiled():
    try:
        from omsim import _core

        return _core
    except ImportError:
        return None


def _time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def sweep_workload(rng, n_grid, n_modes):
    grid = np.linspace(192.9e12, 193.3e12, n_grid)
    centers_in = rng.uniform(192.9e12, 193.3e12, n_modes)
    args = (
        grid,
        rng.uniform(0.1, 2.0, n_modes),
        rng.uniform(0.1e9, 0.6e9, n_modes),
        centers_in,
        rng.uniform(0.5e9, 2e9, n_modes) ** 2,
        rng.uniform(0.1e9, 0.6e9, n_modes),
        centers_in + rng.uniform(40e9, 60e9, n_modes),
        rng.uniform(0.5e9, 2e9, n_modes) ** 2,
        -6.81e9,
    )
    return args


def xcorr_workload(rng, n_grid, n_offsets):
    grid_a = np.linspace(192.9e12, 193.3e12, n_grid)
    grid_b = np.linspace(192.85e12, 193.35e12, n_grid)
    vals_a = rng.uniform(0.0, 1.0, n_grid)
    vals_b = rng.uniform(0.0, 1.0, n_grid)
    offsets = np.linspace(-40e9, 40e9, n_offsets)
    lo = np.searchsorted(grid_a, grid_b[0] - offsets, side="left").astype(np.intp)
    hi = (np.searchsorted(grid_a, grid_b[-1] - offsets, side="right") - 1).astype(np.intp)
    return grid_a, vals_a, grid_b, vals_b, offsets, lo, hi


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=200_000)
    parser.add_argument("--modes", type=int, default=60)
    parser.add_argument("--offsets", type=int, default=600)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    compiled = _load_compiled()
    rng = np.random.default_rng(7)

    print(f"workload: grid={args.grid}, modes={args.modes}, offsets={args.offsets}, "
          f"best of {args.repeat}")
    print(f"{'kernel':<18} {'reference':>12} {'compiled':>12} {'speedup':>9}")

    sweep_args = sweep_workload(rng, args.grid, args.modes)
    t_ref, ref_out = _time(lambda: _ref_kernels.ladder_sweep(*sweep_args), args.repeat)
    if compiled is not None:
        t_c, c_out = _time(lambda: compiled.ladder_sweep(*sweep_args), args.repeat)
        np.testing.assert_allclose(c_out, ref_out, rtol=1e-12)
        print(f"{'ladder_sweep':<18} {t_ref * 1e3:>10.2f}ms {t_c * 1e3:>10.2f}ms "
              f"{t_ref / t_c:>8.1f}x")
    else:
        print(f"{'ladder_sweep':<18} {t_ref * 1e3:>10.2f}ms {'absent':>12}")

    xcorr_args = xcorr_workload(rng, args.grid, args.offsets)
    t_ref, ref_out = _time(lambda: _ref_kernels.xcorr_accumulate(*xcorr_args), args.repeat)
    if compiled is not None:
        t_c, c_out = _time(lambda: compiled.xcorr_accumulate(*xcorr_args), args.repeat)
        for got, want in zip(c_out, ref_out):
            np.testing.assert_allclose(got, want, rtol=1e-12)
        print(f"{'xcorr_accumulate':<18} {t_ref * 1e3:>10.2f}ms {t_c * 1e3:>10.2f}ms "
              f"{t_ref / t_c:>8.1f}x")
    else:
        print(f"{'xcorr_accumulate':<18} {t_ref * 1e3:>10.2f}ms {'absent':>12}")

    if compiled is None:
        print("compiled backend not built; run `python setup.py build_ext --inplace`")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
