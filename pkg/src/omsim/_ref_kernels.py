"""NumPy reference implementations of the hot kernels.

These mirror the compiled ``omsim._core`` extension operation for
operation; ``omsim.kernels`` falls back to this module when the extension
is unavailable. Keep the arithmetic structure of both backends in sync so
they agree to rounding noise.
"""

from __future__ import annotations

import numpy as np


def ladder_sweep(omegas, weights, kap_in, cen_in, hw2_in, kap_out, cen_out, hw2_out, shift):
    """Sum of per-family Lorentzian DOS products over a frequency grid.

    out[j] = sum_i weights[i]
             * kap_in[i]  / ((cen_in[i]  - omegas[j])^2         + hw2_in[i])
             * kap_out[i] / ((cen_out[i] - (omegas[j] + shift))^2 + hw2_out[i])

    ``hw2`` arrays hold squared half-linewidths (Gamma/2)^2.
    """
    omegas = np.ascontiguousarray(omegas, dtype=np.float64)
    out = np.zeros_like(omegas)
    shifted = omegas + shift
    for i in range(len(weights)):
        out += (
            weights[i]
            * (kap_in[i] / ((cen_in[i] - omegas) ** 2 + hw2_in[i]))
            * (kap_out[i] / ((cen_out[i] - shifted) ** 2 + hw2_out[i]))
        )
    return out


def xcorr_accumulate(grid_a, vals_a, grid_b, vals_b, offsets, lo, hi):
    """Trapezoid integrals needed by the sliding cross-correlation.

    For each offset k, integrating over grid_a[lo[k] .. hi[k]] (inclusive)
    with spectrum B linearly interpolated at grid_a + offset:

        num[k]   = integral sqrt(I_A(w) * I_B(w + offset)) dw
        den_a[k] = integral I_A(w) dw
        den_b[k] = integral I_B(w + offset) dw

    Callers guarantee grid_a[lo[k]] + offset >= grid_b[0] and
    grid_a[hi[k]] + offset <= grid_b[-1], so no extrapolation occurs.
    """
    n = len(offsets)
    num = np.zeros(n)
    den_a = np.zeros(n)
    den_b = np.zeros(n)
    for k in range(n):
        window = slice(lo[k], hi[k] + 1)
        x = grid_a[window]
        ya = vals_a[window]
        yb = np.interp(x + offsets[k], grid_b, vals_b)
        dx = np.diff(x)
        s = np.sqrt(ya * yb)
        num[k] = np.sum(0.5 * (s[1:] + s[:-1]) * dx)
        den_a[k] = np.sum(0.5 * (ya[1:] + ya[:-1]) * dx)
        den_b[k] = np.sum(0.5 * (yb[1:] + yb[:-1]) * dx)
    return num, den_a, den_b
