# cython: language_level=3
"""Compiled kernels for ladder sweeps and sliding cross-correlation.

Mirrors omsim._ref_kernels; see that module for the contracts. The inner
loops here avoid the per-offset temporaries of the NumPy fallback.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def ladder_sweep(
    double[::1] omegas,
    double[::1] weights,
    double[::1] kap_in,
    double[::1] cen_in,
    double[::1] hw2_in,
    double[::1] kap_out,
    double[::1] cen_out,
    double[::1] hw2_out,
    double shift,
):
    cdef Py_ssize_t n_grid = omegas.shape[0]
    cdef Py_ssize_t n_modes = weights.shape[0]
    out_arr = np.zeros(n_grid, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double om, om_shifted, d_in, d_out, acc
    with nogil:
        for j in range(n_grid):
            om = omegas[j]
            om_shifted = om + shift
            acc = 0.0
            for i in range(n_modes):
                d_in = cen_in[i] - om
                d_out = cen_out[i] - om_shifted
                acc = acc + weights[i] * (kap_in[i] / (d_in * d_in + hw2_in[i])) \
                                       * (kap_out[i] / (d_out * d_out + hw2_out[i]))
            out[j] = acc
    return out_arr


def xcorr_accumulate(
    double[::1] grid_a,
    double[::1] vals_a,
    double[::1] grid_b,
    double[::1] vals_b,
    double[::1] offsets,
    cnp.intp_t[::1] lo,
    cnp.intp_t[::1] hi,
):
    cdef Py_ssize_t n_off = offsets.shape[0]
    cdef Py_ssize_t n_b = grid_b.shape[0]
    num_arr = np.zeros(n_off, dtype=np.float64)
    dena_arr = np.zeros(n_off, dtype=np.float64)
    denb_arr = np.zeros(n_off, dtype=np.float64)
    cdef double[::1] num = num_arr
    cdef double[::1] den_a = dena_arr
    cdef double[::1] den_b = denb_arr
    cdef Py_ssize_t k, j, seg
    cdef double off, x, t, yb, yb_prev, ya, ya_prev, s, s_prev, dx
    cdef double acc_n, acc_a, acc_b
    with nogil:
        for k in range(n_off):
            off = offsets[k]
            acc_n = 0.0
            acc_a = 0.0
            acc_b = 0.0
            seg = 0
            ya_prev = 0.0
            yb_prev = 0.0
            s_prev = 0.0
            for j in range(lo[k], hi[k] + 1):
                x = grid_a[j] + off
                # march the segment pointer; x is nondecreasing in j and
                # guaranteed inside [grid_b[0], grid_b[-1]]
                while seg < n_b - 2 and grid_b[seg + 1] < x:
                    seg = seg + 1
                t = (x - grid_b[seg]) / (grid_b[seg + 1] - grid_b[seg])
                yb = vals_b[seg] + t * (vals_b[seg + 1] - vals_b[seg])
                ya = vals_a[j]
                s = sqrt(ya * yb)
                if j > lo[k]:
                    dx = grid_a[j] - grid_a[j - 1]
                    acc_n = acc_n + 0.5 * (s + s_prev) * dx
                    acc_a = acc_a + 0.5 * (ya + ya_prev) * dx
                    acc_b = acc_b + 0.5 * (yb + yb_prev) * dx
                ya_prev = ya
                yb_prev = yb
                s_prev = s
            num[k] = acc_n
            den_a[k] = acc_a
            den_b[k] = acc_b
    return num_arr, dena_arr, denb_arr
