# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: the coin-then-shift update and the l1 pair sum.

Both release the GIL so independent trajectories can run on threads.
"""

from libc.math cimport sqrt


def coin_shift(const double complex[::1] up,
               const double complex[::1] down,
               double complex[::1] out_up,
               double complex[::1] out_down,
               const double complex[:, :, :] coins,
               Py_ssize_t lo,
               Py_ssize_t hi):
    cdef Py_ssize_t i
    cdef double complex u, d
    with nogil:
        for i in range(lo - 1, hi + 2):
            out_up[i] = 0
            out_down[i] = 0
        for i in range(lo, hi + 1):
            u = up[i]
            d = down[i]
            out_up[i - 1] = coins[i, 0, 0] * u + coins[i, 0, 1] * d
            out_down[i + 1] = coins[i, 1, 0] * u + coins[i, 1, 1] * d


def l1_offdiag_sum(const double complex[::1] up,
                   const double complex[::1] down,
                   Py_ssize_t lo,
                   Py_ssize_t hi):
    cdef Py_ssize_t j, k
    cdef double ujr, uji, djr, dji, re, im, row
    cdef double total = 0.0
    with nogil:
        for j in range(lo + 1, hi + 1):
            ujr = up[j].real
            uji = up[j].imag
            djr = down[j].real
            dji = down[j].imag
            row = 0.0
            for k in range(lo, j):
                re = (ujr * up[k].real + uji * up[k].imag
                      + djr * down[k].real + dji * down[k].imag)
                im = (uji * up[k].real - ujr * up[k].imag
                      + dji * down[k].real - djr * down[k].imag)
                row += sqrt(re * re + im * im)
            total += row
    return total
