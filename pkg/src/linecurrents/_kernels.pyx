# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; same contracts as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin, sqrt

cnp.import_array()

cdef double TWO_PI_INV_MU0 = 2e-7


def field_at_points(px, py, cx, cy, cur):
    cdef const double[::1] ppx = np.ascontiguousarray(px, dtype=np.float64)
    cdef const double[::1] ppy = np.ascontiguousarray(py, dtype=np.float64)
    cdef const double[::1] ccx = np.ascontiguousarray(cx, dtype=np.float64)
    cdef const double[::1] ccy = np.ascontiguousarray(cy, dtype=np.float64)
    cdef const double complex[::1] cc = np.ascontiguousarray(cur, dtype=np.complex128)
    cdef Py_ssize_t n = ppx.shape[0], nc = ccx.shape[0], i, k
    bx_arr = np.zeros(n, dtype=np.complex128)
    by_arr = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] bx = bx_arr
    cdef double complex[::1] by = by_arr
    cdef double dx, dy, r2
    cdef double complex s, ax, ay
    for i in range(n):
        ax = 0
        ay = 0
        for k in range(nc):
            dx = ppx[i] - ccx[k]
            dy = ppy[i] - ccy[k]
            r2 = dx * dx + dy * dy
            s = TWO_PI_INV_MU0 * cc[k] / r2
            ax = ax - s * dy
            ay = ay + s * dx
        bx[i] = ax
        by[i] = ay
    return bx_arr, by_arr


def polygon_moments(px, py, bx, by, double r_scale, int m_max, nodes, weights):
    cdef const double[::1] x = np.ascontiguousarray(px, dtype=np.float64)
    cdef const double[::1] y = np.ascontiguousarray(py, dtype=np.float64)
    cdef const double[::1] fx = np.ascontiguousarray(bx, dtype=np.complex128).view(np.float64)
    cdef const double[::1] fy = np.ascontiguousarray(by, dtype=np.complex128).view(np.float64)
    cdef const double[::1] tq = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef const double[::1] wq = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], nq = tq.shape[0], i, j, q
    cdef int m
    acc_arr = np.zeros(2 * (m_max + 1), dtype=np.float64)
    cdef double[::1] acc = acc_arr
    cdef double x1, y1, x2, y2, length, tx, ty, t, s, xs, ys, mag, w
    cdef double gxr, gxi, gyr, gyi, tr, ti, fr, fi, tmp
    for i in range(n):
        j = i + 1 if i + 1 < n else 0
        x1 = x[i]; y1 = y[i]; x2 = x[j]; y2 = y[j]
        length = sqrt((x2 - x1) * (x2 - x1) + (y2 - y1) * (y2 - y1))
        tx = (x2 - x1) / length
        ty = (y2 - y1) / length
        for q in range(nq):
            t = tq[q]
            s = 1.0 - t
            xs = x1 * s + x2 * t
            ys = y1 * s + y2 * t
            gxr = fx[2 * i] * s + fx[2 * j] * t
            gxi = fx[2 * i + 1] * s + fx[2 * j + 1] * t
            gyr = fy[2 * i] * s + fy[2 * j] * t
            gyi = fy[2 * i + 1] * s + fy[2 * j + 1] * t
            # gx (tx + j ty) + gy (ty - j tx)
            w = length * wq[q]
            tr = (gxr * tx - gxi * ty + gyr * ty + gyi * tx) * w
            ti = (gxr * ty + gxi * tx - gyr * tx + gyi * ty) * w
            mag = exp(-ys / r_scale)
            fr = mag * cos(xs / r_scale)
            fi = mag * sin(xs / r_scale)
            for m in range(m_max + 1):
                acc[2 * m] += tr
                acc[2 * m + 1] += ti
                tmp = tr * fr - ti * fi
                ti = tr * fi + ti * fr
                tr = tmp
    return acc_arr.view(np.complex128)
