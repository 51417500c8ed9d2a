# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: quartic design matrices, pair/naive KDE sums, and the
Gumbel conditional-CDF inversion used by the sampler.

Signatures and arithmetic mirror ``_purepy`` so either backend can serve the
same call sites.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport exp, log, pow

cnp.import_array()

cdef double _C = 15.0 / 16.0


cdef inline double _quartic(double s) nogil:
    cdef double t = 1.0 - s * s
    if t < 0.0:
        return 0.0
    return _C * t * t


def quartic_design(double[::1] x, double[::1] centers, double b):
    """Matrix K((x_p - c_i)/b), shape (len(x), len(centers))."""
    cdef Py_ssize_t m = x.shape[0], n = centers.shape[0]
    out_arr = np.empty((m, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t p, i
    cdef double inv_b = 1.0 / b, xp
    with nogil:
        for p in range(m):
            xp = x[p]
            for i in range(n):
                out[p, i] = _quartic((xp - centers[i]) * inv_b)
    return out_arr


def pair_eval_points(double[::1] z1, double[::1] z2,
                     double[::1] zu, double[::1] zv, double b1, double b2):
    """Sums S_p = sum_i K((zu_p - z1_i)/b1) K((zv_p - z2_i)/b2)."""
    cdef Py_ssize_t m = zu.shape[0], n = z1.shape[0]
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t p, i
    cdef double inv_b1 = 1.0 / b1, inv_b2 = 1.0 / b2, acc, ku, zup, zvp
    with nogil:
        for p in range(m):
            zup = zu[p]
            zvp = zv[p]
            acc = 0.0
            for i in range(n):
                ku = _quartic((zup - z1[i]) * inv_b1)
                if ku != 0.0:
                    acc += ku * _quartic((zvp - z2[i]) * inv_b2)
            out[p] = acc
    return out_arr


def naive_product_sum(double[:, ::1] data, double[:, ::1] pts, double[::1] bw):
    """Sums T_p = sum_i prod_j K((pts_pj - data_ij)/bw_j)."""
    cdef Py_ssize_t n = data.shape[0], k = data.shape[1], m = pts.shape[0]
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    inv_arr = np.empty(k, dtype=np.float64)
    cdef double[::1] inv_bw = inv_arr
    cdef Py_ssize_t p, i, j
    cdef double acc, prod, kj
    for j in range(k):
        inv_bw[j] = 1.0 / bw[j]
    with nogil:
        for p in range(m):
            acc = 0.0
            for i in range(n):
                prod = 1.0
                for j in range(k):
                    kj = _quartic((pts[p, j] - data[i, j]) * inv_bw[j])
                    if kj == 0.0:
                        prod = 0.0
                        break
                    prod *= kj
                acc += prod
            out[p] = acc
    return out_arr


def gumbel_hinv(double[::1] w, double[::1] v, double theta,
                double tol=1e-10, int maxit=200):
    """Invert the Gumbel conditional CDF in its first argument by bisection."""
    cdef Py_ssize_t m = w.shape[0]
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t p
    cdef int it
    cdef double lo, hi, mid, x, s, h, y, yt, inv_v, inv_theta
    inv_theta = 1.0 / theta
    with nogil:
        for p in range(m):
            y = pow(-log(v[p]), theta)
            yt = pow(y, 1.0 - inv_theta)
            inv_v = 1.0 / v[p]
            lo = 1e-12
            hi = 1.0 - 1e-12
            for it in range(maxit):
                if hi - lo < tol:
                    break
                mid = 0.5 * (lo + hi)
                x = -log(mid)
                s = pow(pow(x, theta) + y, inv_theta)
                h = exp(-s) * pow(s, 1.0 - theta) * yt * inv_v
                if h < w[p]:
                    lo = mid
                else:
                    hi = mid
            out[p] = 0.5 * (lo + hi)
    return out_arr
