"""Pure-numpy implementations of the hot kernels.

These mirror ``_fastcore`` (the Cython extension) exactly; whichever is
available is selected by ``_backend`` at import time.  All functions take and
return float64 arrays.
"""
import numpy as np

_C = 15.0 / 16.0


def quartic_design(x, centers, b):
    """Matrix K((x_p - c_i)/b), shape (len(x), len(centers)).

    K is the quartic kernel (15/16)(1-s^2)^2 on [-1, 1].
    """
    s = (np.asarray(x, float)[:, None] - np.asarray(centers, float)[None, :]) / b
    t = 1.0 - s * s
    out = _C * t * t
    out[t < 0.0] = 0.0
    return out


def pair_eval_points(z1, z2, zu, zv, b1, b2):
    """Sums S_p = sum_i K((zu_p - z1_i)/b1) K((zv_p - z2_i)/b2), elementwise in p."""
    zu = np.asarray(zu, float)
    zv = np.asarray(zv, float)
    m = zu.size
    out = np.empty(m)
    step = max(1, int(4e6 // max(len(z1), 1)))
    for s in range(0, m, step):
        a = quartic_design(zu[s:s + step], z1, b1)
        c = quartic_design(zv[s:s + step], z2, b2)
        out[s:s + step] = np.einsum("pi,pi->p", a, c)
    return out


def naive_product_sum(data, pts, bw):
    """Sums T_p = sum_i prod_j K((pts_pj - data_ij)/bw_j), shape (len(pts),)."""
    data = np.asarray(data, float)
    pts = np.asarray(pts, float)
    m = pts.shape[0]
    out = np.empty(m)
    # chunked so the (chunk, n, K) temporary stays small
    step = max(1, int(2e6 // max(data.size, 1)))
    for s in range(0, m, step):
        block = pts[s:s + step]
        t = 1.0 - ((block[:, None, :] - data[None, :, :]) / bw) ** 2
        np.maximum(t, 0.0, out=t)
        k = _C * t * t
        out[s:s + step] = k.prod(axis=2).sum(axis=1)
    return out


def gumbel_hinv(w, v, theta, tol=1e-10, maxit=200):
    """Invert the Gumbel conditional CDF in its first argument by bisection."""
    w = np.asarray(w, float)
    v = np.asarray(v, float)
    lo = np.full(w.shape, 1e-12)
    hi = np.full(w.shape, 1.0 - 1e-12)
    y = (-np.log(v)) ** theta
    inv_v = 1.0 / v
    yt = y ** (1.0 - 1.0 / theta)  # (-ln v)^(theta-1)
    for _ in range(maxit):
        active = (hi - lo) >= tol
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        x = -np.log(mid)
        s = (x ** theta + y) ** (1.0 / theta)
        h = np.exp(-s) * s ** (1.0 - theta) * yt * inv_v
        less = h < w
        lo = np.where(active & less, mid, lo)
        hi = np.where(active & ~less, mid, hi)
    return 0.5 * (lo + hi)
