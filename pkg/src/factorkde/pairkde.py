"""Bivariate copula density estimation on the normal-score scale.

Data pairs are mapped through the normal quantile, smoothed there with a
product quartic kernel, and mapped back by dividing out the normal
densities.  Working on the transformed scale sidesteps the boundary bias
that plagues kernel estimates on the unit square; the price is that the
back-transform can explode near the corners, so evaluation is confined to a
clip region and capped.

One constructor covers the three estimation stages, which differ only in
what is plugged in for the second column: the true latent values when they
are observed, the proxy otherwise, and pseudo-observations for the first
column when margins are themselves estimated.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from . import _backend
from .exceptions import DegenerateDataError
from .kernels import (DEFAULT_DENSITY_CONST, QUARTIC, BandwidthMatrix,
                      KernelSpec, bandwidth_copula)
from .quadrature import QuadratureRule, _norm_pdf, normal_scores_clipped

DEFAULT_CAP = 200.0
DEFAULT_CLIP = (0.001, 0.999)


@dataclass(frozen=True)
class BivariateCopulaFit:
    """A fitted pair density: normal-score anchors plus smoothing metadata."""
    z_points: np.ndarray           # n x 2 normal scores of the fitted pair
    bandwidth: BandwidthMatrix
    kernel: KernelSpec = QUARTIC
    cap: float = DEFAULT_CAP
    clip_region: tuple = DEFAULT_CLIP

    @property
    def n(self) -> int:
        return self.z_points.shape[0]


def fit_pair(u_col, v_col, kernel: KernelSpec = QUARTIC, cap: float = DEFAULT_CAP,
             clip=DEFAULT_CLIP, const: float = DEFAULT_DENSITY_CONST,
             bandwidth: BandwidthMatrix | None = None) -> BivariateCopulaFit:
    """Fit the pair density of two uniform-scale columns."""
    u = np.asarray(u_col, dtype=float).ravel()
    v = np.asarray(v_col, dtype=float).ravel()
    if u.size != v.size:
        raise ValueError(f"column lengths differ: {u.size} vs {v.size}")
    if u.size < 4:
        raise DegenerateDataError("need at least 4 pairs")
    if np.any(u <= 0.0) or np.any(u >= 1.0) or np.any(v <= 0.0) or np.any(v >= 1.0):
        raise DegenerateDataError("columns must lie strictly inside (0, 1)")
    z = np.column_stack([ndtri(u), ndtri(v)])
    if bandwidth is None:
        bandwidth = bandwidth_copula(z, const)
    return BivariateCopulaFit(z_points=np.ascontiguousarray(z), bandwidth=bandwidth,
                              kernel=kernel, cap=cap, clip_region=tuple(clip))


def _clamp(fit: BivariateCopulaFit, a):
    lo, hi = fit.clip_region
    return np.clip(np.asarray(a, dtype=float), lo, hi)


def _axis_bandwidths(fit: BivariateCopulaFit):
    if fit.bandwidth.b3 != 0.0:
        raise NotImplementedError("pair evaluation assumes a diagonal bandwidth")
    return fit.bandwidth.b1, fit.bandwidth.b2


def eval_density(fit: BivariateCopulaFit, u, v):
    """Estimated copula density at (u, v), elementwise over broadcast inputs.

    Arguments are clamped into the clip region first; the result is capped.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    scalar = u.ndim == 0 and v.ndim == 0
    ub, vb = np.broadcast_arrays(_clamp(fit, u), _clamp(fit, v))
    zu = ndtri(np.ascontiguousarray(ub.ravel()))
    zv = ndtri(np.ascontiguousarray(vb.ravel()))
    b1, b2 = _axis_bandwidths(fit)
    sums = np.asarray(_backend.pair_eval_points(
        np.ascontiguousarray(fit.z_points[:, 0]),
        np.ascontiguousarray(fit.z_points[:, 1]), zu, zv, b1, b2))
    # phi_u * phi_v is grouped so that swapping the fitted columns and the
    # arguments gives a bitwise-identical value
    out = sums / ((fit.n * fit.bandwidth.det) * (_norm_pdf(zu) * _norm_pdf(zv)))
    out = np.minimum(out, fit.cap)
    return float(out[0]) if scalar else out.reshape(ub.shape)


def eval_density_cross(fit: BivariateCopulaFit, u_pts, v_nodes):
    """Density on the grid {u_pts} x {v_nodes}, shape (len(u_pts), len(v_nodes)).

    This is the workhorse for integrating fitted links over the latent
    variable: the kernel sums factor into two design matrices and a matrix
    product.
    """
    up = ndtri(_clamp(fit, np.asarray(u_pts, dtype=float).ravel()))
    vn = ndtri(_clamp(fit, np.asarray(v_nodes, dtype=float).ravel()))
    b1, b2 = _axis_bandwidths(fit)
    a = np.asarray(_backend.quartic_design(
        np.ascontiguousarray(up), np.ascontiguousarray(fit.z_points[:, 0]), b1))
    c = np.asarray(_backend.quartic_design(
        np.ascontiguousarray(vn), np.ascontiguousarray(fit.z_points[:, 1]), b2))
    out = a @ c.T
    out /= fit.n * fit.bandwidth.det
    out /= _norm_pdf(up)[:, None]
    out /= _norm_pdf(vn)[None, :]
    return np.minimum(out, fit.cap)


def integrate_density(fit: BivariateCopulaFit, quad: QuadratureRule | None = None):
    """Quadrature of the fitted density over the clip region (diagnostic)."""
    if quad is None:
        quad = normal_scores_clipped(300, 4, fit.clip_region)
    m = eval_density_cross(fit, quad.points, quad.points)
    return float(quad.weights @ m @ quad.weights)
