"""The k-dimensional factor copula density estimator and the naive baseline.

The factor estimator fits one pair density per linked variable against the
proxy and integrates their product over the latent variable.  The naive
baseline is a plain k-dimensional product-kernel KDE on the uniform scale
with no boundary handling; the simulation study quantifies how badly that
misbehaves on copula data.
"""
from dataclasses import dataclass

import numpy as np

from . import _backend
from .exceptions import DegenerateDataError
from .kernels import DEFAULT_DENSITY_CONST, QUARTIC, KernelSpec, robust_scale
from .margins import UniformMatrix
from .pairkde import (DEFAULT_CAP, DEFAULT_CLIP, BivariateCopulaFit,
                      eval_density_cross, fit_pair)
from .proxy import ProxyResult, compute_proxy
from .quadrature import QuadratureRule, normal_scores

DEFAULT_QUAD_NODES = 300


@dataclass(frozen=True)
class FactorCopulaFit:
    """k fitted linking densities sharing one proxy, plus a latent quadrature."""
    links: tuple
    quad: QuadratureRule
    proxy: ProxyResult | None = None

    @property
    def k(self) -> int:
        return len(self.links)


@dataclass(frozen=True)
class NaiveKdeFit:
    """Product-kernel KDE on the uniform scale with per-dimension bandwidths."""
    points: np.ndarray
    bandwidths: np.ndarray
    kernel: KernelSpec = QUARTIC
    clip_region: tuple = DEFAULT_CLIP


def fit_factor(u, k: int, kernel: KernelSpec = QUARTIC, cap: float = DEFAULT_CAP,
               clip=DEFAULT_CLIP, const: float = DEFAULT_DENSITY_CONST,
               quad: QuadratureRule | None = None) -> FactorCopulaFit:
    """Fit the first ``k`` linking densities; the proxy uses all d columns."""
    um = UniformMatrix.coerce(u)
    if not 2 <= k <= um.d:
        raise ValueError(f"need 2 <= k <= d, got k={k}, d={um.d}")
    if quad is None:
        quad = normal_scores(DEFAULT_QUAD_NODES)
    prox = compute_proxy(um)
    links = tuple(
        fit_pair(um.column(j), prox.v_hat, kernel=kernel, cap=cap,
                 clip=clip, const=const)
        for j in range(k)
    )
    return FactorCopulaFit(links=links, quad=quad, proxy=prox)


def eval_factor(fit: FactorCopulaFit, u):
    """Estimated factor copula density at one k-vector or an (m, k) matrix."""
    pts = np.atleast_2d(np.asarray(u, dtype=float))
    if pts.shape[1] != fit.k:
        raise ValueError(f"expected {fit.k} coordinates, got {pts.shape[1]}")
    prod = np.ones((pts.shape[0], fit.quad.points.size))
    for j, link in enumerate(fit.links):
        prod *= eval_density_cross(link, pts[:, j], fit.quad.points)
    out = prod @ fit.quad.weights
    return float(out[0]) if np.asarray(u).ndim == 1 else out


def fit_naive(u_sub, kernel: KernelSpec = QUARTIC, clip=DEFAULT_CLIP) -> NaiveKdeFit:
    """Fit the naive KDE on an n x k matrix of uniform-scale data.

    Per-dimension bandwidths follow the normal-reference rule
    sigma_j (4/(k+2))^(1/(k+4)) n^(-1/(k+4)).
    """
    arr = u_sub.values if isinstance(u_sub, UniformMatrix) else np.asarray(u_sub, float)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    n, k = arr.shape
    if n < k + 1:
        raise DegenerateDataError(f"need n >= k+1, got n={n}, k={k}")
    factor = (4.0 / (k + 2.0)) ** (1.0 / (k + 4.0)) * n ** (-1.0 / (k + 4.0))
    bws = np.array([robust_scale(arr[:, j]) * factor for j in range(k)])
    return NaiveKdeFit(points=np.ascontiguousarray(arr), bandwidths=bws,
                       kernel=kernel, clip_region=tuple(clip))


def eval_naive(fit: NaiveKdeFit, u):
    """Naive KDE value at one k-vector or an (m, k) matrix."""
    pts = np.atleast_2d(np.asarray(u, dtype=float))
    k = fit.points.shape[1]
    if pts.shape[1] != k:
        raise ValueError(f"expected {k} coordinates, got {pts.shape[1]}")
    lo, hi = fit.clip_region
    pts = np.clip(pts, lo, hi)
    sums = np.asarray(_backend.naive_product_sum(
        fit.points, np.ascontiguousarray(pts), fit.bandwidths))
    out = sums / (fit.points.shape[0] * np.prod(fit.bandwidths))
    return float(out[0]) if np.asarray(u).ndim == 1 else out
