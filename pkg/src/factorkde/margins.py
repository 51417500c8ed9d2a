"""Marginal CDF smoothing, pseudo-observations, and normal scores."""
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .exceptions import DegenerateDataError, DomainError
from .kernels import (DEFAULT_CDF_CONST, QUARTIC, KernelSpec, bandwidth_cdf,
                      integrated_kernel)

UNIT_CLAMP = 1e-6


class UniformMatrix:
    """An n x d matrix with every entry strictly inside (0, 1).

    Entries are clamped into [1e-6, 1 - 1e-6] on construction so that normal
    scores stay finite.
    """

    __slots__ = ("values",)

    def __init__(self, values):
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d matrix")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("matrix must be non-empty")
        if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0) or np.any(arr >= 1.0):
            raise DomainError("entries must be finite and strictly inside (0, 1)")
        self.values = np.clip(arr, UNIT_CLAMP, 1.0 - UNIT_CLAMP)

    @classmethod
    def coerce(cls, obj) -> "UniformMatrix":
        return obj if isinstance(obj, UniformMatrix) else cls(obj)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def column(self, j: int):
        return self.values[:, j]


@dataclass(frozen=True)
class MarginalFit:
    """A smoothed marginal CDF: data points, bandwidth, kernel."""
    data: np.ndarray
    bandwidth: float
    kernel: KernelSpec = QUARTIC


def fit_marginal(data, kernel: KernelSpec = QUARTIC,
                 const: float = DEFAULT_CDF_CONST) -> MarginalFit:
    """Bind a data vector to its CDF-smoothing bandwidth."""
    arr = np.asarray(data, dtype=float).ravel()
    if arr.size < 2:
        raise DegenerateDataError("need at least 2 observations")
    return MarginalFit(data=arr, bandwidth=bandwidth_cdf(arr, const), kernel=kernel)


def eval_cdf(fit: MarginalFit, x):
    """Smoothed CDF estimate (1/n) sum_i J((x - X_i)/b).

    Nondecreasing in x, exactly 0 below min(data) - b and 1 above
    max(data) + b.
    """
    x = np.asarray(x, dtype=float)
    s = (np.atleast_1d(x)[:, None] - fit.data[None, :]) / fit.bandwidth
    out = integrated_kernel(fit.kernel, s).mean(axis=1)
    return float(out[0]) if x.ndim == 0 else out


def pseudo_observations(raw, kernel: KernelSpec = QUARTIC,
                        const: float = DEFAULT_CDF_CONST) -> UniformMatrix:
    """Map each column of ``raw`` through its own smoothed CDF."""
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    out = np.empty_like(arr)
    for j in range(arr.shape[1]):
        col = arr[:, j]
        try:
            fit = fit_marginal(col, kernel, const)
        except DegenerateDataError as exc:
            raise DegenerateDataError(f"column {j} is degenerate") from exc
        out[:, j] = eval_cdf(fit, col)
    return UniformMatrix(np.clip(out, UNIT_CLAMP, 1.0 - UNIT_CLAMP))


def normal_scores(u):
    """Entrywise standard-normal quantile transform."""
    if isinstance(u, UniformMatrix):
        return ndtri(u.values)
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DomainError("entries must lie strictly inside (0, 1)")
    return ndtri(arr)


def normal_cdf(x):
    """Standard normal CDF (erf-based)."""
    return ndtr(np.asarray(x, dtype=float))
