"""Kernel functions, their antiderivatives, and bandwidth rules.

The quartic (biweight) kernel is the default: it is a symmetric density on
[-1, 1] with a continuous first derivative everywhere, including at the
support endpoints.
"""
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateDataError

DEFAULT_CDF_CONST = 1.587
DEFAULT_DENSITY_CONST = 1.25


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice; only the quartic kernel is currently implemented."""
    kind: str = "quartic"

    def __post_init__(self):
        if self.kind != "quartic":
            raise ValueError(f"unsupported kernel kind: {self.kind!r}")

    @property
    def support(self):
        return (-1.0, 1.0)


QUARTIC = KernelSpec()


@dataclass(frozen=True)
class BandwidthMatrix:
    """Lower-triangular 2x2 bandwidth matrix [[b1, 0], [b3, b2]]."""
    b1: float
    b2: float
    b3: float = 0.0

    def __post_init__(self):
        if not (self.b1 > 0.0 and self.b2 > 0.0):
            raise ValueError("bandwidth matrix must be positive definite "
                             f"(b1={self.b1}, b2={self.b2})")

    @property
    def det(self):
        return self.b1 * self.b2


def kernel_eval(spec: KernelSpec, s):
    """Quartic kernel K(s) = (15/16)(1 - s^2)^2 on [-1, 1], zero outside."""
    s = np.asarray(s, dtype=float)
    t = 1.0 - s * s
    out = np.where(t > 0.0, (15.0 / 16.0) * t * t, 0.0)
    return out if out.ndim else float(out)


def integrated_kernel(spec: KernelSpec, x):
    """J(x) = integral of K up to x; closed-form polynomial on [-1, 1]."""
    x = np.asarray(x, dtype=float)
    xc = np.clip(x, -1.0, 1.0)
    out = (15.0 / 16.0) * (xc - 2.0 * xc**3 / 3.0 + xc**5 / 5.0) + 0.5
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def product_kernel_2d(spec: KernelSpec, bw: BandwidthMatrix, s):
    """K_B(s) = K(t1) K(t2) / det(B) with t = B^{-1} s."""
    s = np.asarray(s, dtype=float)
    if bw.det <= 0.0:
        raise ValueError("singular bandwidth matrix")
    s1, s2 = s[..., 0], s[..., 1]
    t1 = s1 / bw.b1
    t2 = (s2 - bw.b3 * s1 / bw.b1) / bw.b2
    out = kernel_eval(spec, t1) * kernel_eval(spec, t2) / bw.det
    return out if np.ndim(out) else float(out)


def robust_scale(data):
    """min(sample std, IQR/1.349); raises on zero scale."""
    data = np.asarray(data, dtype=float)
    if data.size < 2:
        raise DegenerateDataError("need at least 2 observations")
    sd = float(np.std(data, ddof=1))
    q75, q25 = np.percentile(data, [75.0, 25.0])
    iqr_scale = (q75 - q25) / 1.349
    scale = min(sd, iqr_scale) if iqr_scale > 0.0 else sd
    if scale <= 1e-12 * (1.0 + float(np.abs(data).max())):
        raise DegenerateDataError("data has zero scale")
    return scale


def bandwidth_cdf(data, const: float = DEFAULT_CDF_CONST) -> float:
    """CDF-smoothing bandwidth b = const * sigma * n^(-1/3).

    The n^(-1/3) rate satisfies b -> 0 with n b^2 -> infinity.
    """
    data = np.asarray(data, dtype=float)
    n = data.size
    if n < 2:
        raise DegenerateDataError("need at least 2 observations")
    return const * robust_scale(data) * n ** (-1.0 / 3.0)


def bandwidth_copula(z_data, const: float = DEFAULT_DENSITY_CONST) -> BandwidthMatrix:
    """Diagonal density bandwidth b*I with b = const * sigma_bar * n^(-1/6).

    ``z_data`` holds normal scores, one column per coordinate; sigma_bar is
    the mean of the per-coordinate robust scales.
    """
    z = np.asarray(z_data, dtype=float)
    if z.ndim != 2 or z.shape[1] != 2:
        raise ValueError("expected an n x 2 matrix of normal scores")
    n = z.shape[0]
    if n < 4:
        raise DegenerateDataError("need at least 4 observations")
    sigma = 0.5 * (robust_scale(z[:, 0]) + robust_scale(z[:, 1]))
    b = const * sigma * n ** (-1.0 / 6.0)
    return BandwidthMatrix(b1=b, b2=b, b3=0.0)
