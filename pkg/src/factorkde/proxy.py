"""Proxy construction for the latent factor.

The proxy chain: row means of the normal scores, then a rank transform to
the uniform scale, then the normal quantile.  Ranks use the /(n+1)
convention so the final quantile step stays finite.
"""
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .margins import UniformMatrix, normal_scores


@dataclass(frozen=True)
class ProxyResult:
    """Latent-factor proxy on three scales.

    ``z_bar`` are row means of normal scores, ``v_hat`` their ranks mapped to
    {1/(n+1), ..., n/(n+1)}, and ``w_hat = ndtri(v_hat)``.  All three share
    the ordering of ``z_bar``.
    """
    w_hat: np.ndarray
    v_hat: np.ndarray
    z_bar: np.ndarray


def _unit_ranks(x):
    """Ranks (ties broken by input order) divided by n + 1."""
    n = x.size
    order = np.argsort(x, kind="stable")
    ranks = np.empty(n, dtype=float)
    ranks[order] = np.arange(1, n + 1, dtype=float)
    return ranks / (n + 1.0)


def compute_proxy(u, auto_orient: bool = False) -> ProxyResult:
    """Estimate the latent factor from all columns of ``u``.

    With ``auto_orient`` the sign is flipped when the proxy is negatively
    rank-correlated with the first column (exploratory use only; links are
    normally assumed stochastically increasing).
    """
    um = UniformMatrix.coerce(u)
    if um.n < 2 or um.d < 2:
        raise ValueError("need at least 2 rows and 2 columns")
    z_bar = normal_scores(um).mean(axis=1)
    if np.unique(z_bar).size < z_bar.size:
        warnings.warn("ties in row means; broken by input order")
    v_hat = _unit_ranks(z_bar)
    if auto_orient:
        rho = np.corrcoef(_unit_ranks(um.column(0)), v_hat)[0, 1]
        if rho < 0.0:
            v_hat = 1.0 - v_hat
    w_hat = ndtri(v_hat)
    return ProxyResult(w_hat=w_hat, v_hat=v_hat, z_bar=z_bar)
