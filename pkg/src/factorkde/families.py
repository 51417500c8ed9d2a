"""Parametric bivariate copulas (independence, Gumbel, Clayton) and the
one-factor simulator built on them.

These families drive the simulation study and provide the ground-truth
density for benchmarking; the kernel estimators themselves are
family-agnostic.
"""
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .exceptions import ConvergenceError, DomainError, ParameterError
from .quadrature import QuadratureRule, gauss_legendre

INDEPENDENCE = "independence"
GUMBEL = "gumbel"
CLAYTON = "clayton"

_FAMILIES = (INDEPENDENCE, GUMBEL, CLAYTON)

# Bracket tolerance for the Gumbel inversion.  The w-scale residual is
# |dh/du| * tol, and linking densities reach ~200 on the clip region, so the
# bracket must be ~1e-12 for the round trip to hold at 1e-9.
HINV_TOL = 1e-12
HINV_MAX_ITER = 200


@dataclass(frozen=True)
class CopulaFamily:
    """A bivariate linking copula: family tag plus dependence parameter.

    Parameter ranges: Gumbel theta >= 1, Clayton theta > 0.  Independence
    takes no parameter.  Both parametrized families are stochastically
    increasing on these ranges.
    """
    family: str
    theta: float = float("nan")

    def __post_init__(self):
        fam = self.family.lower()
        if fam not in _FAMILIES:
            raise ParameterError(f"unknown copula family: {self.family!r}")
        object.__setattr__(self, "family", fam)
        if fam == GUMBEL and not self.theta >= 1.0:
            raise ParameterError(f"Gumbel requires theta >= 1, got {self.theta}")
        if fam == CLAYTON and not self.theta > 0.0:
            raise ParameterError(f"Clayton requires theta > 0, got {self.theta}")

    @staticmethod
    def independence() -> "CopulaFamily":
        return CopulaFamily(INDEPENDENCE)

    @staticmethod
    def gumbel(theta: float) -> "CopulaFamily":
        return CopulaFamily(GUMBEL, float(theta))

    @staticmethod
    def clayton(theta: float) -> "CopulaFamily":
        return CopulaFamily(CLAYTON, float(theta))

    @staticmethod
    def from_config(obj: dict) -> "CopulaFamily":
        """Build from a {"family": ..., "theta": ...} mapping."""
        fam = str(obj.get("family", "")).lower()
        if fam == INDEPENDENCE:
            return CopulaFamily.independence()
        return CopulaFamily(fam, float(obj.get("theta", float("nan"))))

    def kendall_tau(self) -> float:
        """Population Kendall's tau of the family."""
        if self.family == INDEPENDENCE:
            return 0.0
        if self.family == GUMBEL:
            return 1.0 - 1.0 / self.theta
        return self.theta / (self.theta + 2.0)


@dataclass(frozen=True)
class OneFactorModel:
    """d observed variables, each tied to one latent factor by a linking copula."""
    links: tuple

    def __post_init__(self):
        links = tuple(self.links)
        if len(links) < 2:
            raise ParameterError("a one-factor model needs at least 2 variables")
        for link in links:
            if not isinstance(link, CopulaFamily):
                raise ParameterError("links must be CopulaFamily instances")
        object.__setattr__(self, "links", links)

    @property
    def d(self) -> int:
        return len(self.links)

    @staticmethod
    def homogeneous(link: CopulaFamily, d: int) -> "OneFactorModel":
        return OneFactorModel(tuple([link] * d))


def _check_unit(*arrays):
    for a in arrays:
        if np.any(a <= 0.0) or np.any(a >= 1.0):
            raise DomainError("arguments must lie strictly inside (0, 1)")


def density(fam: CopulaFamily, u, v):
    """Copula density c(u, v); closed form per family."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_unit(u, v)
    if fam.family == INDEPENDENCE:
        out = np.ones(np.broadcast(u, v).shape)
    elif fam.family == GUMBEL:
        th = fam.theta
        x = -np.log(u)
        y = -np.log(v)
        s = (x**th + y**th) ** (1.0 / th)
        out = (np.exp(-s) * (x * y) ** (th - 1.0)
               * (s + th - 1.0) * s ** (1.0 - 2.0 * th) / (u * v))
    else:
        th = fam.theta
        t = u ** (-th) + v ** (-th) - 1.0
        out = (1.0 + th) * (u * v) ** (-th - 1.0) * t ** (-1.0 / th - 2.0)
    return out if out.ndim else float(out)


def h_function(fam: CopulaFamily, u, v):
    """Conditional CDF of the first argument given the second, dC(u,v)/dv."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_unit(u, v)
    if fam.family == INDEPENDENCE:
        out = np.broadcast_to(u, np.broadcast(u, v).shape).copy()
    elif fam.family == GUMBEL:
        th = fam.theta
        x = -np.log(u)
        y = -np.log(v)
        s = (x**th + y**th) ** (1.0 / th)
        out = np.exp(-s) * s ** (1.0 - th) * y ** (th - 1.0) / v
    else:
        th = fam.theta
        t = u ** (-th) + v ** (-th) - 1.0
        out = v ** (-th - 1.0) * t ** (-1.0 / th - 1.0)
    return out if out.ndim else float(out)


def h_inverse(fam: CopulaFamily, w, v):
    """Solve h_function(fam, u, v) = w for u.

    Clayton and independence invert in closed form; Gumbel falls back to
    bisection on [1e-12, 1 - 1e-12] (bracket tolerance 1e-12, at most 200
    steps), which the monotone conditional CDF always brackets.
    """
    w = np.asarray(w, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_unit(w, v)
    scalar = w.ndim == 0 and v.ndim == 0
    if fam.family == INDEPENDENCE:
        out = np.broadcast_to(w, np.broadcast(w, v).shape).copy()
    elif fam.family == CLAYTON:
        th = fam.theta
        out = ((w ** (-th / (th + 1.0)) - 1.0) * v ** (-th) + 1.0) ** (-1.0 / th)
    else:
        wb, vb = np.broadcast_arrays(w, v)
        shape = wb.shape
        wf = np.ascontiguousarray(wb.ravel(), dtype=float)
        vf = np.ascontiguousarray(vb.ravel(), dtype=float)
        out = np.asarray(_backend.gumbel_hinv(wf, vf, fam.theta,
                                              HINV_TOL, HINV_MAX_ITER))
        resid = np.abs(h_function(fam, np.clip(out, 1e-12, 1 - 1e-12), vf) - wf)
        # interior roots must be resolved; w pinned against the bracket ends
        # legitimately saturates (h(1e-12|v) > w or h(1-1e-12|v) < w)
        bad = (resid > 1e-6) & (out > 2e-12) & (out < 1.0 - 2e-12)
        if np.any(bad):
            raise ConvergenceError(
                f"h_inverse failed to converge for {int(bad.sum())} inputs")
        out = out.reshape(shape)
    return float(out) if scalar else out


def sample_one_factor(model: OneFactorModel, n: int, seed: int):
    """Draw n rows from the one-factor model by conditional inversion.

    Returns ``(u, latent)`` where ``u`` is the n x d matrix of observed
    uniforms and ``latent`` the factor draws (kept so proxy accuracy can be
    validated).  Fully determined by ``seed``.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    rng = np.random.default_rng(seed)
    v0 = rng.uniform(size=n)
    v0 = np.clip(v0, 1e-12, 1.0 - 1e-12)
    w = rng.uniform(size=(n, model.d))
    w = np.clip(w, 1e-12, 1.0 - 1e-12)
    u = np.empty((n, model.d))
    for j, link in enumerate(model.links):
        u[:, j] = h_inverse(link, w[:, j], v0)
    return np.clip(u, 1e-6, 1.0 - 1e-6), v0


def true_factor_density(model: OneFactorModel, u: Sequence[float],
                        quad: QuadratureRule | None = None):
    """Exact k-dimensional factor copula density at ``u`` by quadrature.

    ``u`` may be one k-vector or an (m, k) matrix of evaluation points with
    k <= d; the product of the first k linking densities is integrated over
    the latent variable.
    """
    if quad is None:
        quad = gauss_legendre(100, flatten=1)
    pts = np.atleast_2d(np.asarray(u, dtype=float))
    k = pts.shape[1]
    if k > model.d:
        raise DomainError(f"asked for {k} coordinates but model has d={model.d}")
    _check_unit(pts)
    prod = np.ones((pts.shape[0], quad.points.size))
    for j in range(k):
        prod *= density(model.links[j], pts[:, j][:, None], quad.points[None, :])
    out = prod @ quad.weights
    return float(out[0]) if np.asarray(u).ndim == 1 else out
