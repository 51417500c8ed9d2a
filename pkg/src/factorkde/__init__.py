"""Non-parametric estimation of one-factor copula densities.

The estimator chain: smooth the margins (or accept uniform scores), build a
rank-based proxy for the latent factor, fit each observed-variable/proxy
pair with a transformation kernel estimator, and integrate the product of
the fitted pair densities over the latent variable.  A seeded replication
harness benchmarks the result against a naive multivariate KDE and the true
density of the simulated model.
"""
from ._backend import backend_name
from .exceptions import (ConfigError, ConvergenceError, DegenerateDataError,
                         DomainError, ParameterError)
from .factor import (FactorCopulaFit, NaiveKdeFit, eval_factor, eval_naive,
                     fit_factor, fit_naive)
from .families import (CopulaFamily, OneFactorModel, density, h_function,
                       h_inverse, sample_one_factor, true_factor_density)
from .harness import ExperimentConfig, StudyResult, run_replication, run_study
from .kernels import (BandwidthMatrix, KernelSpec, QUARTIC, bandwidth_cdf,
                      bandwidth_copula, integrated_kernel, kernel_eval,
                      product_kernel_2d)
from .margins import (MarginalFit, UniformMatrix, eval_cdf, fit_marginal,
                      normal_scores, pseudo_observations)
from .metrics import (ErrorSummary, aggregate, replication_errors, rmsd,
                      scree_eigenvalues)
from .pairkde import (BivariateCopulaFit, eval_density, eval_density_cross,
                      fit_pair, integrate_density)
from .proxy import ProxyResult, compute_proxy
from .quadrature import QuadratureRule, gauss_legendre
from .quadrature import normal_scores as normal_scores_rule

__version__ = "0.1.0"

__all__ = [
    "BandwidthMatrix", "BivariateCopulaFit", "ConfigError", "ConvergenceError",
    "CopulaFamily", "DegenerateDataError", "DomainError", "ErrorSummary",
    "ExperimentConfig", "FactorCopulaFit", "KernelSpec", "MarginalFit",
    "NaiveKdeFit", "OneFactorModel", "ParameterError", "ProxyResult",
    "QUARTIC", "QuadratureRule", "StudyResult", "UniformMatrix", "aggregate",
    "backend_name", "bandwidth_cdf", "bandwidth_copula", "compute_proxy",
    "density", "eval_cdf", "eval_density", "eval_density_cross", "eval_factor",
    "eval_naive", "fit_factor", "fit_marginal", "fit_naive", "fit_pair",
    "gauss_legendre", "h_function", "h_inverse", "integrate_density",
    "integrated_kernel", "kernel_eval", "normal_scores", "normal_scores_rule",
    "product_kernel_2d", "pseudo_observations", "replication_errors", "rmsd",
    "run_replication", "run_study", "sample_one_factor", "scree_eigenvalues",
    "true_factor_density",
]
