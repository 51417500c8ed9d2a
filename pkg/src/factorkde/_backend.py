"""Backend selection for the numerical hot paths.

The compiled extension (``_fastcore``) is preferred when importable; the
numpy implementation (``_purepy``) is the fallback.  Set the environment
variable ``FACTORKDE_BACKEND=python`` (or ``compiled``) to force a choice
before import.

One kernel is routed differently: the Gumbel conditional-CDF inversion
stays on the numpy path even when the extension is available, because the
vectorized bisection beats the scalar compiled loop by ~5x (forty
iterations of SIMD transcendentals versus scalar libm calls; see
``benchmarks/bench_backends.py``).  ``FACTORKDE_BACKEND=compiled`` overrides
the routing and takes every kernel from the extension.
"""
import os
import warnings

from . import _purepy

_requested = os.environ.get("FACTORKDE_BACKEND", "").strip().lower()
if _requested not in ("", "compiled", "c", "python"):
    warnings.warn(f"unknown FACTORKDE_BACKEND={_requested!r}; "
                  "using the default selection")
    _requested = ""

_impl = None
if _requested != "python":
    try:
        from . import _fastcore as _impl
    except ImportError:
        if _requested:
            warnings.warn("compiled backend requested but unavailable; "
                          "using the pure-Python fallback")

if _impl is None:
    _impl = _purepy

BACKEND = "compiled" if _impl is not _purepy else "python"

quartic_design = _impl.quartic_design
pair_eval_points = _impl.pair_eval_points
naive_product_sum = _impl.naive_product_sum

if _requested in ("compiled", "c"):
    gumbel_hinv = _impl.gumbel_hinv
else:
    gumbel_hinv = _purepy.gumbel_hinv


def backend_name():
    """'compiled' when the Cython extension is active, else 'python'."""
    return BACKEND
