"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the open unit interval or other valid domain."""


class ParameterError(ValueError):
    """A copula parameter is outside its admissible range."""


class DegenerateDataError(ValueError):
    """Data has zero scale (constant column) or is otherwise unusable."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class ConfigError(ValueError):
    """An experiment configuration is invalid."""
