"""Exception hierarchy shared across the simulator."""


class SimulationError(Exception):
    """Base class for all simulator errors."""


class ConfigError(SimulationError):
    """A scenario parameter or CLI argument violates an invariant."""


class DimensionError(SimulationError):
    """Matrix dimensions incompatible with the requested operation."""


class NumericalDomainError(SimulationError):
    """Input lies outside the numerical domain (e.g. not positive semi-definite)."""


class SingularMatrixError(SimulationError):
    """A matrix required to have full row rank is (numerically) rank deficient.

    Carries the offending ratio of smallest to largest singular value.
    """

    def __init__(self, message: str, sv_ratio: float):
        super().__init__(message)
        self.sv_ratio = sv_ratio


class DegenerateTrialError(SimulationError):
    """A Monte Carlo trial kept producing rank-deficient channels after retries."""
