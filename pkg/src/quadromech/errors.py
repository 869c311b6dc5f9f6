"""Exception hierarchy shared by all quadromech modules."""


class QuadromechError(Exception):
    """Base class for all errors raised by this package."""

    code = "ERROR"


class TruncationError(QuadromechError, ValueError):
    """Invalid Fock-space truncation (cutoff too small or inconsistent)."""

    code = "INVALID_TRUNCATION"


class OperatorShapeError(QuadromechError, ValueError):
    """Operator dimensions do not match the target space."""

    code = "SHAPE_MISMATCH"


class SuperoperatorTypeError(QuadromechError, TypeError):
    """An operator was used where a superoperator was required, or vice versa."""

    code = "SUPEROP_TYPE"


class RateError(QuadromechError, ValueError):
    """A damping or coupling rate is outside its valid range."""

    code = "INVALID_RATE"


class DomainError(QuadromechError, ValueError):
    """An argument is outside the mathematical domain of the operation."""

    code = "DOMAIN"


class DegenerateSteadyStateError(QuadromechError, RuntimeError):
    """The Liouvillian null space is not one dimensional at tolerance."""

    code = "DEGENERATE_STEADY_STATE"

    def __init__(self, message, singular_values=None):
        super().__init__(message)
        self.singular_values = singular_values


class SteadyStateResidualError(QuadromechError, RuntimeError):
    """No solver path produced a steady state within the residual tolerance."""

    code = "NUMERICAL_FAILURE"


class TruncationDivergenceError(QuadromechError, RuntimeError):
    """Observables failed to converge before the dimension cap was reached."""

    code = "TRUNCATION_DIVERGENCE"

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UndefinedCorrelationError(QuadromechError, ValueError):
    """A g2 denominator occupation is numerically zero."""

    code = "UNDEFINED_CORRELATION"


class SingularSystemError(QuadromechError, RuntimeError):
    """The weak-drive coefficient system is singular."""

    code = "SINGULAR_SYSTEM"


class SweepSpecError(QuadromechError, ValueError):
    """A sweep specification failed validation."""

    code = "SPEC_INVALID"


class ConfigError(QuadromechError, ValueError):
    """A run configuration is missing or malformed."""

    code = "CONFIG_INVALID"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code
