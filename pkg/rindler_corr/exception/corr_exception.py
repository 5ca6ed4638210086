from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from rindler_corr.model import MeasurementDirection


class RindlerCorrError(Exception):
    """Base exception for all rindler-corr errors.

    All exceptions raised by the library inherit from this class,
    allowing callers to catch every library error with a single except clause.

    Example:
        try:
            record = assemble_record(2.0, TruncationPolicy.adaptive())
        except RindlerCorrError as e:
            # Catches any rindler-corr error
            print(f"rindler-corr error: {e}")
    """


class DimensionError(RindlerCorrError):
    """Exception raised when bases do not match or a subsystem is unknown."""


class StateValidationError(RindlerCorrError):
    """Exception raised when a state breaks its trace, norm or symmetry invariant."""


class NegativeEigenvalueError(StateValidationError):
    """Exception raised when a spectrum has an eigenvalue below the PSD tolerance.

    This signals a defective state construction rather than round-off.
    """


class EigenSolverError(RindlerCorrError):
    """Exception raised when the Jacobi solver exhausts its sweeps."""


class InvalidParameterError(RindlerCorrError, ValueError):
    """Exception raised for out-of-range physical or numerical parameters."""


class TruncationOverflowError(RindlerCorrError):
    """Exception raised when the adaptive truncation would exceed its hard cap."""

    def __init__(self, alpha: float, cap: int):
        super().__init__(
            f"truncation overflow: alpha={alpha!r} needs more than N={cap} levels"
        )
        self.alpha = alpha
        self.cap = cap

    def __reduce__(self):
        return type(self), (self.alpha, self.cap)


class MeasurementError(RindlerCorrError):
    """Exception raised when the measured factor is absent or not two-level."""


class OptimizerConvergenceError(RindlerCorrError):
    """Exception raised when the Nelder-Mead refinement does not converge.

    The best point found so far is kept on the exception so callers can
    decide whether it is usable.
    """

    def __init__(
        self,
        message: str,
        best_value: float,
        best_direction: "MeasurementDirection",
    ):
        super().__init__(message)
        self.best_value = best_value
        self.best_direction = best_direction

    def __reduce__(self):
        return type(self), (str(self), self.best_value, self.best_direction)


class InvariantViolationError(RindlerCorrError):
    """Exception raised when an identity that must hold numerically fails.

    For example the conservation law I(AR) + I(AR̄) = 2 S(A), or a
    purification identity S(AR) = S(R̄).
    """


class KoashiWinterMismatchError(InvariantViolationError):
    """Exception raised when the two Koashi-Winter routes to E_F disagree."""


class RecordAssemblyError(RindlerCorrError):
    """Exception raised when the pipeline for one squeezing value fails."""

    def __init__(self, alpha: float, cause: BaseException):
        super().__init__(f"record assembly failed at alpha={alpha!r}: {cause}")
        self.alpha = alpha
        self.cause = cause

    # worker processes send these back to the sweep runner
    def __reduce__(self):
        return type(self), (self.alpha, self.cause)


class ConfigError(RindlerCorrError):
    """Exception raised when a configuration file or value is invalid."""
