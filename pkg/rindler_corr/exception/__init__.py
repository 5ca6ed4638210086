"""
rindler-corr Exception Module
"""

from .corr_exception import (
    ConfigError,
    DimensionError,
    EigenSolverError,
    InvalidParameterError,
    InvariantViolationError,
    KoashiWinterMismatchError,
    MeasurementError,
    NegativeEigenvalueError,
    OptimizerConvergenceError,
    RecordAssemblyError,
    RindlerCorrError,
    StateValidationError,
    TruncationOverflowError,
)

__all__ = [
    "RindlerCorrError",
    "DimensionError",
    "StateValidationError",
    "NegativeEigenvalueError",
    "EigenSolverError",
    "InvalidParameterError",
    "TruncationOverflowError",
    "MeasurementError",
    "OptimizerConvergenceError",
    "InvariantViolationError",
    "KoashiWinterMismatchError",
    "RecordAssemblyError",
    "ConfigError",
]
