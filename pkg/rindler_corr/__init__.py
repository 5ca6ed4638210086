"""
rindler-corr computes entropies, mutual information, classical correlations,
discord and entanglement of formation for a maximally entangled field mode
shared by an inertial observer and two uniformly accelerated observers.
"""

from .correlations import (
    ClassicalCorrelation,
    KoashiWinterResult,
    assemble_record,
    classical_correlations,
    discord,
    entanglement_of_formation_kw,
    koashi_winter,
    mutual_information,
)
from .exception import (
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
from .model import (
    AccelerationSpec,
    BasisLabel,
    CorrelationRecord,
    DensityMatrix,
    MeasurementDirection,
    NumericsConfig,
    SqueezingParameter,
    SweepResult,
    Tolerances,
    TruncationPolicy,
)
from .model.sweep_config import (
    AccelerationAxisConfig,
    SqueezingAxisConfig,
    SweepConfig,
)
from .states import (
    required_truncation,
    rho_AAntiR,
    rho_AR,
    rho_RAntiR,
    squeezing_from_acceleration,
    tripartite_state,
)
from .sweep import AsyncSweepRunner, convergence_study, emit_csv, emit_plots, run_sweep
from .utils.helpers import tool_version

__version__ = tool_version()

__all__ = [
    # Pipeline
    "assemble_record",
    "AsyncSweepRunner",
    "run_sweep",
    "convergence_study",
    "emit_csv",
    "emit_plots",
    # States
    "tripartite_state",
    "rho_AR",
    "rho_AAntiR",
    "rho_RAntiR",
    "required_truncation",
    "squeezing_from_acceleration",
    # Correlation measures
    "mutual_information",
    "ClassicalCorrelation",
    "classical_correlations",
    "discord",
    "entanglement_of_formation_kw",
    "KoashiWinterResult",
    "koashi_winter",
    # Configuration
    "SweepConfig",
    "SqueezingAxisConfig",
    "AccelerationAxisConfig",
    "TruncationPolicy",
    "NumericsConfig",
    "Tolerances",
    # Model types
    "BasisLabel",
    "DensityMatrix",
    "SqueezingParameter",
    "AccelerationSpec",
    "MeasurementDirection",
    "CorrelationRecord",
    "SweepResult",
    # Exceptions
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
