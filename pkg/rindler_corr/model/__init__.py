"""
rindler-corr Model Module
"""

from ._basis import BasisLabel, as_subsystem
from ._measurement import MeasurementDirection, MeasurementOutcome
from ._parameters import AccelerationSpec, SqueezingParameter, TruncationPolicy
from ._record import CorrelationRecord, SweepResult
from ._settings import NumericsConfig, OptimizerSettings, Tolerances
from ._state import DensityMatrix, PureStateVector, Spectrum

__all__ = [
    # Fock-space values
    "BasisLabel",
    "as_subsystem",
    "DensityMatrix",
    "PureStateVector",
    "Spectrum",
    # Parameters
    "SqueezingParameter",
    "AccelerationSpec",
    "TruncationPolicy",
    # Settings
    "Tolerances",
    "OptimizerSettings",
    "NumericsConfig",
    # Measurement
    "MeasurementDirection",
    "MeasurementOutcome",
    # Results
    "CorrelationRecord",
    "SweepResult",
]
