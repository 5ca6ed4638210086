"""
rindler-corr Correlations Module
"""

from ._measure import (
    ConditionalEntropyKernel,
    conditional_entropy_after_measurement,
    measure_alice,
)
from ._optimizer import ClassicalCorrelation, classical_correlations
from ._record import (
    KoashiWinterResult,
    assemble_record,
    discord,
    entanglement_of_formation_kw,
    koashi_winter,
    mutual_information,
)

__all__ = [
    # Measurement
    "ConditionalEntropyKernel",
    "measure_alice",
    "conditional_entropy_after_measurement",
    # Correlation measures
    "mutual_information",
    "ClassicalCorrelation",
    "classical_correlations",
    "discord",
    "entanglement_of_formation_kw",
    "KoashiWinterResult",
    "koashi_winter",
    # Pipeline
    "assemble_record",
]
