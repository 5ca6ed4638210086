"""
rindler-corr Fock-space Linear Algebra Module
"""

from ._jacobi import jacobi_eigenvalues
from ._linalg import (
    eigenvalues_symmetric,
    entropy_from_spectrum,
    mix,
    outer,
    partial_trace,
    pure_reduced_spectrum,
    reduce_pure,
    tensor,
    von_neumann_entropy,
)

__all__ = [
    # Construction
    "outer",
    "mix",
    "tensor",
    # Reduction
    "partial_trace",
    "reduce_pure",
    # Spectra and entropy
    "eigenvalues_symmetric",
    "pure_reduced_spectrum",
    "jacobi_eigenvalues",
    "entropy_from_spectrum",
    "von_neumann_entropy",
]
