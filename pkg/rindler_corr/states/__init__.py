"""
rindler-corr States Module
"""

from ._builders import (
    one_particle_unruh,
    rho_A,
    rho_AAntiR,
    rho_AntiR,
    rho_AR,
    rho_R,
    rho_RAntiR,
    rindler_basis,
    tripartite_basis,
    tripartite_state,
    unruh_thermal_marginal,
    vacuum_rindler,
)
from ._truncation import (
    Squeezing,
    as_squeezing,
    branch_tail,
    required_truncation,
    resolve_truncation,
    squeezing_from_acceleration,
)

__all__ = [
    # Parameters and truncation
    "Squeezing",
    "as_squeezing",
    "squeezing_from_acceleration",
    "branch_tail",
    "required_truncation",
    "resolve_truncation",
    # Pure states
    "rindler_basis",
    "tripartite_basis",
    "vacuum_rindler",
    "one_particle_unruh",
    "tripartite_state",
    # Reduced states
    "rho_AR",
    "rho_AAntiR",
    "rho_RAntiR",
    "rho_A",
    "rho_R",
    "rho_AntiR",
    "unruh_thermal_marginal",
]
