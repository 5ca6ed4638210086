"""
rindler-corr Oracle Module
"""

from ._grid import grid_search_J, projective_conditional_entropy
from ._series import (
    rho_AAntiR_series,
    rho_AntiR_series,
    rho_AR_series,
    rho_R_series,
    rho_RAntiR_series,
    thermal_series,
)
from ._tails import tail_weight
from ._verify import SPOT_CHECK_ALPHAS, CheckResult, VerificationReport, verify_all

__all__ = [
    # Closed-form series
    "rho_AR_series",
    "rho_AAntiR_series",
    "rho_RAntiR_series",
    "rho_R_series",
    "rho_AntiR_series",
    "thermal_series",
    # Brute force
    "grid_search_J",
    "projective_conditional_entropy",
    "tail_weight",
    # Verification
    "SPOT_CHECK_ALPHAS",
    "CheckResult",
    "VerificationReport",
    "verify_all",
]
