from dataclasses import dataclass

from rindler_corr.exception import InvalidParameterError
from rindler_corr.utils.const import (
    DEFAULT_CLAMP_TOL,
    DEFAULT_CONSERVATION_TOL,
    DEFAULT_GRID_PHI,
    DEFAULT_GRID_THETA,
    DEFAULT_JACOBI_TOL,
    DEFAULT_KOASHI_WINTER_TOL,
    DEFAULT_OPTIMIZER_FATOL,
    DEFAULT_OPTIMIZER_MAX_ITERATIONS,
    DEFAULT_OPTIMIZER_XATOL,
    DEFAULT_PURIFICATION_TOL,
    DEFAULT_TAU_NORM,
    DEFAULT_TAU_PSD,
    EigenSolver,
)


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical tolerances shared by the whole pipeline.

    Attributes:
        norm: Allowed deviation of traces and squared norms from one.
        psd: Eigenvalues in ``[-psd, 0)`` are clamped to zero; below that
            the state is rejected.
        jacobi: Relative off-diagonal Frobenius norm at which Jacobi stops.
        clamp: Slack below zero tolerated for J, D and E_F before clamping.
        conservation: Allowed violation of I(AR) + I(AR̄) = 2 S(A).
        purification: Allowed violation of the pure-state entropy equalities.
        koashi_winter: Allowed disagreement of the two E_F routes.
    """

    norm: float = DEFAULT_TAU_NORM
    psd: float = DEFAULT_TAU_PSD
    jacobi: float = DEFAULT_JACOBI_TOL
    clamp: float = DEFAULT_CLAMP_TOL
    conservation: float = DEFAULT_CONSERVATION_TOL
    purification: float = DEFAULT_PURIFICATION_TOL
    koashi_winter: float = DEFAULT_KOASHI_WINTER_TOL

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0.0:
                raise InvalidParameterError(f"tolerance {name} must be > 0, got {value!r}")


@dataclass(frozen=True)
class OptimizerSettings:
    """
    Schedule of the measurement-direction search: a coarse φ×θ grid
    followed by a Nelder-Mead refinement from the best grid point. States
    whose conditional spectra do not depend on φ use only the θ grid and a
    bounded scalar refinement.
    """

    grid_phi: int = DEFAULT_GRID_PHI
    grid_theta: int = DEFAULT_GRID_THETA
    xatol: float = DEFAULT_OPTIMIZER_XATOL
    fatol: float = DEFAULT_OPTIMIZER_FATOL
    max_iterations: int = DEFAULT_OPTIMIZER_MAX_ITERATIONS

    def __post_init__(self):
        if self.grid_phi < 1 or self.grid_theta < 2:
            raise InvalidParameterError(
                f"coarse grid {self.grid_phi}x{self.grid_theta} is too small"
            )
        if self.xatol <= 0.0 or self.fatol <= 0.0:
            raise InvalidParameterError("optimizer tolerances must be > 0")
        if self.max_iterations < 1:
            raise InvalidParameterError("optimizer needs at least one iteration")


@dataclass(frozen=True)
class NumericsConfig:
    """
    Bundle of the knobs every per-α computation depends on.

    ``eigensolver`` defaults to LAPACK. Both solvers diagonalize the same
    irreducible blocks and agree to the Jacobi tolerance, and LAPACK is
    the faster of the two on the large blocks that appear at strong
    squeezing. Jacobi stays available as the reference
    solver through the ``eigensolver`` config key or ``--eigensolver``.
    """

    tolerances: Tolerances = Tolerances()
    optimizer: OptimizerSettings = OptimizerSettings()
    eigensolver: EigenSolver = EigenSolver.LAPACK

    def __post_init__(self):
        object.__setattr__(self, "eigensolver", EigenSolver(self.eigensolver))
