import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from rindler_corr.correlations._measure import ConditionalEntropyKernel
from rindler_corr.exception import InvariantViolationError, OptimizerConvergenceError
from rindler_corr.fockla import partial_trace, von_neumann_entropy
from rindler_corr.model import (
    DensityMatrix,
    MeasurementDirection,
    NumericsConfig,
    OptimizerSettings,
)
from rindler_corr.utils.const import Subsystem

logger = logging.getLogger("rindler_corr")


@dataclass(frozen=True)
class ClassicalCorrelation:
    """
    Result of maximizing the information one party's measurement extracts.

    Attributes:
        value: J in bits, clamped at zero when within tolerance below it.
        direction: A measurement axis attaining the optimum.
        conditional_entropy: The minimized Σ p S(ρ^±).
        marginal_entropy: Entropy of the unmeasured marginal.
        evaluations: Number of conditional-entropy evaluations spent.
        clamped: Whether ``value`` was clamped to zero.
        clamped_eigenvalues: Round-off eigenvalues set to zero on the way.
    """

    value: float
    direction: MeasurementDirection
    conditional_entropy: float
    marginal_entropy: float
    evaluations: int
    clamped: bool = False
    clamped_eigenvalues: int = 0


def classical_correlations(
    rho: DensityMatrix,
    measured: Subsystem | str = Subsystem.ALICE,
    numerics: Optional[NumericsConfig] = None,
    marginal_entropy: Optional[float] = None,
) -> ClassicalCorrelation:
    """
    Computes J = S(ρ_B) - min_x Σ p_± S(ρ_B^±) over projective qubit
    measurements on ``measured``.

    Since Π_±(-x) = Π_∓(x), only the upper half-sphere is searched
    coarsely: ``grid_theta`` polar angles from the pole to the equator,
    both included, times ``grid_phi`` azimuths. Nelder-Mead then refines
    the best grid point over unrestricted (θ, φ), starting from a simplex
    one grid step wide in each angle.

    When the kernel reports the state as azimuthal (the conditional spectra
    do not depend on φ, as for ρ_AR and ρ_AR̄) the azimuths are
    dropped: the ``grid_theta`` polar angles are scanned and a bounded
    scalar minimization refines between the neighbours of the best one.

    Args:
        rho (DensityMatrix): A real bipartite state.
        measured (Subsystem | str, optional): The two-level factor measured.
            Defaults to Alice.
        numerics (Optional[NumericsConfig], optional): Tolerances, optimizer
            schedule and solver. Defaults to NumericsConfig().
        marginal_entropy (Optional[float], optional): S of the unmeasured
            marginal when the caller already has it.

    Returns:
        ClassicalCorrelation: J and the optimal axis.

    Raises:
        MeasurementError: If ``measured`` is not a two-level factor.
        OptimizerConvergenceError: If the refinement does not converge.
        InvariantViolationError: If J falls outside [0, min(S_A, S_B)]
            by more than the clamp tolerance.
    """
    numerics = numerics or NumericsConfig()
    tol = numerics.tolerances
    settings = numerics.optimizer
    kernel = ConditionalEntropyKernel(rho, measured, numerics.eigensolver, tol)

    if marginal_entropy is None:
        marginal_entropy = von_neumann_entropy(
            partial_trace(rho, kernel.unmeasured_basis.ids), numerics.eigensolver, tol
        )
    measured_entropy = von_neumann_entropy(
        partial_trace(rho, {kernel.measured}), numerics.eigensolver, tol
    )

    if kernel.azimuthal:
        h_min, direction = _polar_search(kernel, settings)
    else:
        h_min, direction = _sphere_search(kernel, settings)

    value = marginal_entropy - h_min
    clamped = False
    if value < 0.0:
        if value < -tol.clamp:
            raise InvariantViolationError(f"classical correlations J={value!r} < 0")
        logger.debug("Clamped J=%.3e to 0", value)
        value, clamped = 0.0, True
    bound = min(marginal_entropy, measured_entropy)
    if value > bound + tol.clamp:
        raise InvariantViolationError(
            f"classical correlations J={value!r} exceed min(S_A, S_B)={bound!r}"
        )

    return ClassicalCorrelation(
        value=value,
        direction=direction,
        conditional_entropy=h_min,
        marginal_entropy=marginal_entropy,
        evaluations=kernel.evaluations,
        clamped=clamped,
        clamped_eigenvalues=kernel.clamped_eigenvalues,
    )


def _polar_search(
    kernel: ConditionalEntropyKernel, settings: OptimizerSettings
) -> tuple[float, MeasurementDirection]:
    # f(θ) = f(π - θ) once φ drops out
    thetas = np.linspace(0.0, 0.5 * math.pi, settings.grid_theta)
    values = np.array([kernel.at_polar(theta) for theta in thetas])
    i = int(np.argmin(values))
    lower = thetas[max(i - 1, 0)]
    upper = thetas[min(i + 1, thetas.size - 1)]
    logger.debug(
        "Polar grid minimum %.12g at theta=%.6f, refining on [%.6f, %.6f]",
        values[i],
        thetas[i],
        lower,
        upper,
    )
    result = minimize_scalar(
        kernel.at_polar,
        bounds=(lower, upper),
        method="bounded",
        options={"xatol": settings.xatol, "maxiter": settings.max_iterations},
    )
    if result.fun <= values[i]:
        h_min, theta = float(result.fun), float(result.x)
    else:
        h_min, theta = float(values[i]), float(thetas[i])
    direction = MeasurementDirection.canonical(theta, 0.0)
    if not result.success:
        raise OptimizerConvergenceError(
            f"bounded polar search did not converge: {result.message}", h_min, direction
        )
    logger.debug(
        "Refined minimum %.12g at theta=%.9f (%d evaluations)",
        h_min,
        direction.theta,
        kernel.evaluations,
    )
    return h_min, direction


def _sphere_search(
    kernel: ConditionalEntropyKernel, settings: OptimizerSettings
) -> tuple[float, MeasurementDirection]:
    thetas = np.linspace(0.0, 0.5 * math.pi, settings.grid_theta)
    phis = 2.0 * math.pi * np.arange(settings.grid_phi) / settings.grid_phi
    best = (math.inf, 0.0, 0.0)
    for theta in thetas:
        # the pole is a single point
        for phi in phis if theta > 0.0 else phis[:1]:
            value = kernel.at_angles(theta, phi)
            if value < best[0]:
                best = (value, float(theta), float(phi))
    grid_value, theta0, phi0 = best
    logger.debug(
        "Coarse grid minimum %.12g at theta=%.6f phi=%.6f after %d evaluations",
        grid_value,
        theta0,
        phi0,
        kernel.evaluations,
    )

    d_theta = thetas[1] - thetas[0]
    d_phi = phis[1] - phis[0] if phis.size > 1 else d_theta
    simplex = np.array(
        [[theta0, phi0], [theta0 + d_theta, phi0], [theta0, phi0 + d_phi]]
    )
    result = minimize(
        lambda v: kernel.at_angles(v[0], v[1]),
        np.array([theta0, phi0]),
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": settings.xatol,
            "fatol": settings.fatol,
            "maxiter": settings.max_iterations,
            "maxfev": 2 * settings.max_iterations,
        },
    )
    if result.fun <= grid_value:
        h_min, direction = float(result.fun), MeasurementDirection.canonical(*result.x)
    else:
        h_min, direction = grid_value, MeasurementDirection.canonical(theta0, phi0)
    if not result.success:
        raise OptimizerConvergenceError(
            f"Nelder-Mead did not converge: {result.message}", h_min, direction
        )
    logger.debug(
        "Refined minimum %.12g at theta=%.9f phi=%.9f (%d iterations)",
        h_min,
        direction.theta,
        direction.phi,
        result.nit,
    )
    return h_min, direction
