import logging
import math
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from rindler_corr.correlations import ConditionalEntropyKernel
from rindler_corr.exception import InvalidParameterError, MeasurementError
from rindler_corr.fockla import partial_trace, von_neumann_entropy
from rindler_corr.model import (
    DensityMatrix,
    MeasurementDirection,
    NumericsConfig,
    as_subsystem,
)
from rindler_corr.utils.const import Subsystem

logger = logging.getLogger("rindler_corr")

# largest total dimension the exhaustive grid evaluates with dense projectors
DENSE_GRID_LIMIT = 128

_PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    np.array([[0.0, -1j], [1j, 0.0]], dtype=np.complex128),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
)


class _DenseProjectors:
    """
    Σ_± p_± S(ρ^±) by brute force: Π_±(x) ⊗ 1 as dense matrices, Π ρ Π
    formed explicitly, the measured factor traced out by reshaping and the
    conditional states diagonalized with numpy. Shares nothing with
    :class:`ConditionalEntropyKernel` beyond the input state.
    """

    def __init__(self, rho: DensityMatrix, measured: Subsystem):
        basis = rho.basis
        if measured not in basis or basis.dim_of(measured) != 2:
            raise MeasurementError(f"{measured.value} is not a two-level factor of {basis}")
        self._axis = basis.index_of(measured)
        self._dims = basis.dims
        self._rest = int(
            np.prod([d for i, d in enumerate(self._dims) if i != self._axis])
        )
        self._dense = rho.to_dense().astype(np.complex128)
        self._identity = np.eye(basis.total_dim, dtype=np.complex128)
        self._lifted = tuple(self._lift(pauli) for pauli in _PAULI)
        self.evaluations = 0

    def _lift(self, qubit: NDArray[np.complex128]) -> NDArray[np.complex128]:
        factors = [
            qubit if i == self._axis else np.eye(d) for i, d in enumerate(self._dims)
        ]
        operator = factors[0]
        for factor in factors[1:]:
            operator = np.kron(operator, factor)
        return operator

    def __call__(self, direction: MeasurementDirection) -> float:
        self.evaluations += 1
        x, y, z = direction.vector
        n_sigma = x * self._lifted[0] + y * self._lifted[1] + z * self._lifted[2]
        dims = self._dims
        total = 0.0
        for sign in (1.0, -1.0):
            projector = 0.5 * (self._identity + sign * n_sigma)
            post = projector @ self._dense @ projector
            p = float(np.trace(post).real)
            if p < 1e-12:
                continue
            tensor = post.reshape(dims + dims)
            reduced = np.trace(tensor, axis1=self._axis, axis2=self._axis + len(dims))
            values = np.linalg.eigvalsh(reduced.reshape(self._rest, self._rest) / p)
            values = values[values > 1e-15]
            total += p * float(-np.sum(values * np.log2(values)))
        return total


def grid_search_J(
    rho: DensityMatrix,
    resolution_deg: float = 1.0,
    measured: Subsystem | str = Subsystem.ALICE,
    numerics: Optional[NumericsConfig] = None,
    dense_limit: int = DENSE_GRID_LIMIT,
) -> tuple[float, MeasurementDirection]:
    """
    Classical correlations by exhaustive search over a uniform (θ, φ) grid
    of the whole sphere, θ from 0° to 180° and φ from 0° up to 360°.

    States whose total dimension is at most ``dense_limit`` are evaluated
    with dense projectors, independently of the measurement kernel; larger
    ones fall back to :class:`ConditionalEntropyKernel`.

    Args:
        rho (DensityMatrix): A real bipartite state.
        resolution_deg (float, optional): Grid step in degrees; must divide
            180. Defaults to 1.
        measured (Subsystem | str, optional): The measured qubit. Defaults to Alice.
        numerics (Optional[NumericsConfig], optional): Solver and tolerances.
        dense_limit (int, optional): Largest dimension evaluated densely.
            Defaults to DENSE_GRID_LIMIT.

    Returns:
        tuple[float, MeasurementDirection]: The best J on the grid and its axis.

    Raises:
        InvalidParameterError: If the resolution does not divide 180.
        MeasurementError: If ``measured`` is not a two-level factor.
    """
    if not 0.0 < resolution_deg <= 180.0:
        raise InvalidParameterError(f"resolution {resolution_deg!r}° outside (0°, 180°]")
    steps = 180.0 / resolution_deg
    if abs(steps - round(steps)) > 1e-9:
        raise InvalidParameterError(f"resolution {resolution_deg!r}° does not divide 180°")
    steps = int(round(steps))
    measured = as_subsystem(measured)
    numerics = numerics or NumericsConfig()

    evaluate: _DenseProjectors | ConditionalEntropyKernel
    if rho.basis.total_dim <= dense_limit:
        evaluate = _DenseProjectors(rho, measured)
    else:
        evaluate = ConditionalEntropyKernel(
            rho, measured, numerics.eigensolver, numerics.tolerances
        )
    marginal = von_neumann_entropy(
        partial_trace(rho, [sid for sid in rho.basis.ids if sid is not measured]),
        numerics.eigensolver,
        numerics.tolerances,
    )

    thetas = np.linspace(0.0, math.pi, steps + 1)
    phis = 2.0 * math.pi * np.arange(2 * steps) / (2 * steps)
    best = (math.inf, 0.0, 0.0)
    for theta in thetas:
        at_pole = theta == 0.0 or theta == math.pi
        for phi in phis[:1] if at_pole else phis:
            value = evaluate(MeasurementDirection.canonical(float(theta), float(phi)))
            if value < best[0]:
                best = (value, float(theta), float(phi))
    logger.debug(
        "Grid search at %g° used %d %s evaluations",
        resolution_deg,
        evaluate.evaluations,
        "dense" if isinstance(evaluate, _DenseProjectors) else "kernel",
    )
    return marginal - best[0], MeasurementDirection.canonical(best[1], best[2])


def projective_conditional_entropy(
    rho: DensityMatrix,
    direction: MeasurementDirection,
    measured: Subsystem | str = Subsystem.ALICE,
) -> float:
    """
    Σ_± p_± S(ρ^±) computed the long way, for small states only.

    The projectors Π_±(x) ⊗ 1 are built as dense matrices,
    Π ρ Π is formed explicitly, the measured factor is traced out by
    reshaping, and the conditional states are diagonalized with numpy.

    Raises:
        MeasurementError: If ``measured`` is not a two-level factor.
    """
    return _DenseProjectors(rho, as_subsystem(measured))(direction)
