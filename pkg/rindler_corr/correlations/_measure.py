import logging
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import sparse
from scipy.linalg import eigvalsh_tridiagonal
from scipy.special import entr

from rindler_corr.exception import MeasurementError, NegativeEigenvalueError
from rindler_corr.fockla import eigenvalues_symmetric, entropy_from_spectrum
from rindler_corr.model import (
    BasisLabel,
    DensityMatrix,
    MeasurementDirection,
    MeasurementOutcome,
    Tolerances,
    as_subsystem,
)
from rindler_corr.utils.const import EigenSolver, Subsystem

logger = logging.getLogger("rindler_corr")

_LN2 = math.log(2.0)
_SIGNS = (1.0, -1.0)


class ConditionalEntropyKernel:
    """
    Evaluates Σ_± p_± S(ρ_B^±) for measurements Π_±(x) = ½(1 ± x·σ) on
    the qubit factor of a real bipartite state.

    The state is split once into its qubit blocks B_ab = ⟨a|ρ|b⟩. For a
    direction x the unnormalized conditional state of outcome s = ±1 is

        σ_s = ½[(1+s z) B00 + (1-s z) B11 + s x (B01 + B10)]
              + i ½ s y (B01 - B10).

    When every block is tridiagonal, σ_s is a Hermitian tridiagonal matrix;
    a diagonal phase change makes it real with off-diagonal moduli, so its
    spectrum comes from a symmetric tridiagonal solver. Otherwise the
    conditional state is assembled and diagonalized by blocks.

    ``azimuthal`` is set when B00 and B11 are diagonal and B01 has zero
    diagonal with at most one of its two off-diagonal bands nonzero in each
    position. The off-diagonal moduli of σ_s are then ½ sin θ |B01| and the
    probabilities do not involve x or y, so the result depends on θ alone.

    ``clamped_eigenvalues`` accumulates the number of negative round-off
    eigenvalues set to zero over all evaluations.
    """

    def __init__(
        self,
        rho: DensityMatrix,
        measured: Subsystem | str = Subsystem.ALICE,
        solver: EigenSolver = EigenSolver.LAPACK,
        tolerances: Optional[Tolerances] = None,
    ):
        """
        Splits ``rho`` into qubit blocks.

        Args:
            rho (DensityMatrix): A real state with a two-level factor.
            measured (Subsystem | str, optional): The measured factor.
                Defaults to Alice.
            solver (EigenSolver, optional): Block solver for the general path.
            tolerances (Optional[Tolerances], optional): Defaults to Tolerances().

        Raises:
            MeasurementError: If the measured factor is absent, not two-level,
                the only factor, or the state is not real.
        """
        measured = as_subsystem(measured)
        if measured not in rho.basis:
            raise MeasurementError(f"{measured.value} is not a factor of {rho.basis}")
        if rho.basis.dim_of(measured) != 2:
            raise MeasurementError(f"{measured.value} is not a two-level factor")
        if len(rho.basis.factors) < 2:
            raise MeasurementError("nothing is left unmeasured")
        if not rho.is_real:
            raise MeasurementError("measurement conditioning needs a real state")

        self._tol = tolerances or Tolerances()
        self._solver = EigenSolver(solver)
        self.measured = measured
        self.unmeasured_basis: BasisLabel = rho.basis.restrict(
            sid for sid in rho.basis.ids if sid is not measured
        )
        self.clamped_eigenvalues = 0
        self.evaluations = 0

        b00, b01, b11 = _qubit_blocks(rho, measured, self.unmeasured_basis)
        self._b00, self._b01, self._b11 = b00, b01, b11
        self._t00 = float(b00.trace())
        self._t11 = float(b11.trace())
        self._t01 = float(b01.trace())

        self.tridiagonal = all(_bandwidth(b) <= 1 for b in (b00, b01, b11))
        self.azimuthal = False
        if self.tridiagonal:
            self._d00, self._d11 = b00.diagonal(), b11.diagonal()
            self._dx = 2.0 * b01.diagonal()
            self._e00, self._e11 = b00.diagonal(1), b11.diagonal(1)
            upper, lower = b01.diagonal(1), b01.diagonal(-1)
            self._ex = upper + lower
            self._ey = upper - lower
            self.azimuthal = not (
                np.any(self._dx)
                or np.any(self._e00)
                or np.any(self._e11)
                or np.any(upper * lower)
            )
        logger.debug(
            "Measurement kernel on %s: unmeasured %s, tridiagonal=%s, azimuthal=%s",
            measured.value,
            self.unmeasured_basis,
            self.tridiagonal,
            self.azimuthal,
        )

    def probability(self, x: ArrayLike, sign: float) -> float:
        """Probability of outcome ``sign`` (±1) along the unit vector ``x``."""
        _, _, z = x
        return 0.5 * (
            (1.0 + sign * z) * self._t00
            + (1.0 - sign * z) * self._t11
            + 2.0 * sign * x[0] * self._t01
        )

    def __call__(self, direction: MeasurementDirection | ArrayLike) -> float:
        """
        Returns Σ p_± S(ρ^±) in bits; outcomes with p below the norm
        tolerance contribute zero.
        """
        x = _unit(direction)
        self.evaluations += 1
        total = 0.0
        for sign in _SIGNS:
            p = self.probability(x, sign)
            if p < self._tol.norm:
                continue
            if self.tridiagonal:
                entropy = self._tridiagonal_entropy(x, sign, p)
            else:
                entropy = entropy_from_spectrum(self._spectrum(x, sign, p))
            total += p * entropy
        return total

    def at_angles(self, theta: float, phi: float) -> float:
        """Evaluates at unrestricted angles, as an optimizer proposes them."""
        st = math.sin(theta)
        return self(np.array((st * math.cos(phi), st * math.sin(phi), math.cos(theta))))

    def at_polar(self, theta: float) -> float:
        """Evaluates at polar angle ``theta`` in the x-z plane."""
        return self(np.array((math.sin(theta), 0.0, math.cos(theta))))

    def outcome(
        self, direction: MeasurementDirection | ArrayLike, sign: float
    ) -> MeasurementOutcome:
        """
        Returns the probability and normalized post-measurement state of one
        outcome.

        Args:
            direction (MeasurementDirection | ArrayLike): The measurement axis.
            sign (float): +1 or -1.

        Returns:
            MeasurementOutcome: A degenerate outcome when p is below the norm
                tolerance.
        """
        x = _unit(direction)
        p = self.probability(x, sign)
        probability = min(1.0, max(0.0, p))
        if p < self._tol.norm:
            return MeasurementOutcome(probability, None)
        real, imag = self._conditional(x, sign)
        state = DensityMatrix.from_entries(
            self.unmeasured_basis, real / p, imag / p if imag is not None else None,
            norm_tol=self._tol.norm,
        )
        return MeasurementOutcome(probability, state)

    # ── evaluation paths ────────────────────────────────────────────────

    def _tridiagonal_entropy(self, x: NDArray[np.float64], sign: float, p: float) -> float:
        sx, sy, sz = sign * x[0], sign * x[1], sign * x[2]
        diag = 0.5 * ((1.0 + sz) * self._d00 + (1.0 - sz) * self._d11 + sx * self._dx) / p
        if diag.size == 1:
            values = diag
        else:
            off_re = 0.5 * ((1.0 + sz) * self._e00 + (1.0 - sz) * self._e11 + sx * self._ex)
            off_im = 0.5 * sy * self._ey
            off = np.hypot(off_re, off_im) / p
            values = eigvalsh_tridiagonal(diag, off, lapack_driver="sterf")
        entropy, clamped = _clamped_entropy(values, self._tol.psd)
        self.clamped_eigenvalues += clamped
        return entropy

    def _conditional(
        self, x: NDArray[np.float64], sign: float
    ) -> tuple[sparse.csr_array, Optional[sparse.csr_array]]:
        sx, sy, sz = sign * x[0], sign * x[1], sign * x[2]
        b01, b10 = self._b01, self._b01.T
        real = 0.5 * ((1.0 + sz) * self._b00 + (1.0 - sz) * self._b11 + sx * (b01 + b10))
        if sy == 0.0:
            return sparse.csr_array(real), None
        return sparse.csr_array(real), sparse.csr_array(0.5 * sy * (b01 - b10))

    def _spectrum(self, x: NDArray[np.float64], sign: float, p: float):
        real, imag = self._conditional(x, sign)
        state = DensityMatrix.from_entries(
            self.unmeasured_basis, real / p, imag / p if imag is not None else None,
            norm_tol=self._tol.norm,
        )
        spectrum = eigenvalues_symmetric(state, self._solver, self._tol)
        self.clamped_eigenvalues += spectrum.clamped_count
        return spectrum


def measure_alice(
    rho: DensityMatrix,
    direction: MeasurementDirection,
    solver: EigenSolver = EigenSolver.LAPACK,
    tolerances: Optional[Tolerances] = None,
) -> tuple[MeasurementOutcome, MeasurementOutcome]:
    """
    Measures Π_±(x) on Alice's qubit.

    Args:
        rho (DensityMatrix): A real state with Alice's factor.
        direction (MeasurementDirection): The measurement axis x.
        solver (EigenSolver, optional): Block solver. Defaults to LAPACK.
        tolerances (Optional[Tolerances], optional): Defaults to Tolerances().

    Returns:
        tuple[MeasurementOutcome, MeasurementOutcome]: The ``+`` and ``-``
            outcomes, each with its normalized state of the other factors.

    Raises:
        MeasurementError: If Alice's factor is missing.
    """
    kernel = ConditionalEntropyKernel(rho, Subsystem.ALICE, solver, tolerances)
    return kernel.outcome(direction, 1.0), kernel.outcome(direction, -1.0)


def conditional_entropy_after_measurement(
    rho: DensityMatrix,
    direction: MeasurementDirection,
    solver: EigenSolver = EigenSolver.LAPACK,
    tolerances: Optional[Tolerances] = None,
) -> float:
    """
    Returns Σ_± p_± S(ρ^±) in bits for a measurement on Alice's qubit.

    Raises:
        MeasurementError: If Alice's factor is missing.
    """
    return ConditionalEntropyKernel(rho, Subsystem.ALICE, solver, tolerances)(direction)


# ── helpers ──────────────────────────────────────────────────────────────


def _unit(direction: MeasurementDirection | ArrayLike) -> NDArray[np.float64]:
    if isinstance(direction, MeasurementDirection):
        return direction.vector
    x = np.asarray(direction, dtype=np.float64)
    norm = float(np.linalg.norm(x))
    if x.shape != (3,) or norm == 0.0:
        raise MeasurementError(f"not a Bloch vector: {direction!r}")
    return x / norm


def _qubit_blocks(
    rho: DensityMatrix, measured: Subsystem, rest: BasisLabel
) -> tuple[sparse.csr_array, sparse.csr_array, sparse.csr_array]:
    dims = rho.basis.dims
    axis = rho.basis.index_of(measured)
    rest_axes = [i for i in range(len(dims)) if i != axis]
    rest_dims = tuple(dims[i] for i in rest_axes)

    coo = rho.entries.tocoo()
    rows = np.unravel_index(coo.row, dims)
    cols = np.unravel_index(coo.col, dims)
    rest_row = np.ravel_multi_index(tuple(rows[i] for i in rest_axes), rest_dims)
    rest_col = np.ravel_multi_index(tuple(cols[i] for i in rest_axes), rest_dims)

    shape = (rest.total_dim, rest.total_dim)
    blocks = []
    for a, b in ((0, 0), (0, 1), (1, 1)):
        sel = (rows[axis] == a) & (cols[axis] == b)
        blocks.append(
            sparse.coo_array((coo.data[sel], (rest_row[sel], rest_col[sel])), shape=shape).tocsr()
        )
    return blocks[0], blocks[1], blocks[2]


def _bandwidth(matrix: sparse.csr_array) -> int:
    coo = matrix.tocoo()
    if coo.nnz == 0:
        return 0
    return int(np.max(np.abs(coo.row.astype(np.int64) - coo.col.astype(np.int64))))


def _clamped_entropy(values: NDArray[np.float64], psd: float) -> tuple[float, int]:
    lowest = float(values.min())
    if lowest < -psd:
        raise NegativeEigenvalueError(f"conditional state eigenvalue {lowest:.3e} below -{psd:g}")
    negative = values < 0.0
    clamped = int(np.count_nonzero(negative))
    if clamped:
        values = np.where(negative, 0.0, values)
    return float(np.sum(entr(values))) / _LN2, clamped
