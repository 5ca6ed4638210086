import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from rindler_corr.exception import DimensionError, EigenSolverError
from rindler_corr.utils.const import DEFAULT_JACOBI_MAX_SWEEPS, DEFAULT_JACOBI_TOL

logger = logging.getLogger("rindler_corr")


def jacobi_eigenvalues(
    matrix: ArrayLike,
    tol: float = DEFAULT_JACOBI_TOL,
    max_sweeps: int = DEFAULT_JACOBI_MAX_SWEEPS,
) -> NDArray[np.float64]:
    """Eigenvalues of real symmetric matrices by cyclic Jacobi rotations.

    Accepts one ``(m, m)`` matrix or a stack ``(k, m, m)`` of equally sized
    matrices; the stack is rotated in lockstep, each matrix with its own
    angles. Iteration stops once the off-diagonal Frobenius norm of every
    matrix is below ``tol`` times its Frobenius norm.

    Args:
        matrix (ArrayLike): Symmetric matrix or stack of symmetric matrices.
        tol (float, optional): Relative off-diagonal stopping threshold.
            Defaults to 1e-12.
        max_sweeps (int, optional): Maximum number of cyclic sweeps.
            Defaults to DEFAULT_JACOBI_MAX_SWEEPS.

    Returns:
        NDArray[np.float64]: Eigenvalues in descending order, shape ``(m,)``
            for one matrix or ``(k, m)`` for a stack.

    Raises:
        DimensionError: If the input is not square.
        EigenSolverError: If the sweeps are exhausted before convergence.
    """
    a = np.array(matrix, dtype=np.float64)
    single = a.ndim == 2
    if single:
        a = a[np.newaxis]
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise DimensionError(f"expected square matrices, got shape {np.shape(matrix)}")

    k, m, _ = a.shape
    if m > 1 and k > 0:
        _rotate_until_diagonal(a, tol, max_sweeps)

    values = -np.sort(-np.diagonal(a, axis1=1, axis2=2), axis=1)
    return values[0] if single else values


def _rotate_until_diagonal(a: NDArray[np.float64], tol: float, max_sweeps: int) -> None:
    k, m, _ = a.shape
    scale = np.linalg.norm(a, axis=(1, 2))
    scale[scale == 0.0] = 1.0
    off_mask = ~np.eye(m, dtype=bool)
    rows = np.arange(k)

    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum(a[:, off_mask] ** 2, axis=1))
        if np.all(off < tol * scale):
            logger.debug(
                "Jacobi converged after %d sweep(s) on %d block(s) of size %d",
                sweep,
                k,
                m,
            )
            return
        if sweep == max_sweeps:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[:, p, q]
                if not np.any(apq):
                    continue
                with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                    theta = (a[:, q, q] - a[:, p, p]) / (2.0 * apq)
                    sign = np.where(theta >= 0.0, 1.0, -1.0)
                    t = sign / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                t = np.where(apq == 0.0, 0.0, np.nan_to_num(t, nan=0.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, :, p].copy()
                col_q = a[:, :, q].copy()
                a[:, :, p] = c[:, None] * col_p - s[:, None] * col_q
                a[:, :, q] = s[:, None] * col_p + c[:, None] * col_q
                row_p = a[:, p, :].copy()
                row_q = a[:, q, :].copy()
                a[:, p, :] = c[:, None] * row_p - s[:, None] * row_q
                a[:, q, :] = s[:, None] * row_p + c[:, None] * row_q
                a[rows, p, q] = 0.0
                a[rows, q, p] = 0.0

    raise EigenSolverError(
        f"Jacobi did not converge within {max_sweeps} sweeps "
        f"(block size {m}, residual {float(np.max(off / scale)):.3e})"
    )
