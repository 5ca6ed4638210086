import logging
import math
from typing import Iterable, Optional, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy import sparse
from scipy.sparse.csgraph import connected_components
from scipy.special import entr

from rindler_corr.exception import (
    DimensionError,
    NegativeEigenvalueError,
    StateValidationError,
)
from rindler_corr.fockla._jacobi import jacobi_eigenvalues
from rindler_corr.model import (
    BasisLabel,
    DensityMatrix,
    PureStateVector,
    Spectrum,
    Tolerances,
)
from rindler_corr.utils.const import EigenSolver, Subsystem

logger = logging.getLogger("rindler_corr")

_LN2 = math.log(2.0)
_DEFAULT_TOLERANCES = Tolerances()


def outer(v: PureStateVector) -> DensityMatrix:
    """
    Returns the projector |v⟩⟨v|.

    Args:
        v (PureStateVector): A normalized vector.

    Returns:
        DensityMatrix: The rank-one state on the same basis.
    """
    column = v.amplitudes
    return DensityMatrix.from_entries(v.basis, column @ column.T, norm_tol=v.norm_tol)


def mix(states: Sequence[tuple[float, DensityMatrix]]) -> DensityMatrix:
    """
    Returns the convex combination Σ w_i ρ_i.

    Args:
        states (Sequence[tuple[float, DensityMatrix]]): Weights and states on
            one common basis.

    Returns:
        DensityMatrix: The mixture.

    Raises:
        DimensionError: If the bases differ or the list is empty.
        StateValidationError: If a weight is negative or the weights do not
            sum to one.
    """
    if not states:
        raise DimensionError("cannot mix an empty list of states")
    basis = states[0][1].basis
    weights = [float(w) for w, _ in states]
    if any(w < 0.0 for w in weights):
        raise StateValidationError(f"mixture weights must be >= 0, got {weights}")
    if abs(math.fsum(weights) - 1.0) > _DEFAULT_TOLERANCES.norm:
        raise StateValidationError(f"mixture weights sum to {math.fsum(weights)!r}")

    real = sparse.csr_array((basis.total_dim, basis.total_dim))
    imag = None
    for w, rho in states:
        if rho.basis != basis:
            raise DimensionError(f"cannot mix states on {rho.basis} and {basis}")
        real = real + w * rho.entries
        if rho.imag is not None:
            imag = w * rho.imag if imag is None else imag + w * rho.imag
    return DensityMatrix.from_entries(basis, real, imag, norm_tol=states[0][1].norm_tol)


def tensor(rho: DensityMatrix, sigma: DensityMatrix) -> DensityMatrix:
    """
    Returns ρ ⊗ σ on the concatenated basis.

    Raises:
        DimensionError: If the two bases share a subsystem.
    """
    basis = rho.basis.concat(sigma.basis)
    real = sparse.kron(rho.entries, sigma.entries, format="csr")
    imag = None
    if rho.imag is not None or sigma.imag is not None:
        zero_r = sparse.csr_array(rho.entries.shape)
        zero_s = sparse.csr_array(sigma.entries.shape)
        k_r = rho.imag if rho.imag is not None else zero_r
        k_s = sigma.imag if sigma.imag is not None else zero_s
        real = real - sparse.kron(k_r, k_s, format="csr")
        imag = sparse.kron(rho.entries, k_s, format="csr") + sparse.kron(
            k_r, sigma.entries, format="csr"
        )
    return DensityMatrix.from_entries(
        basis, real, imag, norm_tol=max(rho.norm_tol, sigma.norm_tol)
    )


def partial_trace(
    rho: DensityMatrix, keep: Iterable[Subsystem | str]
) -> DensityMatrix:
    """
    Traces out every factor not listed in ``keep``.

    Only the stored nonzeros are visited: an entry survives when its row
    and column agree on every traced factor.

    Args:
        rho (DensityMatrix): The state.
        keep (Iterable[Subsystem | str]): Subsystems to keep.

    Returns:
        DensityMatrix: The reduced state, factors in their original order.

    Raises:
        DimensionError: If ``keep`` is empty or names an unknown subsystem.
    """
    kept_basis = rho.basis.restrict(keep)
    if kept_basis == rho.basis:
        return rho
    kept_axes, traced_axes = _split_axes(rho.basis, kept_basis)

    real = _trace_sparse(rho.entries, rho.basis.dims, kept_axes, traced_axes)
    imag = None
    if rho.imag is not None:
        imag = _trace_sparse(rho.imag, rho.basis.dims, kept_axes, traced_axes)
    return DensityMatrix.from_entries(
        kept_basis, real, imag, norm_tol=rho.norm_tol
    )


def reduce_pure(
    v: PureStateVector, keep: Iterable[Subsystem | str]
) -> DensityMatrix:
    """
    Returns Tr_{¬keep} |v⟩⟨v| without forming the projector.

    The amplitudes are reshaped into a sparse (kept × traced) matrix M and
    the reduced state is M Mᵀ.

    Args:
        v (PureStateVector): A normalized vector.
        keep (Iterable[Subsystem | str]): Subsystems to keep.

    Returns:
        DensityMatrix: The reduced state.
    """
    kept_basis = v.basis.restrict(keep)
    m = _schmidt_matrix(v, kept_basis)
    return DensityMatrix.from_entries(kept_basis, m @ m.T, norm_tol=v.norm_tol)


def pure_reduced_spectrum(
    v: PureStateVector,
    keep: Iterable[Subsystem | str],
    solver: EigenSolver = EigenSolver.LAPACK,
    tolerances: Optional[Tolerances] = None,
) -> Spectrum:
    """
    Returns the spectrum of Tr_{¬keep} |v⟩⟨v| through the smaller side of
    the Schmidt split.

    Both reduced states of a pure vector share their nonzero eigenvalues,
    so when the kept side is the larger one the complementary reduced state
    is diagonalized instead. The returned spectrum then omits the
    surplus zero eigenvalues.

    Args:
        v (PureStateVector): A normalized vector.
        keep (Iterable[Subsystem | str]): Subsystems of the reduced state.
        solver (EigenSolver, optional): Dense block solver. Defaults to LAPACK.
        tolerances (Optional[Tolerances], optional): Clamping tolerances.

    Returns:
        Spectrum: The spectrum of the smaller side; its nonzero eigenvalues
            are those of the requested reduced state.
    """
    kept_basis = v.basis.restrict(keep)
    complement = [sid for sid in v.basis.ids if sid not in kept_basis]
    if complement and v.basis.restrict(complement).total_dim < kept_basis.total_dim:
        logger.debug(
            "Spectrum of %s taken from complementary factor(s) %s",
            kept_basis,
            ",".join(sid.value for sid in complement),
        )
        kept_basis = v.basis.restrict(complement)
    m = _schmidt_matrix(v, kept_basis)
    gram = DensityMatrix.from_entries(kept_basis, m @ m.T, norm_tol=v.norm_tol)
    return eigenvalues_symmetric(gram, solver, tolerances)


def eigenvalues_symmetric(
    rho: DensityMatrix,
    solver: EigenSolver = EigenSolver.LAPACK,
    tolerances: Optional[Tolerances] = None,
) -> Spectrum:
    """
    Returns the full spectrum of a density matrix.

    The sparsity pattern is split into connected components; each
    irreducible block is diagonalized densely, blocks of equal size
    together. Eigenvalues in ``[-psd, 0)`` are clamped to zero and
    counted, eigenvalues in ``(1, 1 + psd]`` are clamped to one.

    Args:
        rho (DensityMatrix): The state. A Hermitian state is diagonalized
            through its real symmetric embedding when Jacobi is selected.
        solver (EigenSolver, optional): Dense block solver. Defaults to LAPACK.
        tolerances (Optional[Tolerances], optional): Tolerances for Jacobi
            and clamping. Defaults to Tolerances().

    Returns:
        Spectrum: Eigenvalues in descending order with the clamp count.

    Raises:
        NegativeEigenvalueError: If an eigenvalue is below ``-psd``.
        StateValidationError: If an eigenvalue exceeds ``1 + psd``.
        EigenSolverError: If Jacobi does not converge.
    """
    tol = tolerances or _DEFAULT_TOLERANCES
    solver = EigenSolver(solver)
    values = np.concatenate(list(_block_eigenvalues(rho, solver, tol.jacobi)))

    lowest = float(values.min())
    if lowest < -tol.psd:
        raise NegativeEigenvalueError(
            f"eigenvalue {lowest:.3e} below -{tol.psd:g} on {rho.basis}"
        )
    highest = float(values.max())
    if highest > 1.0 + tol.psd:
        raise StateValidationError(f"eigenvalue {highest!r} exceeds 1 on {rho.basis}")

    negative = values < 0.0
    clamped = int(np.count_nonzero(negative))
    values[negative] = 0.0
    np.minimum(values, 1.0, out=values)
    if clamped:
        logger.debug("Clamped %d slightly negative eigenvalue(s) on %s", clamped, rho.basis)

    values = np.sort(values)[::-1]
    total = float(values.sum())
    if abs(total - rho.trace()) > tol.norm:
        raise StateValidationError(
            f"spectrum sums to {total!r}, trace is {rho.trace()!r}"
        )
    return Spectrum(values, clamped_count=clamped)


def entropy_from_spectrum(spectrum: Spectrum) -> float:
    """
    Returns −Σ λ log₂ λ with 0·log 0 = 0.
    """
    return float(np.sum(entr(spectrum.eigenvalues))) / _LN2


def von_neumann_entropy(
    rho: DensityMatrix,
    solver: EigenSolver = EigenSolver.LAPACK,
    tolerances: Optional[Tolerances] = None,
) -> float:
    """
    Returns the von Neumann entropy of ``rho`` in bits.

    Example:
        >>> basis = BasisLabel.of((Subsystem.ALICE, 2))
        >>> von_neumann_entropy(DensityMatrix.from_dense(basis, [[0.5, 0], [0, 0.5]]))
        1.0
    """
    return entropy_from_spectrum(eigenvalues_symmetric(rho, solver, tolerances))


# ── helpers ──────────────────────────────────────────────────────────────


def _split_axes(basis: BasisLabel, kept: BasisLabel) -> tuple[list[int], list[int]]:
    kept_axes = [i for i, sid in enumerate(basis.ids) if sid in kept]
    traced_axes = [i for i, sid in enumerate(basis.ids) if sid not in kept]
    return kept_axes, traced_axes


def _flat_index(
    multi: tuple[NDArray[np.intp], ...], dims: Sequence[int], axes: Sequence[int]
) -> NDArray[np.intp]:
    if not axes:
        return np.zeros_like(multi[0])
    return np.ravel_multi_index(
        tuple(multi[i] for i in axes), tuple(dims[i] for i in axes)
    )


def _trace_sparse(
    matrix: sparse.csr_array,
    dims: Sequence[int],
    kept_axes: Sequence[int],
    traced_axes: Sequence[int],
) -> sparse.csr_array:
    coo = matrix.tocoo()
    rows = np.unravel_index(coo.row, dims)
    cols = np.unravel_index(coo.col, dims)
    mask = np.ones(coo.nnz, dtype=bool)
    for axis in traced_axes:
        mask &= rows[axis] == cols[axis]
    rows = tuple(r[mask] for r in rows)
    cols = tuple(c[mask] for c in cols)
    kept_dim = math.prod(dims[i] for i in kept_axes)
    # COO -> CSR sums the entries that land on the same reduced index
    return sparse.coo_array(
        (
            coo.data[mask],
            (_flat_index(rows, dims, kept_axes), _flat_index(cols, dims, kept_axes)),
        ),
        shape=(kept_dim, kept_dim),
    ).tocsr()


def _schmidt_matrix(v: PureStateVector, kept: BasisLabel) -> sparse.csr_array:
    kept_axes, traced_axes = _split_axes(v.basis, kept)
    dims = v.basis.dims
    idx, vals = v.support()
    multi = np.unravel_index(idx, dims)
    traced_dim = math.prod(dims[i] for i in traced_axes)
    return sparse.csr_array(
        (
            vals,
            (_flat_index(multi, dims, kept_axes), _flat_index(multi, dims, traced_axes)),
        ),
        shape=(kept.total_dim, traced_dim),
    )


def _block_eigenvalues(rho: DensityMatrix, solver: EigenSolver, jacobi_tol: float):
    real = rho.entries
    pattern = real if rho.imag is None else abs(real) + abs(rho.imag)
    n_blocks, labels = connected_components(pattern, directed=False)
    sizes = np.bincount(labels, minlength=n_blocks)

    # position of every basis index inside its block
    order = np.argsort(labels, kind="stable")
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    position = np.empty_like(labels)
    position[order] = np.arange(labels.size) - starts[labels[order]]

    coo = real.tocoo()
    imag_coo = rho.imag.tocoo() if rho.imag is not None else None

    for size in np.unique(sizes):
        size = int(size)
        members = np.flatnonzero(sizes == size)
        if size == 1:
            yield real.diagonal()[np.isin(labels, members)]
            continue
        logger.debug("Diagonalizing %d block(s) of size %d", members.size, size)
        slot = np.full(n_blocks, -1)
        slot[members] = np.arange(members.size)
        dtype = np.float64 if imag_coo is None else np.complex128
        stack = np.zeros((members.size, size, size), dtype=dtype)
        _scatter(stack, coo, labels, slot, position, 1.0)
        if imag_coo is not None:
            _scatter(stack, imag_coo, labels, slot, position, 1j)

        if solver is EigenSolver.LAPACK:
            yield np.linalg.eigvalsh(stack).ravel()
        elif imag_coo is None:
            yield jacobi_eigenvalues(stack, tol=jacobi_tol).ravel()
        else:
            # H = R + iK has the spectrum of [[R, -K], [K, R]], each value twice
            r, k = stack.real, stack.imag
            embedded = np.block([[r, -k], [k, r]])
            doubled = jacobi_eigenvalues(embedded, tol=jacobi_tol)
            yield doubled[:, ::2].ravel()


def _scatter(stack, coo, labels, slot, position, factor) -> None:
    block = slot[labels[coo.row]]
    sel = block >= 0
    stack[block[sel], position[coo.row[sel]], position[coo.col[sel]]] += (
        factor * coo.data[sel]
    )
