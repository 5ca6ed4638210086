from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import sparse

from rindler_corr.exception import DimensionError, StateValidationError
from rindler_corr.model._basis import BasisLabel
from rindler_corr.utils.const import DEFAULT_TAU_NORM


def _as_csr(matrix: ArrayLike | sparse.sparray) -> sparse.csr_array:
    if sparse.issparse(matrix):
        result = sparse.csr_array(matrix, dtype=np.float64)
    else:
        result = sparse.csr_array(np.atleast_2d(np.asarray(matrix, dtype=np.float64)))
    result.sum_duplicates()
    result.eliminate_zeros()
    return result


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    A trace-one, positive semidefinite operator on a labeled Fock basis.

    ``entries`` holds the real symmetric part as a sparse CSR array. States
    conditioned on a measurement along a direction with a y component are
    Hermitian rather than real; their antisymmetric imaginary part is kept
    in ``imag``. Every state built from the closed-form amplitudes has
    ``imag is None``.

    The constructor checks exact symmetry and that the trace is within
    ``norm_tol`` of one. Use :meth:`from_entries` to build from a matrix
    that is only symmetric up to round-off.
    """

    basis: BasisLabel
    entries: sparse.csr_array
    imag: sparse.csr_array | None = None
    norm_tol: float = field(default=DEFAULT_TAU_NORM, repr=False)

    def __post_init__(self):
        entries = _as_csr(self.entries)
        dim = self.basis.total_dim
        if entries.shape != (dim, dim):
            raise DimensionError(
                f"entries of shape {entries.shape} do not match basis {self.basis}"
            )
        if (entries - entries.T).count_nonzero():
            raise StateValidationError("density matrix entries are not symmetric")
        object.__setattr__(self, "entries", entries)

        if self.imag is not None:
            imag = _as_csr(self.imag)
            if imag.shape != (dim, dim):
                raise DimensionError(
                    f"imaginary part of shape {imag.shape} does not match basis {self.basis}"
                )
            if (imag + imag.T).count_nonzero():
                raise StateValidationError("imaginary part is not antisymmetric")
            object.__setattr__(self, "imag", imag if imag.nnz else None)

        trace = self.trace()
        if abs(trace - 1.0) > self.norm_tol:
            raise StateValidationError(f"trace {trace!r} differs from 1")

    @classmethod
    def from_entries(
        cls,
        basis: BasisLabel,
        entries: ArrayLike | sparse.sparray,
        imag: ArrayLike | sparse.sparray | None = None,
        norm_tol: float = DEFAULT_TAU_NORM,
    ) -> "DensityMatrix":
        """
        Builds a density matrix, symmetrizing ``entries`` first.

        Args:
            basis (BasisLabel): The basis of the operator.
            entries (ArrayLike | sparse.sparray): Real part, symmetric up to round-off.
            imag (ArrayLike | sparse.sparray | None, optional): Imaginary part,
                antisymmetric up to round-off. Defaults to None.
            norm_tol (float, optional): Allowed deviation of the trace from one.
                Defaults to DEFAULT_TAU_NORM.

        Returns:
            DensityMatrix: The validated state.

        Raises:
            DimensionError: If the shape does not match the basis.
            StateValidationError: If the trace is not one.
        """
        real = _as_csr(entries)
        real = (real + real.T) * 0.5
        if imag is not None:
            im = _as_csr(imag)
            imag = (im - im.T) * 0.5
        return cls(basis, real, imag, norm_tol)  # type: ignore[arg-type]

    @classmethod
    def from_dense(cls, basis: BasisLabel, matrix: ArrayLike) -> "DensityMatrix":
        """Builds a density matrix from a dense, possibly complex, array."""
        array = np.asarray(matrix)
        if np.iscomplexobj(array):
            return cls.from_entries(basis, array.real, array.imag)
        return cls.from_entries(basis, array)

    @property
    def dim(self) -> int:
        return self.basis.total_dim

    def with_norm_tol(self, norm_tol: float) -> "DensityMatrix":
        """Returns the same state, revalidated against ``norm_tol``."""
        return replace(self, norm_tol=norm_tol)

    @property
    def is_real(self) -> bool:
        return self.imag is None

    def trace(self) -> float:
        return float(self.entries.trace())

    def diagonal(self) -> NDArray[np.float64]:
        return self.entries.diagonal()

    def to_dense(self) -> NDArray[np.float64] | NDArray[np.complex128]:
        """
        Returns the operator as a dense array.

        Only intended for small matrices in tests and oracles.
        """
        real = self.entries.toarray()
        if self.imag is None:
            return real
        return real + 1j * self.imag.toarray()

    def __repr__(self) -> str:
        kind = "real" if self.is_real else "hermitian"
        return f"DensityMatrix(basis={self.basis}, nnz={self.entries.nnz}, {kind})"


@dataclass(frozen=True, eq=False)
class PureStateVector:
    """
    A normalized real state vector on a labeled Fock basis.

    Amplitudes are stored as a sparse ``(dim, 1)`` column; the Rindler
    states only populate a diagonal ridge of the product basis.
    """

    basis: BasisLabel
    amplitudes: sparse.csc_array
    norm_tol: float = field(default=DEFAULT_TAU_NORM, repr=False)

    def __post_init__(self):
        amplitudes = self.amplitudes
        if sparse.issparse(amplitudes):
            amplitudes = sparse.csc_array(amplitudes, dtype=np.float64)
        else:
            column = np.asarray(amplitudes, dtype=np.float64).reshape(-1, 1)
            amplitudes = sparse.csc_array(column)
        amplitudes.sum_duplicates()
        amplitudes.eliminate_zeros()

        dim = self.basis.total_dim
        if amplitudes.shape != (dim, 1):
            raise DimensionError(
                f"amplitudes of shape {amplitudes.shape} do not match basis {self.basis}"
            )
        object.__setattr__(self, "amplitudes", amplitudes)

        norm_sq = self.norm_squared()
        if abs(norm_sq - 1.0) > self.norm_tol:
            raise StateValidationError(f"squared norm {norm_sq!r} differs from 1")

    @classmethod
    def from_dense(cls, basis: BasisLabel, values: ArrayLike) -> "PureStateVector":
        return cls(basis, np.asarray(values, dtype=np.float64))  # type: ignore[arg-type]

    @classmethod
    def from_indices(
        cls,
        basis: BasisLabel,
        indices: ArrayLike,
        values: ArrayLike,
        normalize: bool = False,
    ) -> "PureStateVector":
        """
        Builds a vector from flat basis indices and their amplitudes.

        Args:
            basis (BasisLabel): The basis of the vector.
            indices (ArrayLike): Flat (row-major) indices into the product basis.
            values (ArrayLike): Amplitudes at those indices.
            normalize (bool, optional): Rescale to unit norm first. Defaults to False.

        Returns:
            PureStateVector: The validated vector.
        """
        idx = np.asarray(indices, dtype=np.int64)
        vals = np.asarray(values, dtype=np.float64)
        if idx.shape != vals.shape:
            raise DimensionError("indices and values differ in length")
        if normalize:
            norm = float(np.linalg.norm(vals))
            if norm == 0.0:
                raise StateValidationError("cannot normalize a zero vector")
            vals = vals / norm
        column = sparse.csc_array(
            (vals, (idx, np.zeros_like(idx))), shape=(basis.total_dim, 1)
        )
        return cls(basis, column)

    @property
    def dim(self) -> int:
        return self.basis.total_dim

    def with_norm_tol(self, norm_tol: float) -> "PureStateVector":
        """Returns the same vector, revalidated against ``norm_tol``."""
        return replace(self, norm_tol=norm_tol)

    def norm_squared(self) -> float:
        data = self.amplitudes.data
        return float(np.dot(data, data))

    def support(self) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        """Returns the flat indices and values of the nonzero amplitudes."""
        coo = self.amplitudes.tocoo()
        order = np.argsort(coo.row, kind="stable")
        return coo.row[order].astype(np.int64), coo.data[order]

    def to_dense(self) -> NDArray[np.float64]:
        return self.amplitudes.toarray().ravel()

    def __repr__(self) -> str:
        return f"PureStateVector(basis={self.basis}, nnz={self.amplitudes.nnz})"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Eigenvalues of a density matrix in descending order.

    ``clamped_count`` records how many slightly negative eigenvalues were
    set to zero while the spectrum was computed.
    """

    eigenvalues: NDArray[np.float64]
    clamped_count: int = field(default=0)

    def __post_init__(self):
        values = np.array(self.eigenvalues, dtype=np.float64).ravel()
        if values.size and values.min() < 0.0:
            raise StateValidationError("reported eigenvalues must be non-negative")
        if np.any(np.diff(values) > 0.0):
            raise StateValidationError("eigenvalues must be in descending order")
        values.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)

    @property
    def total(self) -> float:
        return float(self.eigenvalues.sum())

    def __len__(self) -> int:
        return int(self.eigenvalues.size)
