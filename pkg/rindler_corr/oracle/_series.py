import math
from typing import Sequence

import numpy as np
from numpy.typing import NDArray
from scipy import sparse

from rindler_corr.model import BasisLabel, DensityMatrix
from rindler_corr.states import Squeezing, as_squeezing
from rindler_corr.utils.const import Subsystem

A, R, ANTI_R = Subsystem.ALICE, Subsystem.ROB, Subsystem.ANTIROB

# Each series is truncated at N and every branch (vacuum, one-particle) is
# rescaled to weight ½ using the series' own coefficients, which is the
# normalization the vector builders apply.


def rho_AR_series(alpha: Squeezing, n: int) -> DensityMatrix:
    """
    Alice–Rob state evaluated term by term from its closed-form series:

        1/(2cosh²α) Σ tanh^{2n}α [ |0n⟩⟨0n| + (n+1)/cosh²α |1,n+1⟩⟨1,n+1|
                                   + √(n+1)/cosh α (|0n⟩⟨1,n+1| + h.c.) ]

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (int): Truncation N.

    Returns:
        DensityMatrix: The state on A(2) ⊗ R(N+2).
    """
    t, ch, levels, pref = _coefficients(alpha, n)
    geometric = t ** (2 * levels)
    vac = pref * geometric
    one = pref * geometric * (levels + 1) / ch**2
    cross = pref * geometric * np.sqrt(levels + 1.0) / ch
    w_vac, w_one = vac.sum(), one.sum()

    basis = BasisLabel.of((A, 2), (R, n + 2))
    zero_n = _index(basis, 0, levels)
    one_n1 = _index(basis, 1, levels + 1)
    return _assemble(
        basis,
        [
            (zero_n, zero_n, vac / (2.0 * w_vac)),
            (one_n1, one_n1, one / (2.0 * w_one)),
            (zero_n, one_n1, cross / (2.0 * math.sqrt(w_vac * w_one))),
            (one_n1, zero_n, cross / (2.0 * math.sqrt(w_vac * w_one))),
        ],
    )


def rho_AAntiR_series(alpha: Squeezing, n: int) -> DensityMatrix:
    """
    Alice–AntiRob state evaluated term by term from its closed-form series:

        1/(2cosh²α) Σ tanh^{2n}α [ |0n⟩⟨0n| + (n+1)/cosh²α |1n⟩⟨1n|
                    + √(n+1) tanh α / cosh α (|0,n+1⟩⟨1n| + h.c.) ]

    The coherence between |0,n+1⟩ and |1n⟩ needs level n+1 <= N.

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (int): Truncation N.

    Returns:
        DensityMatrix: The state on A(2) ⊗ R̄(N+1).
    """
    t, ch, levels, pref = _coefficients(alpha, n)
    geometric = t ** (2 * levels)
    vac = pref * geometric
    one = pref * geometric * (levels + 1) / ch**2
    w_vac, w_one = vac.sum(), one.sum()
    inner = levels[:-1]
    cross = pref * geometric[:-1] * np.sqrt(inner + 1.0) * t / ch
    cross = cross / (2.0 * math.sqrt(w_vac * w_one))

    basis = BasisLabel.of((A, 2), (ANTI_R, n + 1))
    zero_n, one_n = _index(basis, 0, levels), _index(basis, 1, levels)
    zero_up, one_in = _index(basis, 0, inner + 1), _index(basis, 1, inner)
    return _assemble(
        basis,
        [
            (zero_n, zero_n, vac / (2.0 * w_vac)),
            (one_n, one_n, one / (2.0 * w_one)),
            (zero_up, one_in, cross),
            (one_in, zero_up, cross),
        ],
    )


def rho_RAntiR_series(alpha: Squeezing, n: int) -> DensityMatrix:
    """
    Rob–AntiRob state evaluated from its closed-form double series:

        1/(2cosh²α) Σ_{n,m} tanh^{n+m}α ( |nn⟩⟨mm|
                    + √(n+1)√(m+1)/cosh²α |n+1,n⟩⟨m+1,m| )

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (int): Truncation N.

    Returns:
        DensityMatrix: The rank-two state on R(N+2) ⊗ R̄(N+1).
    """
    t, ch, levels, pref = _coefficients(alpha, n)
    powers = t**levels
    vac = pref * np.outer(powers, powers)
    root = np.sqrt(levels + 1.0)
    one = pref * np.outer(powers * root, powers * root) / ch**2
    w_vac, w_one = np.trace(vac), np.trace(one)

    basis = BasisLabel.of((R, n + 2), (ANTI_R, n + 1))
    diagonal_pairs = _index(basis, levels, levels)
    shifted_pairs = _index(basis, levels + 1, levels)
    rows_v, cols_v = np.meshgrid(diagonal_pairs, diagonal_pairs, indexing="ij")
    rows_1, cols_1 = np.meshgrid(shifted_pairs, shifted_pairs, indexing="ij")
    return _assemble(
        basis,
        [
            (rows_v.ravel(), cols_v.ravel(), (vac / (2.0 * w_vac)).ravel()),
            (rows_1.ravel(), cols_1.ravel(), (one / (2.0 * w_one)).ravel()),
        ],
    )


def rho_R_series(alpha: Squeezing, n: int) -> DensityMatrix:
    """
    Rob's marginal from its closed form

        Σ tanh^{2(n-1)}α / (2cosh²α) (tanh²α + n/cosh²α) |n⟩⟨n|.

    The prefactor is undefined at n = 0 when α = 0, so the series is
    evaluated from n = 1 and level 0 takes the vacuum term 1/(2cosh²α)
    alone; the one-particle branch never populates level 0.

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (int): Truncation N.

    Returns:
        DensityMatrix: Diagonal state on R(N+2).
    """
    t, ch, levels, pref = _coefficients(alpha, n)
    upper = np.arange(1, n + 2)
    below = t ** (2 * (upper - 1))
    vac = np.concatenate(([pref], pref * below[:-1] * t**2))
    one = pref * below * upper / ch**2
    populations = np.zeros(n + 2)
    populations[: n + 1] += vac / (2.0 * vac.sum())
    populations[1:] += one / (2.0 * one.sum())
    basis = BasisLabel.of((R, n + 2))
    index = np.arange(n + 2)
    return _assemble(basis, [(index, index, populations)])


def rho_AntiR_series(alpha: Squeezing, n: int) -> DensityMatrix:
    """
    AntiRob's marginal from its closed form

        1/(2cosh²α) Σ tanh^{2n}α (1 + (n+1)/cosh²α) |n⟩⟨n|.

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (int): Truncation N.

    Returns:
        DensityMatrix: Diagonal state on R̄(N+1).
    """
    t, ch, levels, pref = _coefficients(alpha, n)
    geometric = t ** (2 * levels)
    vac = pref * geometric
    one = pref * geometric * (levels + 1) / ch**2
    populations = vac / (2.0 * vac.sum()) + one / (2.0 * one.sum())
    basis = BasisLabel.of((ANTI_R, n + 1))
    return _assemble(basis, [(levels, levels, populations)])


def thermal_series(alpha: Squeezing, n: int) -> DensityMatrix:
    """
    The thermal state (1/cosh²α) Σ tanh^{2n}α |n⟩⟨n| on R(N+2),
    truncated at N and renormalized.
    """
    t, ch, levels, _ = _coefficients(alpha, n)
    populations = t ** (2 * levels) / ch**2
    populations = populations / populations.sum()
    basis = BasisLabel.of((R, n + 2))
    return _assemble(basis, [(levels, levels, populations)])


def _coefficients(alpha: Squeezing, n: int) -> tuple[float, float, NDArray[np.int64], float]:
    param = as_squeezing(alpha)
    ch = param.cosh
    return param.tanh, ch, np.arange(n + 1), 1.0 / (2.0 * ch**2)


def _index(basis: BasisLabel, *levels) -> NDArray[np.intp]:
    arrays = np.broadcast_arrays(*levels)
    return np.ravel_multi_index(tuple(arrays), basis.dims)


def _assemble(
    basis: BasisLabel,
    terms: Sequence[tuple[NDArray, NDArray, NDArray]],
) -> DensityMatrix:
    rows = np.concatenate([r for r, _, _ in terms])
    cols = np.concatenate([c for _, c, _ in terms])
    data = np.concatenate([d for _, _, d in terms])
    dim = basis.total_dim
    matrix = sparse.coo_array((data, (rows, cols)), shape=(dim, dim)).tocsr()
    return DensityMatrix.from_entries(basis, matrix)
