import logging
import math
from functools import lru_cache
from typing import Optional

import numpy as np

from rindler_corr.exception import InvalidParameterError
from rindler_corr.fockla import reduce_pure
from rindler_corr.model import BasisLabel, DensityMatrix, PureStateVector, TruncationPolicy
from rindler_corr.states._truncation import Squeezing, as_squeezing, resolve_truncation
from rindler_corr.utils.const import Subsystem

logger = logging.getLogger("rindler_corr")

A, R, ANTI_R = Subsystem.ALICE, Subsystem.ROB, Subsystem.ANTIROB


def rindler_basis(n: int) -> BasisLabel:
    """Rob ⊗ AntiRob basis for truncation N: dimensions N+2 and N+1."""
    return BasisLabel.of((R, n + 2), (ANTI_R, n + 1))


def tripartite_basis(n: int) -> BasisLabel:
    return BasisLabel.of((A, 2), (R, n + 2), (ANTI_R, n + 1))


def vacuum_rindler(alpha: Squeezing, n: Optional[int] = None) -> PureStateVector:
    """
    The Minkowski vacuum of one mode in the Rindler basis,
    (1/cosh α) Σ tanhⁿα |n⟩_R |n⟩_R̄, truncated at N and renormalized.

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (Optional[int], optional): Truncation N. Defaults to the adaptive policy.

    Returns:
        PureStateVector: The vector on the R ⊗ R̄ basis.
    """
    param = as_squeezing(alpha)
    n = _truncation(param, n)
    levels = np.arange(n + 1)
    amplitudes = param.tanh**levels / param.cosh
    indices = levels * (n + 1) + levels
    return PureStateVector.from_indices(rindler_basis(n), indices, amplitudes, normalize=True)


def one_particle_unruh(alpha: Squeezing, n: Optional[int] = None) -> PureStateVector:
    """
    The one-particle Unruh state in the Rindler basis,
    (1/cosh²α) Σ tanhⁿα √(n+1) |n+1⟩_R |n⟩_R̄, truncated at N and renormalized.

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (Optional[int], optional): Truncation N. Defaults to the adaptive policy.

    Returns:
        PureStateVector: The vector on the R ⊗ R̄ basis.
    """
    param = as_squeezing(alpha)
    n = _truncation(param, n)
    levels = np.arange(n + 1)
    amplitudes = param.tanh**levels * np.sqrt(levels + 1.0) / param.cosh**2
    indices = (levels + 1) * (n + 1) + levels
    return PureStateVector.from_indices(rindler_basis(n), indices, amplitudes, normalize=True)


def tripartite_state(alpha: Squeezing, n: Optional[int] = None) -> PureStateVector:
    """
    Alice's qubit maximally entangled with the Rindler-basis mode,
    (|0⟩_A ⊗ vacuum + |1⟩_A ⊗ one-particle) / √2.

    Factors are ordered A, R, R̄. The most recent results are cached,
    since a record reduces the same vector several times.

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (Optional[int], optional): Truncation N. Defaults to the adaptive policy.

    Returns:
        PureStateVector: The normalized tripartite vector.
    """
    param = as_squeezing(alpha)
    return _tripartite(param.alpha, _truncation(param, n))


@lru_cache(maxsize=2)
def _tripartite(alpha: float, n: int) -> PureStateVector:
    logger.debug("Building tripartite state at alpha=%s, N=%d", alpha, n)
    vacuum_idx, vacuum_amp = vacuum_rindler(alpha, n).support()
    one_idx, one_amp = one_particle_unruh(alpha, n).support()
    offset = (n + 2) * (n + 1)
    indices = np.concatenate((vacuum_idx, one_idx + offset))
    amplitudes = np.concatenate((vacuum_amp, one_amp)) / math.sqrt(2.0)
    return PureStateVector.from_indices(tripartite_basis(n), indices, amplitudes)


def rho_AR(alpha: Squeezing, n: Optional[int] = None) -> DensityMatrix:
    """Alice–Rob state, AntiRob traced out."""
    return reduce_pure(tripartite_state(alpha, n), {A, R})


def rho_AAntiR(alpha: Squeezing, n: Optional[int] = None) -> DensityMatrix:
    """Alice–AntiRob state, Rob traced out."""
    return reduce_pure(tripartite_state(alpha, n), {A, ANTI_R})


def rho_RAntiR(alpha: Squeezing, n: Optional[int] = None) -> DensityMatrix:
    """
    Rob–AntiRob state, Alice traced out.

    This is a rank-two mixture whose support grows quadratically with N;
    at large truncations prefer :func:`rindler_corr.fockla.pure_reduced_spectrum`
    for its entropy.
    """
    return reduce_pure(tripartite_state(alpha, n), {R, ANTI_R})


def rho_A(alpha: Squeezing, n: Optional[int] = None) -> DensityMatrix:
    """Alice's marginal; diag(½, ½) for every α."""
    return reduce_pure(tripartite_state(alpha, n), {A})


def rho_R(alpha: Squeezing, n: Optional[int] = None) -> DensityMatrix:
    """Rob's marginal, diagonal in the occupation basis."""
    return reduce_pure(tripartite_state(alpha, n), {R})


def rho_AntiR(alpha: Squeezing, n: Optional[int] = None) -> DensityMatrix:
    """AntiRob's marginal, diagonal in the occupation basis."""
    return reduce_pure(tripartite_state(alpha, n), {ANTI_R})


def unruh_thermal_marginal(alpha: Squeezing, n: Optional[int] = None) -> DensityMatrix:
    """
    The single-mode state Rob assigns to the Minkowski vacuum.

    It is thermal: successive level populations have ratio
    tanh²α = e^{-ω/T} at the Unruh temperature T = a/2π.

    Args:
        alpha (Squeezing): The squeezing parameter.
        n (Optional[int], optional): Truncation N. Defaults to the adaptive policy.

    Returns:
        DensityMatrix: Diagonal state on Rob's factor of dimension N+2;
            the top level is empty.
    """
    return reduce_pure(vacuum_rindler(alpha, n), {R})


def _truncation(alpha: Squeezing, n: Optional[int]) -> int:
    if n is None:
        return resolve_truncation(TruncationPolicy.adaptive(), alpha)
    if int(n) != n or n < 1:
        raise InvalidParameterError(f"truncation N must be an integer >= 1, got {n!r}")
    return int(n)
