import logging
import time
from dataclasses import dataclass
from typing import Optional

from rindler_corr.correlations._optimizer import classical_correlations
from rindler_corr.exception import (
    DimensionError,
    InvariantViolationError,
    KoashiWinterMismatchError,
    RecordAssemblyError,
    RindlerCorrError,
)
from rindler_corr.fockla import (
    eigenvalues_symmetric,
    entropy_from_spectrum,
    partial_trace,
    pure_reduced_spectrum,
    reduce_pure,
    von_neumann_entropy,
)
from rindler_corr.model import (
    CorrelationRecord,
    DensityMatrix,
    NumericsConfig,
    Tolerances,
    TruncationPolicy,
)
from rindler_corr.states import Squeezing, as_squeezing, resolve_truncation, tripartite_state
from rindler_corr.utils.const import Subsystem

logger = logging.getLogger("rindler_corr")

A, R, ANTI_R = Subsystem.ALICE, Subsystem.ROB, Subsystem.ANTIROB


def mutual_information(
    rho: DensityMatrix, numerics: Optional[NumericsConfig] = None
) -> float:
    """
    Returns I(A:B) = S(ρ_A) + S(ρ_B) - S(ρ_AB) in bits.

    Args:
        rho (DensityMatrix): A state on exactly two factors.
        numerics (Optional[NumericsConfig], optional): Solver and tolerances.

    Returns:
        float: The mutual information.

    Raises:
        DimensionError: If ``rho`` is not bipartite.
        InvariantViolationError: If I is negative or exceeds 2 min(S_A, S_B)
            beyond the norm tolerance.
    """
    numerics = numerics or NumericsConfig()
    if len(rho.basis.factors) != 2:
        raise DimensionError(f"mutual information needs a bipartite state, got {rho.basis}")
    first, second = rho.basis.ids
    s_first = _entropy(partial_trace(rho, {first}), numerics)
    s_second = _entropy(partial_trace(rho, {second}), numerics)
    s_joint = _entropy(rho, numerics)
    return _checked_mutual_information(
        s_first, s_second, s_joint, numerics.tolerances, str(rho.basis)
    )


def discord(
    rho: DensityMatrix,
    measured: Subsystem | str = Subsystem.ALICE,
    numerics: Optional[NumericsConfig] = None,
) -> float:
    """
    Returns the discord D = I - J with the measurement on ``measured``.

    Raises:
        InvariantViolationError: If D is below zero beyond the clamp tolerance.
    """
    numerics = numerics or NumericsConfig()
    information = mutual_information(rho, numerics)
    j = classical_correlations(rho, measured, numerics).value
    value, _ = _clamp(information - j, numerics.tolerances, "discord")
    return value


def entanglement_of_formation_kw(
    s_marginal: float,
    j_measured_on_third: float,
    tolerances: Optional[Tolerances] = None,
) -> float:
    """
    Entanglement of formation of ρ_BC for a pure ρ_ABC from the
    Koashi-Winter identity E_F(B:C) = S(B) - J(B|A).

    With B = Rob, C = AntiRob and A = Alice this is
    E_F(ρ_RR̄) = S(ρ_R) - J(ρ_AR), the measurement on Alice.

    Args:
        s_marginal (float): S(B) in bits.
        j_measured_on_third (float): J of ρ_AB with A measured.
        tolerances (Optional[Tolerances], optional): Clamp tolerance.

    Returns:
        float: E_F in bits, clamped at zero within tolerance.
    """
    value, _ = _clamp(s_marginal - j_measured_on_third, tolerances or Tolerances(), "E_F")
    return value


@dataclass(frozen=True)
class KoashiWinterResult:
    """
    Both Koashi-Winter routes to E_F(ρ_RR̄).

    Attributes:
        ef_r_antir: S(R) - J(AR).
        ef_antir_r: S(R̄) - J(AR̄).
        clamped: How many of the two values were clamped to zero.
    """

    ef_r_antir: float
    ef_antir_r: float
    clamped: int = 0

    @property
    def mismatch(self) -> float:
        return abs(self.ef_r_antir - self.ef_antir_r)


def koashi_winter(
    s_r: float,
    j_ar: float,
    s_antir: float,
    j_aantir: float,
    tolerances: Optional[Tolerances] = None,
) -> KoashiWinterResult:
    """
    Computes E_F(ρ_RR̄) from both sides and checks that they agree.

    Raises:
        KoashiWinterMismatchError: If the routes differ by more than the
            Koashi-Winter tolerance.
    """
    tol = tolerances or Tolerances()
    first, c1 = _clamp(s_r - j_ar, tol, "E_F(R:R̄)")
    second, c2 = _clamp(s_antir - j_aantir, tol, "E_F(R̄:R)")
    result = KoashiWinterResult(first, second, c1 + c2)
    if result.mismatch > tol.koashi_winter:
        raise KoashiWinterMismatchError(
            f"Koashi-Winter routes disagree: {first!r} vs {second!r}"
        )
    return result


def assemble_record(
    alpha: Squeezing,
    policy: Optional[TruncationPolicy] = None,
    numerics: Optional[NumericsConfig] = None,
) -> CorrelationRecord:
    """
    Runs the whole pipeline for one squeezing value.

    The three marginal and three bipartite entropies come from one
    tripartite vector; the pure-state equalities S(AR) = S(R̄),
    S(AR̄) = S(R), S(RR̄) = S(A) and the conservation law
    I(AR) + I(AR̄) = 2 S(A) are checked before the record is returned.

    Args:
        alpha (Squeezing): The squeezing parameter.
        policy (Optional[TruncationPolicy], optional): Truncation rule.
            Defaults to the adaptive policy.
        numerics (Optional[NumericsConfig], optional): Tolerances, optimizer
            schedule and solver.

    Returns:
        CorrelationRecord: All measures at ``alpha``.

    Raises:
        RecordAssemblyError: Wrapping the first failure, with ``alpha``.
    """
    numerics = numerics or NumericsConfig()
    policy = policy or TruncationPolicy.adaptive()
    tol = numerics.tolerances
    try:
        param = as_squeezing(alpha)
        started = time.perf_counter()
        n = resolve_truncation(policy, param)
        psi = tripartite_state(param, n).with_norm_tol(tol.norm)

        rho_ar = reduce_pure(psi, {A, R})
        rho_aantir = reduce_pure(psi, {A, ANTI_R})
        spectra = {
            "S_A": eigenvalues_symmetric(reduce_pure(psi, {A}), numerics.eigensolver, tol),
            "S_R": eigenvalues_symmetric(reduce_pure(psi, {R}), numerics.eigensolver, tol),
            "S_AntiR": eigenvalues_symmetric(
                reduce_pure(psi, {ANTI_R}), numerics.eigensolver, tol
            ),
            "S_AR": eigenvalues_symmetric(rho_ar, numerics.eigensolver, tol),
            "S_AAntiR": eigenvalues_symmetric(rho_aantir, numerics.eigensolver, tol),
            "S_RAntiR": pure_reduced_spectrum(psi, {R, ANTI_R}, numerics.eigensolver, tol),
        }
        s = {name: entropy_from_spectrum(spectrum) for name, spectrum in spectra.items()}
        clamped_eigenvalues = sum(spectrum.clamped_count for spectrum in spectra.values())

        for joint, single in (("S_AR", "S_AntiR"), ("S_AAntiR", "S_R"), ("S_RAntiR", "S_A")):
            if abs(s[joint] - s[single]) > tol.purification:
                raise InvariantViolationError(
                    f"purification identity {joint}={s[joint]!r} != {single}={s[single]!r}"
                )

        i_ar = _checked_mutual_information(s["S_A"], s["S_R"], s["S_AR"], tol, "AR")
        i_aantir = _checked_mutual_information(
            s["S_A"], s["S_AntiR"], s["S_AAntiR"], tol, "AR̄"
        )
        i_rantir = _checked_mutual_information(
            s["S_R"], s["S_AntiR"], s["S_RAntiR"], tol, "RR̄"
        )
        if abs(i_ar + i_aantir - 2.0 * s["S_A"]) > tol.conservation:
            raise InvariantViolationError(
                f"conservation law violated: I(AR) + I(AR̄) = {i_ar + i_aantir!r}, "
                f"2 S(A) = {2.0 * s['S_A']!r}"
            )

        j_ar = classical_correlations(rho_ar, A, numerics, marginal_entropy=s["S_R"])
        j_aantir = classical_correlations(
            rho_aantir, A, numerics, marginal_entropy=s["S_AntiR"]
        )
        d_ar, d_ar_clamped = _clamp(i_ar - j_ar.value, tol, "D(AR)")
        d_aantir, d_aantir_clamped = _clamp(i_aantir - j_aantir.value, tol, "D(AR̄)")
        kw = koashi_winter(s["S_R"], j_ar.value, s["S_AntiR"], j_aantir.value, tol)

        record = CorrelationRecord(
            alpha=param.alpha,
            S_A=s["S_A"],
            S_R=s["S_R"],
            S_AntiR=s["S_AntiR"],
            I_AR=i_ar,
            I_AAntiR=i_aantir,
            I_RAntiR=i_rantir,
            J_AR=j_ar.value,
            J_AAntiR=j_aantir.value,
            D_AR=d_ar,
            D_AAntiR=d_aantir,
            EF_RAntiR=kw.ef_r_antir,
            EF_AntiRR=kw.ef_antir_r,
            S_AR=s["S_AR"],
            S_AAntiR=s["S_AAntiR"],
            S_RAntiR=s["S_RAntiR"],
            N_used=n,
            theta_AR=j_ar.direction.theta,
            phi_AR=j_ar.direction.phi,
            theta_AAntiR=j_aantir.direction.theta,
            phi_AAntiR=j_aantir.direction.phi,
            clamped_measures=int(j_ar.clamped)
            + int(j_aantir.clamped)
            + d_ar_clamped
            + d_aantir_clamped
            + kw.clamped,
            clamped_eigenvalues=clamped_eigenvalues
            + j_ar.clamped_eigenvalues
            + j_aantir.clamped_eigenvalues,
        )
    except RindlerCorrError as e:
        raise RecordAssemblyError(float(alpha), e) from e

    logger.debug(
        "Record at alpha=%s (N=%d) assembled in %.2fs",
        record.alpha,
        n,
        time.perf_counter() - started,
    )
    return record


def _entropy(rho: DensityMatrix, numerics: NumericsConfig) -> float:
    return von_neumann_entropy(rho, numerics.eigensolver, numerics.tolerances)


def _checked_mutual_information(
    s_first: float, s_second: float, s_joint: float, tol: Tolerances, label: str
) -> float:
    value = s_first + s_second - s_joint
    if value < -tol.norm:
        raise InvariantViolationError(f"mutual information of {label} is negative: {value!r}")
    if value > 2.0 * min(s_first, s_second) + tol.norm:
        raise InvariantViolationError(
            f"mutual information of {label} exceeds 2 min(S_A, S_B): {value!r}"
        )
    return value


def _clamp(value: float, tol: Tolerances, name: str) -> tuple[float, int]:
    if value >= 0.0:
        return value, 0
    if value < -tol.clamp:
        raise InvariantViolationError(f"{name}={value!r} is negative beyond tolerance")
    logger.debug("Clamped %s=%.3e to 0", name, value)
    return 0.0, 1
