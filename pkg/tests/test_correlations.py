import math
import pickle
import time

import numpy as np
import pytest

from rindler_corr.correlations import (
    ClassicalCorrelation,
    assemble_record,
    classical_correlations,
    discord,
    entanglement_of_formation_kw,
    koashi_winter,
    mutual_information,
)
from rindler_corr.exception import (
    DimensionError,
    InvariantViolationError,
    KoashiWinterMismatchError,
    RecordAssemblyError,
    TruncationOverflowError,
)
from rindler_corr.fockla import outer
from rindler_corr.model import (
    MeasurementDirection,
    NumericsConfig,
    SqueezingParameter,
    TruncationPolicy,
)
from rindler_corr.states import rho_AAntiR, rho_AR, tripartite_state
from rindler_corr.utils.const import EigenSolver, Subsystem

A, R = Subsystem.ALICE, Subsystem.ROB

HALF_TANH_ALPHA = 0.5 * math.log(3.0)


# ── bipartite measures ───────────────────────────────────────────────────


class TestMutualInformation:
    def test_bell_state(self, bell_state):
        assert mutual_information(bell_state) == pytest.approx(2.0)

    def test_product_state(self, product_state):
        assert mutual_information(product_state) == pytest.approx(0.0, abs=1e-12)

    def test_tripartite_state_is_rejected(self):
        with pytest.raises(DimensionError):
            mutual_information(outer(tripartite_state(0.3, 3)))


class TestClassicalCorrelations:
    def test_bell_state(self, bell_state, numerics):
        result = classical_correlations(bell_state, numerics=numerics)
        assert isinstance(result, ClassicalCorrelation)
        assert result.value == pytest.approx(1.0, abs=1e-10)
        assert result.marginal_entropy == pytest.approx(1.0)
        assert result.conditional_entropy == pytest.approx(0.0, abs=1e-10)
        assert result.evaluations > 0

    def test_product_state(self, product_state):
        result = classical_correlations(product_state)
        assert result.value == pytest.approx(0.0, abs=1e-10)

    def test_caller_supplied_marginal_entropy(self, bell_state):
        result = classical_correlations(bell_state, marginal_entropy=1.0)
        assert result.marginal_entropy == 1.0

    def test_optimum_is_a_canonical_direction(self):
        result = classical_correlations(rho_AR(0.8, 12))
        assert isinstance(result.direction, MeasurementDirection)
        assert 0.0 <= result.direction.theta <= math.pi
        assert 0.0 <= result.direction.phi < 2 * math.pi

    def test_classical_correlations_are_bounded(self):
        rho = rho_AR(1.2, 20)
        result = classical_correlations(rho)
        assert 0.0 <= result.value <= min(1.0, result.marginal_entropy) + 1e-9

    def test_jacobi_agrees_with_lapack(self):
        rho = rho_AAntiR(0.9, 14)
        lapack = classical_correlations(rho, numerics=NumericsConfig())
        jacobi = classical_correlations(
            rho, numerics=NumericsConfig(eigensolver=EigenSolver.JACOBI)
        )
        assert jacobi.value == pytest.approx(lapack.value, abs=1e-10)

    def test_invariant_violation_on_inconsistent_marginal(self, bell_state):
        with pytest.raises(InvariantViolationError):
            classical_correlations(bell_state, marginal_entropy=-0.5)


class TestDiscord:
    def test_bell_state(self, bell_state):
        assert discord(bell_state) == pytest.approx(1.0, abs=1e-10)

    def test_product_state(self, product_state):
        assert discord(product_state) == pytest.approx(0.0, abs=1e-10)

    def test_measuring_rob(self, bell_state):
        assert discord(bell_state, measured=R) == pytest.approx(1.0, abs=1e-10)


# ── Koashi-Winter ────────────────────────────────────────────────────────


class TestKoashiWinter:
    def test_entanglement_of_formation(self):
        assert entanglement_of_formation_kw(1.0, 0.4) == pytest.approx(0.6)

    def test_round_off_is_clamped(self):
        assert entanglement_of_formation_kw(0.5, 0.5 + 1e-8) == 0.0

    def test_negative_beyond_tolerance(self):
        with pytest.raises(InvariantViolationError):
            entanglement_of_formation_kw(0.5, 0.6)

    def test_routes_agree(self):
        result = koashi_winter(1.2, 0.7, 0.8, 0.3)
        assert result.ef_r_antir == pytest.approx(0.5)
        assert result.ef_antir_r == pytest.approx(0.5)
        assert result.mismatch == pytest.approx(0.0, abs=1e-15)
        assert result.clamped == 0

    def test_clamped_routes_are_counted(self):
        result = koashi_winter(0.5, 0.5 + 1e-8, 0.2, 0.2 + 1e-8)
        assert result.clamped == 2

    def test_routes_disagree(self):
        with pytest.raises(KoashiWinterMismatchError):
            koashi_winter(1.2, 0.7, 0.8, 0.2)


# ── record assembly ──────────────────────────────────────────────────────


class TestAssembleRecord:
    def test_lapack_is_the_default_and_matches_jacobi(self):
        assert NumericsConfig().eigensolver is EigenSolver.LAPACK
        policy = TruncationPolicy.fixed(16)
        lapack = assemble_record(0.9, policy)
        jacobi = assemble_record(0.9, policy, NumericsConfig(eigensolver="jacobi"))
        changes = lapack.differences(jacobi)
        assert max(changes.values()) < 1e-9, changes

    def test_inertial_limit(self):
        record = assemble_record(0.0)
        assert record.N_used == 1
        assert record.S_A == pytest.approx(1.0)
        assert record.S_R == pytest.approx(1.0)
        assert record.S_AntiR == pytest.approx(0.0, abs=1e-12)
        assert record.I_AR == pytest.approx(2.0)
        assert record.I_AAntiR == pytest.approx(0.0, abs=1e-12)
        assert record.J_AR == pytest.approx(1.0, abs=1e-10)
        assert record.J_AAntiR == pytest.approx(0.0, abs=1e-10)
        assert record.D_AR == pytest.approx(1.0, abs=1e-10)
        assert record.D_AAntiR == pytest.approx(0.0, abs=1e-10)
        assert record.EF_RAntiR == pytest.approx(0.0, abs=1e-10)
        assert record.EF_AntiRR == pytest.approx(0.0, abs=1e-10)
        assert record.S_RAntiR == pytest.approx(1.0)

    def test_identities_at_half_tanh(self):
        record = assemble_record(HALF_TANH_ALPHA, TruncationPolicy.fixed(12))
        assert record.N_used == 12
        assert record.S_A == pytest.approx(1.0, abs=1e-12)
        assert record.I_AR + record.I_AAntiR == pytest.approx(2.0, abs=1e-9)
        assert record.S_AR == pytest.approx(record.S_AntiR, abs=1e-9)
        assert record.S_AAntiR == pytest.approx(record.S_R, abs=1e-9)
        assert record.S_RAntiR == pytest.approx(1.0, abs=1e-9)
        assert record.D_AR == pytest.approx(record.I_AR - record.J_AR, abs=1e-12)
        assert record.EF_RAntiR == pytest.approx(record.EF_AntiRR, abs=1e-5)
        assert record.J_AR > record.J_AAntiR

    def test_accepts_squeezing_parameter(self):
        param = SqueezingParameter.from_tanh(0.5)
        record = assemble_record(param, TruncationPolicy.fixed(6))
        assert record.alpha == pytest.approx(HALF_TANH_ALPHA)

    def test_adaptive_truncation_is_converged(self):
        adaptive = assemble_record(0.5)
        doubled = assemble_record(0.5, TruncationPolicy.fixed(2 * adaptive.N_used))
        for name in ("S_R", "I_AR", "J_AR", "J_AAntiR", "EF_RAntiR"):
            assert getattr(doubled, name) == pytest.approx(getattr(adaptive, name), abs=1e-9)

    def test_correlations_degrade_with_squeezing(self):
        low = assemble_record(0.3, TruncationPolicy.fixed(20))
        high = assemble_record(1.0, TruncationPolicy.fixed(40))
        assert high.I_AR < low.I_AR
        assert high.I_AAntiR > low.I_AAntiR
        assert high.S_R > low.S_R

    def test_failure_is_wrapped(self):
        policy = TruncationPolicy.adaptive(tail_eps=1e-12, n_max_cap=512)
        with pytest.raises(RecordAssemblyError) as exc_info:
            assemble_record(3.0, policy)
        assert exc_info.value.alpha == 3.0
        assert isinstance(exc_info.value.cause, TruncationOverflowError)

    def test_negative_alpha_is_wrapped(self):
        with pytest.raises(RecordAssemblyError):
            assemble_record(-1.0)

    def test_errors_survive_pickling(self):
        error = RecordAssemblyError(3.0, TruncationOverflowError(3.0, 512))
        restored = pickle.loads(pickle.dumps(error))
        assert str(restored) == str(error)
        assert restored.cause.cap == 512


@pytest.mark.slow
class TestStrongSqueezing:
    """Records near the horizon, where the truncation runs into the thousands."""

    @pytest.fixture(scope="class")
    def timed(self):
        start = time.perf_counter()
        record = assemble_record(3.0)
        return record, time.perf_counter() - start

    @pytest.fixture(scope="class")
    def record(self, timed):
        return timed[0]

    def test_single_point_is_fast(self, timed):
        # one core; a full sweep spreads 121 such points over the workers
        assert timed[1] < 180.0

    def test_truncation(self, record):
        assert record.N_used > 2700

    def test_identities(self, record):
        assert record.S_A == pytest.approx(1.0, abs=1e-10)
        assert record.I_AR + record.I_AAntiR == pytest.approx(2.0, abs=1e-6)
        assert record.S_RAntiR == pytest.approx(1.0, abs=1e-8)
        assert record.EF_RAntiR == pytest.approx(record.EF_AntiRR, abs=1e-5)

    def test_measures_are_non_negative(self, record):
        values = np.array(
            [record.J_AR, record.J_AAntiR, record.D_AR, record.D_AAntiR, record.EF_RAntiR]
        )
        assert np.all(values >= 0.0)
        assert record.I_AR < 2.0

    def test_discord_survives(self, record):
        assert record.D_AR > 0.01

    def test_entanglement_is_created(self, record):
        assert record.EF_RAntiR > assemble_record(0.0).EF_RAntiR
