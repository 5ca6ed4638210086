import math

import numpy as np
import pytest

from rindler_corr.exception import InvalidParameterError, TruncationOverflowError
from rindler_corr.fockla import pure_reduced_spectrum, von_neumann_entropy
from rindler_corr.model import AccelerationSpec, SqueezingParameter, TruncationPolicy
from rindler_corr.states import (
    as_squeezing,
    branch_tail,
    one_particle_unruh,
    required_truncation,
    resolve_truncation,
    rho_A,
    rho_AAntiR,
    rho_AntiR,
    rho_AR,
    rho_R,
    rho_RAntiR,
    rindler_basis,
    squeezing_from_acceleration,
    tripartite_basis,
    tripartite_state,
    unruh_thermal_marginal,
    vacuum_rindler,
)
from rindler_corr.utils.const import Branch, Subsystem

A, R, ANTI_R = Subsystem.ALICE, Subsystem.ROB, Subsystem.ANTIROB

HALF_TANH_ALPHA = 0.5 * math.log(3.0)


# ── truncation ───────────────────────────────────────────────────────────


class TestSqueezingConversion:
    def test_as_squeezing_passes_parameters_through(self):
        param = SqueezingParameter(0.3)
        assert as_squeezing(param) is param
        assert as_squeezing(0.3) == param

    def test_from_acceleration(self):
        param = squeezing_from_acceleration(AccelerationSpec(omega=1.0, accel=10.0))
        assert param.alpha == pytest.approx(0.929593, abs=1e-6)
        assert param.tanh == pytest.approx(math.exp(-math.pi / 10.0))

    def test_monotone_in_acceleration(self):
        alphas = [
            squeezing_from_acceleration(AccelerationSpec(1.0, a)).alpha
            for a in (0.5, 1.0, 5.0, 50.0)
        ]
        assert alphas == sorted(alphas)

    def test_unresolvable_acceleration(self):
        with pytest.raises(InvalidParameterError):
            squeezing_from_acceleration(AccelerationSpec(1e-300, 1e300))


class TestBranchTail:
    def test_vacuum_tail(self):
        assert branch_tail(HALF_TANH_ALPHA, 10, Branch.VACUUM) == pytest.approx(
            0.25**11
        )
        assert branch_tail(HALF_TANH_ALPHA, 10, "vacuum") == pytest.approx(2.384e-7, rel=1e-3)

    def test_one_particle_tail_is_heavier(self):
        vacuum = branch_tail(HALF_TANH_ALPHA, 10, Branch.VACUUM)
        one = branch_tail(HALF_TANH_ALPHA, 10, Branch.ONE_PARTICLE)
        assert one == pytest.approx(vacuum * (1.0 + 11 * 0.75))

    def test_tail_matches_discarded_weights(self):
        s = 0.25
        levels = np.arange(11, 400)
        assert branch_tail(HALF_TANH_ALPHA, 10, Branch.ONE_PARTICLE) == pytest.approx(
            float(np.sum((1 - s) ** 2 * (levels + 1) * s**levels)), rel=1e-12
        )

    def test_inertial_limit(self):
        assert branch_tail(0.0, 1, Branch.ONE_PARTICLE) == 0.0

    def test_negative_truncation(self):
        with pytest.raises(InvalidParameterError):
            branch_tail(0.5, -1, Branch.VACUUM)


class TestRequiredTruncation:
    def test_half_tanh(self):
        assert required_truncation(HALF_TANH_ALPHA, 1e-12) == 21

    def test_vacuum_bound_alone_is_not_enough(self):
        n = 19
        assert branch_tail(HALF_TANH_ALPHA, n, Branch.VACUUM) < 1e-12
        assert branch_tail(HALF_TANH_ALPHA, n, Branch.ONE_PARTICLE) >= 1e-12

    def test_minimal(self):
        n = required_truncation(1.0, 1e-10)
        for branch in Branch:
            assert branch_tail(1.0, n, branch) < 1e-10
        assert branch_tail(1.0, n - 1, Branch.ONE_PARTICLE) >= 1e-10

    def test_inertial_limit(self):
        assert required_truncation(0.0) == 1

    def test_overflow(self):
        with pytest.raises(TruncationOverflowError) as exc_info:
            required_truncation(3.0, 1e-12, n_max_cap=512)
        assert exc_info.value.cap == 512
        assert exc_info.value.alpha == 3.0

    @pytest.mark.parametrize("eps", [0.0, 1.0])
    def test_invalid_tolerance(self, eps):
        with pytest.raises(InvalidParameterError):
            required_truncation(0.5, eps)

    def test_resolve_fixed_policy(self):
        assert resolve_truncation(TruncationPolicy.fixed(7), 2.0) == 7

    def test_resolve_adaptive_policy(self):
        policy = TruncationPolicy.adaptive(tail_eps=1e-12)
        assert resolve_truncation(policy, HALF_TANH_ALPHA) == 21


# ── pure states ──────────────────────────────────────────────────────────


class TestPureStates:
    def test_bases(self):
        assert rindler_basis(4).dims == (6, 5)
        assert tripartite_basis(4).dims == (2, 6, 5)

    @pytest.mark.parametrize("builder", [vacuum_rindler, one_particle_unruh, tripartite_state])
    @pytest.mark.parametrize("alpha", [0.0, 0.4, 2.0])
    def test_normalized(self, builder, alpha):
        assert builder(alpha, 12).norm_squared() == pytest.approx(1.0, abs=1e-12)

    def test_vacuum_amplitudes(self):
        n = 30
        v = vacuum_rindler(HALF_TANH_ALPHA, n)
        idx, vals = v.support()
        levels = np.arange(n + 1)
        np.testing.assert_array_equal(idx, levels * (n + 1) + levels)
        ratios = vals[1:] / vals[:-1]
        np.testing.assert_allclose(ratios, 0.5)

    def test_one_particle_amplitudes(self):
        n = 30
        v = one_particle_unruh(HALF_TANH_ALPHA, n)
        _, vals = v.support()
        levels = np.arange(1, n + 1)
        np.testing.assert_allclose(vals[1:] / vals[:-1], 0.5 * np.sqrt((levels + 1) / levels))

    def test_inertial_limit(self):
        v = tripartite_state(0.0, 1)
        idx, vals = v.support()
        # |0⟩|0⟩|0⟩ and |1⟩|1⟩|0⟩ on A(2)⊗R(3)⊗R̄(2)
        np.testing.assert_array_equal(idx, [0, 6 + 2])
        np.testing.assert_allclose(vals, [1 / math.sqrt(2)] * 2)

    def test_adaptive_default_truncation(self):
        v = vacuum_rindler(HALF_TANH_ALPHA)
        assert v.basis == rindler_basis(21)

    @pytest.mark.parametrize("n", [0, 2.5, -3])
    def test_invalid_truncation(self, n):
        with pytest.raises(InvalidParameterError):
            vacuum_rindler(0.5, n)

    def test_negative_alpha(self):
        with pytest.raises(InvalidParameterError):
            tripartite_state(-0.1, 5)


# ── reduced states ───────────────────────────────────────────────────────


class TestReducedStates:
    @pytest.mark.parametrize("alpha", [0.0, 0.7, 1.5])
    def test_alice_marginal_is_maximally_mixed(self, alpha):
        np.testing.assert_allclose(rho_A(alpha, 15).to_dense(), np.eye(2) / 2, atol=1e-14)

    def test_marginals_are_diagonal(self):
        for rho in (rho_R(0.8, 10), rho_AntiR(0.8, 10)):
            dense = rho.to_dense()
            np.testing.assert_array_equal(dense, np.diag(np.diag(dense)))

    def test_thermal_marginal_level_ratio(self):
        alpha = 0.9
        populations = unruh_thermal_marginal(alpha, 40).diagonal()
        assert populations[-1] == 0.0
        np.testing.assert_allclose(
            populations[1:-1] / populations[:-2], math.tanh(alpha) ** 2, rtol=1e-10
        )

    def test_thermal_marginal_matches_unruh_temperature(self):
        spec = AccelerationSpec(omega=1.0, accel=10.0)
        alpha = squeezing_from_acceleration(spec)
        populations = unruh_thermal_marginal(alpha, 30).diagonal()
        assert populations[1] / populations[0] == pytest.approx(spec.thermal_ratio)

    def test_inertial_limit(self):
        np.testing.assert_allclose(rho_R(0.0, 1).diagonal(), [0.5, 0.5, 0.0])
        np.testing.assert_allclose(rho_AntiR(0.0, 1).diagonal(), [1.0, 0.0])
        assert von_neumann_entropy(rho_AR(0.0, 1)) == pytest.approx(0.0, abs=1e-12)
        assert von_neumann_entropy(rho_AAntiR(0.0, 1)) == pytest.approx(1.0)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.2])
    def test_purification_entropies(self, alpha):
        n = 25
        assert von_neumann_entropy(rho_RAntiR(alpha, n)) == pytest.approx(1.0, abs=1e-10)
        assert von_neumann_entropy(rho_AR(alpha, n)) == pytest.approx(
            von_neumann_entropy(rho_AntiR(alpha, n)), abs=1e-10
        )
        assert von_neumann_entropy(rho_AAntiR(alpha, n)) == pytest.approx(
            von_neumann_entropy(rho_R(alpha, n)), abs=1e-10
        )

    def test_gram_route_for_rob_antirob(self):
        v = tripartite_state(1.0, 20)
        spectrum = pure_reduced_spectrum(v, [R, ANTI_R])
        assert len(spectrum) == 2
        np.testing.assert_allclose(spectrum.eigenvalues, [0.5, 0.5], atol=1e-12)

    def test_reduced_bases(self):
        assert rho_AR(0.3, 6).basis.ids == (A, R)
        assert rho_AAntiR(0.3, 6).basis.ids == (A, ANTI_R)
        assert rho_RAntiR(0.3, 6).basis.dims == (8, 7)
