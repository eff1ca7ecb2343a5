import cmath
import math

import numpy as np
import pytest

from ionmzi.protocol import (
    ENTRY_UPPER_BACKWARD,
    IonPairState,
    bell_phi_plus,
    bell_psi_minus,
    bell_psi_plus,
    evolve_single_pass,
    ion_pair_pure_state,
    propagate,
    run_mixed,
    run_product,
    single_pass,
)
from ionmzi.states import (
    Direction,
    PhotonMode,
    Polarization,
    Port,
    PureState,
    ion_fidelity,
)

from oracles import (
    SQRT_HALF,
    closed_form_final_state,
    max_amplitude_delta,
    random_ion_pair,
    random_product_amplitudes,
)


def balanced_product(a2: float) -> IonPairState:
    plus, minus = math.sqrt(a2), math.sqrt(1.0 - a2)
    return IonPairState.product(plus, minus, plus, minus)


class TestIonPairState:
    def test_normalization_enforced(self):
        with pytest.raises(ValueError, match="normalized"):
            IonPairState(c_pp=1.0, c_mm=1.0)

    def test_from_unnormalized(self):
        state = IonPairState.from_unnormalized(c_pm=3.0, c_mp=4.0)
        assert state.c_pm == pytest.approx(0.6)
        assert state.c_mp == pytest.approx(0.8)

    def test_null_rejected(self):
        with pytest.raises(ValueError, match="null"):
            IonPairState.from_unnormalized()

    def test_bell_fidelities(self):
        assert bell_psi_plus().fidelity(bell_psi_minus()) == pytest.approx(0.0, abs=1e-15)
        assert bell_psi_plus().fidelity(bell_psi_plus()) == pytest.approx(1.0, abs=1e-12)


class TestSinglePassProduct:
    def test_detect_lower_branch_closed_form(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            u_plus, u_minus, l_plus, l_minus = random_product_amplitudes(rng)
            result = single_pass(IonPairState.product(u_plus, u_minus, l_plus, l_minus))
            expected = 0.25 * (abs(u_minus * l_plus) ** 2 + abs(u_plus * l_minus) ** 2)
            assert result.p_detect_lower == pytest.approx(expected, abs=1e-12)
            assert result.p_scatter_u == pytest.approx(0.5 * abs(u_plus) ** 2, abs=1e-12)
            assert result.p_scatter_l == pytest.approx(0.5 * abs(l_plus) ** 2, abs=1e-12)

    def test_success_law_at_point_seven(self):
        result = single_pass(balanced_product(0.7))
        assert result.p_detect_lower == pytest.approx(0.5 * 0.7 * 0.3, abs=1e-12)

    def test_scatter_posts_are_the_survivors(self):
        u_plus, u_minus, l_plus, l_minus = 0.6, 0.8, 0.8, 0.6
        result = single_pass(IonPairState.product(u_plus, u_minus, l_plus, l_minus))
        # upper ion scattered: lower ion keeps its own superposition
        assert result.post_scatter_u is not None
        assert abs(result.post_scatter_u.c_plus) == pytest.approx(l_plus, abs=1e-12)
        assert abs(result.post_scatter_u.c_minus) == pytest.approx(l_minus, abs=1e-12)
        assert result.post_scatter_l is not None
        assert abs(result.post_scatter_l.c_plus) == pytest.approx(u_plus, abs=1e-12)
        assert abs(result.post_scatter_l.c_minus) == pytest.approx(u_minus, abs=1e-12)

    def test_detect_upper_carries_doubled_mm_amplitude(self):
        result = single_pass(balanced_product(0.5))
        post = result.post_detect_upper
        assert post is not None
        assert abs(post.c_mm) == pytest.approx(2.0 * abs(post.c_mp), abs=1e-12)
        assert result.p_detect_upper == pytest.approx(0.25 * (0.25 + 0.25) + 0.25, abs=1e-12)

    def test_detect_lower_orthogonal_to_diagonal_kets(self):
        rng = np.random.default_rng(29)
        for _ in range(20):
            result = single_pass(random_ion_pair(rng))
            if result.post_detect_lower is None:
                continue
            assert result.post_detect_lower.c_pp == 0j
            assert result.post_detect_lower.c_mm == 0j


class TestSinglePassBell:
    def test_psi_plus_branches(self):
        result = single_pass(bell_psi_plus())
        assert result.p_detect_upper == pytest.approx(0.25, abs=1e-12)
        assert result.p_detect_lower == pytest.approx(0.25, abs=1e-12)
        assert result.p_scatter_u + result.p_scatter_l == pytest.approx(0.5, abs=1e-12)
        assert result.post_detect_upper.fidelity(bell_psi_plus()) == pytest.approx(1.0, abs=1e-12)
        assert result.post_detect_lower.fidelity(bell_psi_minus()) == pytest.approx(1.0, abs=1e-12)

    def test_phi_plus_only_fires_upper(self):
        result = single_pass(bell_phi_plus())
        assert result.p_detect_upper == pytest.approx(0.5, abs=1e-12)
        assert result.p_detect_lower == pytest.approx(0.0, abs=1e-15)
        assert result.post_detect_lower is None
        assert result.p_scatter_u + result.p_scatter_l == pytest.approx(0.5, abs=1e-12)
        post = result.post_detect_upper
        assert abs(post.c_mm) == pytest.approx(1.0, abs=1e-12)


class TestOracleEquivalence:
    def test_driver_matches_hand_derived_closed_form(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            ions = random_ion_pair(rng)
            driven = evolve_single_pass(ions)
            assert max_amplitude_delta(driven, closed_form_final_state(ions)) < 1e-12

    def test_linearity_of_propagation(self):
        rng = np.random.default_rng(37)
        photon = PhotonMode.propagating(Port.LOWER, Direction.FORWARD, Polarization.SIGMA_PLUS)
        for _ in range(20):
            first = ion_pair_pure_state(random_ion_pair(rng), photon)
            second = ion_pair_pure_state(random_ion_pair(rng), photon)
            x = complex(rng.standard_normal(), rng.standard_normal())
            y = complex(rng.standard_normal(), rng.standard_normal())
            combined = PureState(
                list((b, x * amp) for b, amp in first.items())
                + list((b, y * amp) for b, amp in second.items())
            )
            left = propagate(combined)
            right = PureState(
                list((b, x * amp) for b, amp in propagate(first).items())
                + list((b, y * amp) for b, amp in propagate(second).items())
            )
            assert max_amplitude_delta(left, right) < 1e-12

    def test_global_phase_invariance(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            ions = random_ion_pair(rng)
            phase = cmath.exp(2j * math.pi * rng.random())
            rotated = IonPairState(
                ions.c_pp * phase, ions.c_pm * phase, ions.c_mp * phase, ions.c_mm * phase
            )
            base, turned = single_pass(ions), single_pass(rotated)
            for name in ("p_scatter_u", "p_scatter_l", "p_detect_upper", "p_detect_lower"):
                assert getattr(turned, name) == pytest.approx(getattr(base, name), abs=1e-12)
            if base.post_detect_lower is not None:
                assert turned.post_detect_lower.fidelity(bell_psi_minus()) == pytest.approx(
                    base.post_detect_lower.fidelity(bell_psi_minus()), abs=1e-12
                )

    def test_probability_completeness(self):
        rng = np.random.default_rng(43)
        for _ in range(300):
            result = single_pass(random_ion_pair(rng))
            total = (
                result.p_scatter_u
                + result.p_scatter_l
                + result.p_detect_upper
                + result.p_detect_lower
                + result.p_recycle
            )
            assert abs(total - 1.0) < 1e-10


class TestEntryAndPolarization:
    def test_bad_entry_rejected(self):
        with pytest.raises(ValueError, match="mirror-side"):
            single_pass(bell_psi_plus(), entry=(Port.LOWER, Direction.BACKWARD))

    def test_backward_entry_swaps_detector_port(self):
        ions = balanced_product(0.7)
        forward = single_pass(ions)
        backward = single_pass(ions, entry=ENTRY_UPPER_BACKWARD)
        assert backward.p_detect_upper == pytest.approx(forward.p_detect_lower, abs=1e-12)
        assert backward.p_detect_lower == pytest.approx(forward.p_detect_upper, abs=1e-12)
        assert backward.post_detect_upper.fidelity(bell_psi_minus()) == pytest.approx(
            forward.post_detect_lower.fidelity(bell_psi_minus()), abs=1e-12
        )

    def test_sigma_minus_swaps_roles(self):
        ions = balanced_product(0.7)
        result = single_pass(ions, photon_pol=Polarization.SIGMA_MINUS)
        # sigma- couples the m- populations: scatter weights follow 1 - a2
        assert result.p_scatter_u == pytest.approx(0.5 * 0.3, abs=1e-12)
        assert result.p_scatter_l == pytest.approx(0.5 * 0.3, abs=1e-12)
        assert result.p_detect_lower == pytest.approx(0.5 * 0.7 * 0.3, abs=1e-12)
        post = result.post_detect_upper
        # the persistent component is now |m+,m+>
        assert abs(post.c_pp) > 0.0
        assert post.c_mm == 0j

    def test_enclosed_moves_upper_mass_to_recycle(self):
        ions = balanced_product(0.7)
        plain = single_pass(ions)
        enclosed = single_pass(ions, enclosed=True)
        assert enclosed.p_recycle == pytest.approx(plain.p_detect_upper, abs=1e-15)
        assert enclosed.p_detect_upper == 0.0
        assert enclosed.post_recycle == plain.post_detect_upper


class TestRunProduct:
    def test_balanced_half_half(self):
        run = run_product(SQRT_HALF, SQRT_HALF, SQRT_HALF, SQRT_HALF)
        assert run.balanced
        assert run.result.p_detect_lower == pytest.approx(0.125, abs=1e-12)
        assert run.fidelity_vs_psi_minus == pytest.approx(1.0, abs=1e-12)

    def test_opposite_poles(self):
        run = run_product(1.0, 0.0, 0.0, 1.0)
        assert not run.balanced
        assert run.result.p_detect_lower == pytest.approx(0.25, abs=1e-12)
        post = run.result.post_detect_lower
        assert abs(post.c_pm) == pytest.approx(1.0, abs=1e-12)
        assert run.fidelity_vs_psi_minus == pytest.approx(0.5, abs=1e-12)

    def test_both_plus_always_scatters(self):
        run = run_product(1.0, 0.0, 1.0, 0.0)
        assert run.result.p_scatter_u + run.result.p_scatter_l == pytest.approx(1.0, abs=1e-12)
        assert run.result.p_detect_upper == pytest.approx(0.0, abs=1e-15)
        assert run.result.p_detect_lower == pytest.approx(0.0, abs=1e-15)

    def test_unnormalized_inputs_rejected(self):
        with pytest.raises(ValueError, match="normalized"):
            run_product(1.0, 1.0, SQRT_HALF, SQRT_HALF)

    def test_balanced_moduli_with_phases_still_balanced(self):
        phase = cmath.exp(0.9j)
        run = run_product(SQRT_HALF * phase, SQRT_HALF, SQRT_HALF, SQRT_HALF)
        assert run.balanced
        # equal moduli guarantee maximal entanglement, not this particular ray
        assert run.fidelity_vs_psi_minus == pytest.approx(math.cos(0.45) ** 2, abs=1e-12)


class TestRunMixed:
    def test_success_probability_is_quarter_fidelity(self):
        run = run_mixed(0.7)
        assert run.p_detect_lower == pytest.approx(0.175, abs=1e-12)
        target = ion_pair_pure_state(bell_psi_minus())
        assert ion_fidelity(run.post_detect_lower, target) == pytest.approx(1.0, abs=1e-12)

    def test_pure_input_limit(self):
        assert run_mixed(1.0).p_detect_lower == pytest.approx(0.25, abs=1e-12)
        assert run_mixed(0.0).post_detect_lower is None

    def test_upper_branch_fidelity_degrades(self):
        for fidelity_in in (0.2, 0.5, 0.7, 0.9):
            run = run_mixed(fidelity_in)
            target = ion_pair_pure_state(bell_psi_plus())
            conditioned = ion_fidelity(run.post_detect_upper, target)
            expected = fidelity_in / (2.0 - fidelity_in)
            assert conditioned == pytest.approx(expected, abs=1e-12)
            assert conditioned < fidelity_in

    def test_upper_branch_oracle_bookkeeping(self):
        # independent weight propagation: Psi+ hits the upper detector with
        # conditional probability 1/4 keeping Psi+, Phi+ with 1/2 leaving
        # |m-,m->; condition and renormalize
        fidelity_in = 0.7
        w_good = fidelity_in * 0.25
        w_bad = (1.0 - fidelity_in) * 0.5
        expected = w_good / (w_good + w_bad)
        run = run_mixed(fidelity_in)
        target = ion_pair_pure_state(bell_psi_plus())
        assert ion_fidelity(run.post_detect_upper, target) == pytest.approx(expected, abs=1e-12)

    def test_fidelity_bounds_enforced(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            run_mixed(1.4)

    def test_pooled_branches_complete(self):
        for fidelity_in in (0.0, 0.3, 0.5, 0.8, 1.0):
            run = run_mixed(fidelity_in)
            total = (
                run.p_scatter_u
                + run.p_scatter_l
                + run.p_detect_upper
                + run.p_detect_lower
                + run.p_recycle
            )
            assert total == pytest.approx(1.0, abs=1e-10)
            if run.post_detect_upper is not None:
                weights = [w for w, _ in run.post_detect_upper.components]
                assert sum(weights) == pytest.approx(1.0, abs=1e-10)
