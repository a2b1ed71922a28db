"""Qubit algebra: closed-form spectral operations against generic oracles."""

import numpy as np
import pytest

from seqrac.qubit import (
    ID2,
    Observable,
    QubitState,
    SIGMA_X,
    SIGMA_Z,
    as_bloch,
    bloch_to_state,
    fidelity,
    hermitian_eigenvalues,
    maximally_mixed,
    psd_sqrt,
    uhlmann_fidelity,
)


def random_state(rng, pure=False):
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    if not pure:
        v *= rng.uniform() ** (1.0 / 3.0)
    return bloch_to_state(v)


class TestBlochConversion:
    def test_origin_is_maximally_mixed(self):
        state = bloch_to_state((0.0, 0.0, 0.0))
        assert np.allclose(state.matrix, 0.5 * ID2)
        assert state.purity() == pytest.approx(0.5)

    def test_north_pole_is_ground_state(self):
        state = bloch_to_state((0.0, 0.0, 1.0))
        assert np.allclose(state.matrix, np.diag([1.0, 0.0]))

    def test_diagonal_direction_is_rank_one(self):
        # independent oracle: generic eigensolver on the constructed matrix
        state = bloch_to_state(np.ones(3) / np.sqrt(3.0))
        eigs = np.sort(np.linalg.eigvalsh(state.matrix))
        assert np.allclose(eigs, [0.0, 1.0], atol=1e-12)
        assert state.matrix.trace().real == pytest.approx(1.0, abs=1e-12)
        assert state.purity() == pytest.approx(1.0, abs=1e-12)

    def test_round_trip_on_unit_ball(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            v = rng.normal(size=3)
            v *= rng.uniform() / max(np.linalg.norm(v), 1e-12)
            assert np.max(np.abs(bloch_to_state(v).bloch - v)) < 1e-12

    def test_clamp_band_snaps_to_sphere(self):
        v = np.array([1.0 + 5e-10, 0.0, 0.0])
        state = bloch_to_state(v)
        assert np.linalg.norm(state.bloch) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_norm_above_clamp_band(self):
        with pytest.raises(ValueError):
            bloch_to_state((1.0 + 1e-8, 0.0, 0.0))

    def test_rejects_invalid_density_matrices(self):
        with pytest.raises(ValueError):
            QubitState(np.diag([0.7, 0.7]))  # trace 1.4
        with pytest.raises(ValueError):
            QubitState(np.array([[0.5, 0.3], [0.1, 0.5]]))  # not Hermitian
        with pytest.raises(ValueError):
            QubitState(np.diag([1.5, -0.5]))  # not PSD


class TestPsdSqrt:
    def test_identity(self):
        assert np.allclose(psd_sqrt(ID2), ID2)

    def test_diagonal(self):
        assert np.allclose(psd_sqrt(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]))

    def test_unsharp_effect_closed_form(self):
        # (I + 0.6 sigma_z)/2 has spectrum {0.8, 0.2} on the z projectors
        effect = 0.5 * (ID2 + 0.6 * SIGMA_Z)
        p_plus = np.diag([1.0, 0.0])
        p_minus = np.diag([0.0, 1.0])
        expected = np.sqrt(0.8) * p_plus + np.sqrt(0.2) * p_minus
        assert np.max(np.abs(psd_sqrt(effect) - expected)) < 1e-12

    def test_square_reproduces_input(self):
        rng = np.random.default_rng(5)
        for _ in range(500):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            op = a @ a.conj().T  # PSD by construction
            root = psd_sqrt(op)
            assert np.max(np.abs(root @ root - op)) < 1e-10
            assert np.max(np.abs(root - root.conj().T)) < 1e-10

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(ValueError):
            psd_sqrt(np.diag([1.0, -1e-6]))

    def test_eigenvalues_match_generic_solver(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            h = a + a.conj().T
            low, high = hermitian_eigenvalues(h)
            ref = np.linalg.eigvalsh(h)
            assert np.allclose([low, high], ref, atol=1e-12)


class TestFidelity:
    def test_self_fidelity_is_one(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            state = random_state(rng)
            assert fidelity(state, state) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_pure_states(self):
        zero = bloch_to_state((0, 0, 1))
        one = bloch_to_state((0, 0, -1))
        assert fidelity(zero, one) == pytest.approx(0.0, abs=1e-12)

    def test_pure_against_maximally_mixed(self):
        # Tr(rho I/2) = 1/2 and det(pure) = 0, so the formula gives 1/2
        assert fidelity(bloch_to_state((0, 0, 1)), maximally_mixed()) == pytest.approx(
            0.5
        )

    def test_symmetry(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            a, b = random_state(rng), random_state(rng)
            assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-12)

    def test_agrees_with_uhlmann_form(self):
        rng = np.random.default_rng(9)
        for _ in range(1000):
            a, b = random_state(rng), random_state(rng)
            assert fidelity(a, b) == pytest.approx(uhlmann_fidelity(a, b), abs=1e-8)


class TestObservable:
    def test_sharpness_is_bloch_norm(self):
        obs = Observable(bloch=np.array([0.0, 0.0, 0.6]))
        assert obs.sharpness == pytest.approx(0.6)

    def test_effects_sum_to_identity(self):
        obs = Observable(bloch=np.array([0.3, 0.0, 0.4]), bias=0.2)
        assert np.allclose(obs.effect(0) + obs.effect(1), ID2)

    def test_sharp_effects_are_projectors(self):
        obs = Observable(bloch=np.array([1.0, 0.0, 0.0]))
        e0 = obs.effect(0)
        assert np.allclose(e0 @ e0, e0)
        assert np.allclose(e0, 0.5 * (ID2 + SIGMA_X))

    def test_rejects_bias_outside_povm_condition(self):
        with pytest.raises(ValueError):
            Observable(bloch=np.array([0.0, 0.0, 0.8]), bias=0.3)

    def test_as_bloch_validation(self):
        assert np.allclose(as_bloch((0.1, 0.2, 0.3)), [0.1, 0.2, 0.3])
        with pytest.raises(ValueError):
            as_bloch((2.0, 0.0, 0.0))
