"""Linear-inversion detector tomography and the worst-case error analysis."""

import numpy as np
import pytest

from seqrac.qubit import Observable
from seqrac.tomography import (
    TETRAHEDRON_ROWS,
    TomographyScenario,
    invert,
    sharpness_error_curve,
    tetrahedron_design,
    worst_case_fidelity,
)


def scenario(eta: float, epsilon: float) -> TomographyScenario:
    return TomographyScenario(
        observable=Observable(bloch=np.array([0.0, 0.0, eta])), epsilon=epsilon
    )


def average_target_fidelity(lab: np.ndarray) -> float:
    return float((1.0 + (TETRAHEDRON_ROWS * lab).sum(axis=1)).mean() / 2.0)


class TestDesign:
    def test_rows_are_unit(self):
        design = tetrahedron_design()
        assert np.allclose(np.linalg.norm(design.a, axis=1), 1.0, atol=1e-12)

    def test_frame_condition(self):
        design = tetrahedron_design()
        assert np.allclose(design.a.T @ design.a, (4.0 / 3.0) * np.eye(3), atol=1e-12)

    def test_states_are_pure(self):
        for state in tetrahedron_design().states():
            assert state.purity() == pytest.approx(1.0, abs=1e-12)


class TestInvert:
    def test_recovers_z_observable(self):
        # hand-computed: p = (1,-1,-1,1)/sqrt(3) and (3/4) A^T p = z
        design = tetrahedron_design()
        p = np.array([1.0, -1.0, -1.0, 1.0]) / np.sqrt(3.0)
        assert np.allclose(invert(design, p), [0.0, 0.0, 1.0], atol=1e-12)

    def test_null_observable(self):
        assert np.allclose(invert(tetrahedron_design(), np.zeros(4)), 0.0)

    def test_renormalizes_outside_ball(self):
        design = tetrahedron_design()
        p = 1.2 * np.array([1.0, -1.0, -1.0, 1.0]) / np.sqrt(3.0)
        n = invert(design, p)
        assert np.linalg.norm(n) == pytest.approx(1.0, abs=1e-12)

    def test_exact_on_ideal_probes_for_random_observables(self):
        design = tetrahedron_design()
        rng = np.random.default_rng(41)
        for _ in range(1000):
            n = rng.normal(size=3)
            n *= rng.uniform() / np.linalg.norm(n)
            p = design.a @ n
            assert np.max(np.abs(invert(design, p) - n)) < 1e-12

    def test_rejects_out_of_range_expectations(self):
        with pytest.raises(ValueError):
            invert(tetrahedron_design(), np.array([1.5, 0.0, 0.0, 0.0]))


class TestScenarioValidation:
    def test_rejects_biased_observable(self):
        with pytest.raises(ValueError):
            TomographyScenario(
                observable=Observable(bloch=np.array([0.0, 0.0, 0.5]), bias=0.2),
                epsilon=0.01,
            )

    def test_rejects_bad_epsilon(self):
        with pytest.raises(ValueError):
            scenario(0.5, -0.1)
        with pytest.raises(ValueError):
            scenario(0.5, 1.5)


class TestWorstCase:
    def test_zero_error_pins_everything(self):
        result = worst_case_fidelity(scenario(0.9, 0.0))
        assert result.f_min == 1.0
        assert result.eta_error == 0.0
        assert np.allclose(result.lab_bloch(), TETRAHEDRON_ROWS, atol=1e-12)

    def test_constraint_active_at_minimum(self):
        for eps in (0.005, 0.05, 0.2):
            result = worst_case_fidelity(scenario(0.9, eps), restarts=16, seed=3)
            assert average_target_fidelity(result.lab_bloch()) == pytest.approx(
                1.0 - eps, abs=1e-6
            )

    def test_fidelity_never_exceeds_ideal(self):
        result = worst_case_fidelity(scenario(0.7, 0.02), restarts=16, seed=3)
        assert result.f_min <= 1.0

    def test_deterministic_given_seed(self):
        a = worst_case_fidelity(scenario(0.8, 0.01), restarts=8, seed=5)
        b = worst_case_fidelity(scenario(0.8, 0.01), restarts=8, seed=5)
        assert a.f_min == b.f_min
        assert np.array_equal(a.lab_bloch(), b.lab_bloch())

    def test_near_projective_error_band(self):
        # a 1% preparation error admits a 20-35% sharpness misestimate
        result = worst_case_fidelity(scenario(0.99, 0.01), restarts=24, seed=7)
        assert 0.20 <= result.eta_error <= 0.35

    def test_monotone_in_epsilon_with_fixed_seed(self):
        values = [
            worst_case_fidelity(scenario(0.9, eps), restarts=12, seed=11).f_min
            for eps in (0.0, 0.01, 0.05, 0.1)
        ]
        assert all(b <= a + 1e-6 for a, b in zip(values, values[1:]))


class TestCurve:
    def test_zero_error_grid(self):
        rows = sharpness_error_curve(0.0, [0.0, 0.5, 1.0])
        assert all(row[2] == 1.0 for row in rows)
        assert all(row[4] == 0.0 for row in rows)

    def test_single_point_matches_direct_call(self):
        rows = sharpness_error_curve(0.01, [0.5], restarts=8, seed=9)
        direct = worst_case_fidelity(scenario(0.5, 0.01), restarts=8, seed=9)
        assert rows[0][2] == direct.f_min
        assert rows[0][4] == direct.eta_error

    def test_row_shape(self):
        rows = sharpness_error_curve(0.02, [0.3, 0.6], restarts=4, seed=2)
        assert len(rows) == 2
        eta_lab, eps, f_min, eta_est, eta_error = rows[0]
        assert eta_lab == 0.3
        assert eps == 0.02
        assert 0.0 <= f_min <= 1.0
        assert eta_error == pytest.approx(abs(eta_est - 0.3))
