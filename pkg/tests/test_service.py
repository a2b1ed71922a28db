"""HTTP service: endpoints mirror the in-process handlers exactly."""

import pytest
from fastapi.testclient import TestClient

from seqrac.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}


class TestCertifyEndpoint:
    def test_reference_row(self, client):
        response = client.post(
            "/certify",
            json={"w_ab": 0.799, "w_ac": 0.765, "sigma_ab": 0.002, "sigma_ac": 0.002},
        )
        assert response.status_code == 200
        payload = response.json()
        assert payload["interval"]["eta_min"] == pytest.approx(0.845700, abs=1e-6)
        assert payload["interval"]["eta_max"] == pytest.approx(0.866564, abs=1e-6)
        assert payload["incompatibility"]["assumptions"] == [
            "unbiased_bob",
            "eta0_eq_eta1",
        ]

    def test_validation_error(self, client):
        response = client.post("/certify", json={"w_ab": 1.4, "w_ac": 0.7})
        assert response.status_code == 422

    def test_inverted_interval_flagged(self, client):
        response = client.post("/certify", json={"w_ab": 0.853, "w_ac": 0.688})
        payload = response.json()
        assert payload["interval"]["consistent"] is False
        assert payload["warnings"]


class TestSweepEndpoint:
    def test_exact_rows(self, client):
        response = client.post("/sweep", json={"thetas": [0.0, 22.5]})
        assert response.status_code == 200
        rows = response.json()["rows"]
        assert rows[0]["w_ab"] == pytest.approx(0.853553391, abs=1e-9)
        assert rows[1]["d_bob"] == 0.0

    def test_bad_angle_rejected(self, client):
        response = client.post("/sweep", json={"thetas": [30.0]})
        assert response.status_code == 422


class TestSimulateEndpoint:
    def test_counts_and_witnesses(self, client):
        body = {"eta": 0.848, "events_per_setting": 2000, "seed": 5}
        response = client.post("/simulate", json=body)
        assert response.status_code == 200
        payload = response.json()
        assert len(payload["counts"]) == 64
        assert payload["seed"] == 5
        again = client.post("/simulate", json=body)
        assert again.json() == payload

    def test_eta_and_theta_exclusive(self, client):
        response = client.post(
            "/simulate",
            json={"eta": 0.5, "theta_degrees": 8.0, "events_per_setting": 100},
        )
        assert response.status_code == 422


class TestIncompatEndpoint:
    def test_derives_interval_when_absent(self, client):
        response = client.post("/incompat", json={"w_ab": 0.799, "w_ac": 0.765})
        assert response.status_code == 200
        payload = response.json()
        assert payload["interval"]["eta_min"] == pytest.approx(0.845700, abs=1e-6)
        assert payload["incompatibility"]["d_bob"] == pytest.approx(
            8 * 0.799 - 6, abs=1e-9
        )

    def test_partial_interval_rejected(self, client):
        response = client.post(
            "/incompat", json={"w_ab": 0.8, "w_ac": 0.7, "eta_min": 0.5}
        )
        assert response.status_code == 422


class TestTomographyEndpoint:
    def test_zero_error_grid(self, client):
        response = client.post(
            "/tomo", json={"epsilon": 0.0, "eta_grid": [0.3, 0.9], "restarts": 2}
        )
        assert response.status_code == 200
        rows = response.json()["rows"]
        assert all(row["f_min"] == 1.0 for row in rows)
        assert all(row["eta_error"] == 0.0 for row in rows)
        # worst-case probe vectors ride along; at zero error they are ideal
        for row in rows:
            assert len(row["lab_bloch"]) == 4
            assert all(len(v) == 3 for v in row["lab_bloch"])


class TestProjectiveBoundEndpoint:
    def test_single_point(self, client):
        response = client.post("/projective-bound", json={"w_ab": 0.5})
        assert response.status_code == 200
        row = response.json()["rows"][0]
        assert row["w_ac_projective"] == pytest.approx(0.8535534, abs=1e-6)

    def test_curve_mode(self, client):
        response = client.post("/projective-bound", json={"points": 5})
        rows = response.json()["rows"]
        assert len(rows) == 5
        assert all(
            row["w_ac_projective"] <= row["w_ac_optimal"] + 1e-9 for row in rows
        )

    def test_requires_exactly_one_mode(self, client):
        response = client.post("/projective-bound", json={})
        assert response.status_code == 422
