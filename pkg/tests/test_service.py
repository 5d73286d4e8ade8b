"""HTTP layer: endpoint routing, status-code mapping, and body shapes."""

import asyncio
import math

import httpx
import pytest

from resonax import shear_pair
from resonax.service import create_app

Z1 = [{"exp": [1, 0], "re": "1", "im": "0"}]
ONE = [{"exp": [0, 0], "re": "1", "im": "0"}]
BALL2 = {"kind": "unit-ball", "n": 2}
DISC2 = {"kind": "polydisc", "radii": [1.0, 1.0]}


def get(path: str) -> httpx.Response:
    async def _go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://service") as client:
            return await client.get(path)

    return asyncio.run(_go())


def test_health():
    response = get("/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert "version" in body


class TestCheck:
    def test_admissible(self, service):
        response = service.post("/check", {"rho": [[1], [2]]})
        assert response.status_code == 200
        body = response.json()
        assert body["verdict"] == "admissible"
        assert body["pass"] is True
        assert body["positive_functional"] == ["1"]
        assert body["rows"] == [[1], [2]]
        assert "witness" not in body

    def test_inadmissible_is_still_200(self, service):
        response = service.post("/check", {"rho": [[1], [-1]]})
        assert response.status_code == 200
        body = response.json()
        assert body["verdict"] == "inadmissible"
        assert body["pass"] is False
        assert body["witness"] == [1, 1]

    def test_duplicate_rows_warn(self, service):
        body = service.post("/check", {"rho": [[1], [1]]}).json()
        assert body["verdict"] == "admissible"
        assert body.get("warnings")

    def test_malformed_matrix_is_422(self, service):
        response = service.post("/check", {"rho": [[1, "x"]]})
        assert response.status_code == 422
        body = response.json()
        assert body["error"] == "InvalidInputError"

    def test_missing_body_is_422(self, service):
        response = service.post("/check", {})
        assert response.status_code == 422


class TestWeightSpace:
    def test_known_space(self, service):
        response = service.post("/weight-space", {"rho": [[1], [2]], "character": [4]})
        assert response.status_code == 200
        assert response.json() == {
            "character": [4],
            "basis": [[0, 2], [2, 1], [4, 0]],
            "dimension": 3,
            "d": 2,
            "D": 4,
        }

    def test_empty_space(self, service):
        response = service.post(
            "/weight-space", {"rho": [[1, 0], [0, 1]], "character": [-1, 0]}
        )
        assert response.status_code == 200
        assert response.json() == {
            "character": [-1, 0],
            "dimension": 0,
            "basis": [],
            "d": None,
            "D": None,
        }

    def test_inadmissible_is_409_with_certificate(self, service):
        response = service.post("/weight-space", {"rho": [[1], [-1]], "character": [0]})
        assert response.status_code == 409
        body = response.json()
        assert body["error"] == "inadmissible-action"
        assert body["certificate"]["verdict"] == "inadmissible"
        assert body["certificate"]["witness"] == [1, 1]


class TestResonance:
    def test_resonance(self, service):
        response = service.post("/resonance", {"rho": [[1], [2]]})
        assert response.status_code == 200
        body = response.json()
        assert body["orders"] == [1, 2]
        assert body["order"] == 2
        assert body["sets"] == [[[1, 0]], [[0, 1], [2, 0]]]

    def test_quasi_resonance(self, service):
        response = service.post("/quasi-resonance", {"rho": [[1], [2]], "rhop": [[1], [2]]})
        assert response.status_code == 200
        body = response.json()
        assert body["orders"] == [2, 4]
        assert body["order"] == 4
        assert body["degree_bounds"] == [2, 4]

    def test_inadmissible_source_is_409(self, service):
        response = service.post("/quasi-resonance", {"rho": [[1], [-1]], "rhop": [[1], [2]]})
        assert response.status_code == 409


class TestBound:
    def test_quasi_circular(self, service):
        response = service.post("/bound", {"m": [2, 3]})
        assert response.status_code == 200
        body = response.json()
        assert body["kind"] == "quasi-circular-ratio"
        assert body["exact"] == 1
        assert body["coarse"] == "9/4"
        assert body["pass"] is True

    def test_quasi_circular_pair(self, service):
        body = service.post("/bound", {"m": [1, 2], "mp": [1, 2]}).json()
        assert body["exact"] == 4
        assert body["coarse"] == "4"

    def test_row_sum(self, service):
        response = service.post("/bound", {"rho": [[1], [2]]})
        assert response.status_code == 200
        body = response.json()
        assert body["kind"] == "row-sum"
        assert body["exact"] == [2, 4]
        assert body["coarse"] == ["2", "4"]
        assert body["pass"] is True

    @pytest.mark.parametrize("payload", [{}, {"m": [1, 2], "rho": [[1]]}])
    def test_needs_exactly_one_mode(self, service, payload):
        response = service.post("/bound", payload)
        assert response.status_code == 422
        assert "exactly one" in response.json()["detail"]


class TestVerifyMap:
    def test_compliant_shear(self, service):
        forward, _ = shear_pair(2)
        response = service.post(
            "/verify-map",
            {"map": forward.to_json(), "rho": [[1], [2]], "rhop": [[1], [2]]},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["pass"] is True
        assert all(c["degree_ok"] and not c["offending"] for c in body["components"])

    def test_off_spectrum_term_fails(self, service):
        # first component z1 + z2^2 carries character (2), outside K_1 for circular weights
        skew = [
            [
                {"exp": [1, 0], "re": "1", "im": "0"},
                {"exp": [0, 2], "re": "1", "im": "0"},
            ],
            [{"exp": [0, 1], "re": "1", "im": "0"}],
        ]
        response = service.post(
            "/verify-map", {"map": skew, "rho": [[1], [1]], "rhop": [[1], [1]]}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["pass"] is False
        assert any(c["offending"] for c in body["components"])

    def test_inadmissible_target_is_409(self, service):
        forward, _ = shear_pair(2)
        response = service.post(
            "/verify-map",
            {"map": forward.to_json(), "rho": [[1], [2]], "rhop": [[1], [-1]]},
        )
        assert response.status_code == 409


class TestMonteCarlo:
    def test_inner_product(self, service):
        response = service.post(
            "/mc/inner-product",
            {"domain": DISC2, "p": Z1, "q": Z1, "seed": 5, "count": 20_000},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["value"]["re"] == pytest.approx(math.pi**2 / 2, rel=0.05)
        assert body["seed"] == 5
        assert body["samples"] == 20_000

    def test_count_must_be_positive(self, service):
        response = service.post(
            "/mc/inner-product", {"domain": DISC2, "p": Z1, "q": Z1, "seed": 5, "count": 0}
        )
        assert response.status_code == 422

    def test_orthogonality(self, service):
        response = service.post(
            "/mc/orthogonality",
            {"domain": BALL2, "rho": [[1], [1]], "max_degree": 2, "seed": 4, "count": 30_000},
        )
        assert response.status_code == 200
        assert response.json()["pass"] is True

    def test_invariance(self, service):
        response = service.post(
            "/mc/invariance",
            {"domain": BALL2, "rho": [[1, 0], [0, 1]], "seed": 8, "count": 10_000},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["pass"] is True
        assert body["violations"] == 0

    def test_change_of_variables_shear_shorthand(self, service):
        response = service.post(
            "/mc/change-of-variables",
            {"domain": BALL2, "shear": 2, "psi": ONE, "phi": ONE, "seed": 3, "count": 20_000},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["pass"] is True
        assert body["tolerance"] >= 0.0

    def test_change_of_variables_requires_a_map(self, service):
        response = service.post(
            "/mc/change-of-variables",
            {"domain": BALL2, "psi": ONE, "phi": ONE, "seed": 3, "count": 1000},
        )
        assert response.status_code == 422

    def test_change_of_variables_requires_inverse(self, service):
        forward, _ = shear_pair(2)
        response = service.post(
            "/mc/change-of-variables",
            {
                "domain": BALL2,
                "map": forward.to_json(),
                "psi": ONE,
                "phi": ONE,
                "seed": 3,
                "count": 1000,
            },
        )
        assert response.status_code == 422
        assert response.json()["error"] == "MissingInverseError"

    def test_unknown_domain_kind_is_422(self, service):
        response = service.post(
            "/mc/inner-product",
            {"domain": {"kind": "cube"}, "p": Z1, "q": Z1, "seed": 1, "count": 100},
        )
        assert response.status_code == 422


class TestReproduce:
    def test_single_criterion(self, service):
        response = service.post("/reproduce", {"criteria": [1]})
        assert response.status_code == 200
        body = response.json()
        assert body["pass"] is True
        assert len(body["results"]) == 1
        assert body["results"][0]["criterion"] == 1
        assert "criterion 1" in body["table"]

    def test_unknown_criterion_is_422(self, service):
        response = service.post("/reproduce", {"criteria": [99]})
        assert response.status_code == 422
        assert "unknown criterion" in response.json()["detail"]
