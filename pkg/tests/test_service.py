"""HTTP service contract: status codes, canonical bodies, caching."""

import json
import math

import pytest
from fastapi.testclient import TestClient

from fracdyn.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_classify_ok(client):
    r = client.get("/classify", params={"alpha": 0.5, "re": -1.0})
    assert r.status_code == 200
    data = r.json()
    assert data["region"] == "III"
    assert data["stability"] == "asymptotically_stable"
    assert data["boundary_angle"] == pytest.approx(0.25 * math.pi)


def test_alpha_validation_422(client):
    assert client.get("/classify", params={"alpha": 1.2, "re": 1.0}).status_code == 422
    assert client.get("/trajectory", params={"alpha": 0.0}).status_code == 422


def test_domain_error_400(client):
    r = client.get("/trajectory", params={"alpha": 0.5, "r": -1.0, "tmax": 20})
    assert r.status_code == 400
    data = r.json()
    assert data["error"] == "DomainError"
    assert "detail" in data


def test_trajectory_byte_identical(client):
    params = {"alpha": 0.5, "epsilon": 0.1, "tmax": 30.0, "n": 200}
    a = client.get("/trajectory", params=params)
    b = client.get("/trajectory", params=params)
    assert a.status_code == 200
    assert a.content == b.content
    doc = a.json()
    assert doc["schema_version"] == "1.0"
    assert len(doc["samples"]) == 200
    assert doc["eigenvalue"]["epsilon"] == 0.1


def test_trajectory_canonical_json(client):
    r = client.get("/trajectory", params={"alpha": 0.5, "tmax": 10.0, "n": 10})
    # compact separators, sorted keys
    text = r.content.decode()
    assert ": " not in text
    data = json.loads(text)
    keys = list(data.keys())
    assert keys == sorted(keys)


def test_singularities_regime(client):
    r = client.get(
        "/singularities", params={"alpha": 0.1, "epsilon": 0.025, "tmax": 500.0}
    )
    assert r.status_code == 200
    doc = r.json()
    assert doc["samples"] == []
    kinds = [p["kind"] for p in doc["singular_points"]]
    assert kinds.count("double") >= 1


def test_region2_default(client):
    r = client.get("/region2", params={"alpha": 0.5})
    assert r.status_code == 200
    info = r.json()["region"]
    assert info["delta1"] == pytest.approx(0.0057)
    assert info["delta2"] == pytest.approx(0.341602)
    assert info["interval"][0] == pytest.approx(0.25 * math.pi - 0.0057)


def test_cors_header(client):
    r = client.get("/health", headers={"Origin": "http://localhost:5173"})
    assert r.headers.get("access-control-allow-origin") == "*"
