"""Tests for the HTTP API."""

import pytest
from fastapi.testclient import TestClient

from bernoulli_audit.service import create_app
from bernoulli_audit.store import AuditStore

SEED = "12345678901234567890"

CONFIG = {
    "audit_id": "city-2026",
    "alpha": 0.05,
    "contests": [
        {
            "contest_id": "mayor",
            "candidates": ["alice", "bob"],
            "winners": ["alice"],
            "reported": {"alice": 900, "bob": 100},
            "n_total_reported": 1000,
        }
    ],
    "round_rates": [0.1],
}


@pytest.fixture
def client(tmp_path):
    app = create_app(AuditStore(tmp_path / "audits"))
    with TestClient(app) as test_client:
        yield test_client


def create_audit(client) -> None:
    response = client.post("/audits", json=CONFIG)
    assert response.status_code == 201, response.text
    assert response.json()["audit_id"] == "city-2026"


def test_create_and_duplicate(client):
    create_audit(client)
    duplicate = client.post("/audits", json=CONFIG)
    assert duplicate.status_code == 409
    body = duplicate.json()
    assert set(body) == {"code", "message", "detail"}
    assert body["code"] == "duplicate_audit"


def test_invalid_config_shape(client):
    bad = dict(CONFIG, audit_id="bad", alpha=0.0)
    response = client.post("/audits", json=bad)
    assert response.status_code == 400
    assert response.json()["code"] == "invalid_config"


def test_bundle_and_sequence_flow(client):
    create_audit(client)
    added = client.post(
        "/audits/city-2026/bundles",
        json={"bundle_id": "b1", "site_id": "s1", "seed": SEED},
    )
    assert added.status_code == 201

    first = client.get("/audits/city-2026/bundles/b1/sequence?round=0&size=100")
    assert first.status_code == 200
    payload = first.json()
    assert payload["positions"] == [1, 13, 17, 23, 28, 29, 39, 52, 84, 94, 95, 96]

    again = client.get("/audits/city-2026/bundles/b1/sequence?round=0")
    assert again.json()["positions"] == payload["positions"]

    missing = client.get("/audits/city-2026/bundles/nope/sequence?round=0&size=10")
    assert missing.status_code == 404
    assert missing.json()["code"] == "unknown_bundle"


def test_full_api_pipeline(client):
    create_audit(client)
    client.post(
        "/audits/city-2026/bundles",
        json={"bundle_id": "b1", "site_id": "s1", "seed": SEED, "count_observed": 1000},
    )
    sequence = client.get("/audits/city-2026/bundles/b1/sequence?round=0").json()
    records = [
        {
            "bundle_id": "b1",
            "position": p,
            "round": 0,
            "contest_id": "mayor",
            "interpretation": "alice",
        }
        for p in sequence["positions"]
    ]
    ingest = client.post("/audits/city-2026/interpretations", json={"records": records})
    assert ingest.status_code == 200
    assert ingest.json() == {"applied": len(records), "rejected": []}

    # duplicate submission rejects every record but stays 200
    repeat = client.post("/audits/city-2026/interpretations", json={"records": records})
    assert repeat.json()["applied"] == 0
    assert len(repeat.json()["rejected"]) == len(records)

    report = client.get("/audits/city-2026/risk").json()
    contest = report["contests"][0]
    assert contest["status"] == "CONFIRMED"
    assert contest["risk"] <= 0.05
    assert set(contest["pairs"][0]) == {
        "pair",
        "x_star",
        "log_p",
        "p_value",
        "anomaly",
        "decision",
    }

    escalate = client.post("/audits/city-2026/escalate", json={"p_next": 0.05})
    assert escalate.json()["status"] == "noop"


def test_escalate_issues_new_round(client):
    create_audit(client)
    client.post(
        "/audits/city-2026/bundles",
        json={"bundle_id": "b1", "site_id": "s1", "seed": SEED, "count_observed": 500},
    )
    client.get("/audits/city-2026/bundles/b1/sequence?round=0")
    result = client.post("/audits/city-2026/escalate", json={"p_next": 0.2}).json()
    assert result["status"] == "escalated"
    assert result["round"] == 1
    assert result["bundles"][0]["bundle_id"] == "b1"

    follow_up = client.get("/audits/city-2026/bundles/b1/sequence?round=1").json()
    assert follow_up["positions"] == result["bundles"][0]["positions"]


def test_risk_before_any_round_is_an_error(client):
    create_audit(client)
    response = client.get("/audits/city-2026/risk")
    assert response.status_code == 400
    assert response.json()["code"] == "no_rounds"


def test_unknown_audit_is_404(client):
    response = client.get("/audits/ghost/risk")
    assert response.status_code == 404
    assert response.json()["code"] == "unknown_audit"


def test_state_persists_across_app_instances(tmp_path):
    store_dir = tmp_path / "audits"
    with TestClient(create_app(AuditStore(store_dir))) as client:
        create_audit(client)
        client.post(
            "/audits/city-2026/bundles",
            json={"bundle_id": "b1", "site_id": "s1", "seed": SEED},
        )
        client.get("/audits/city-2026/bundles/b1/sequence?round=0&size=100")
    with TestClient(create_app(AuditStore(store_dir))) as client:
        sequence = client.get("/audits/city-2026/bundles/b1/sequence?round=0").json()
        assert sequence["positions"][0] == 1
