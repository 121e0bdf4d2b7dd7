"""HTTP interface: exercise listing, checking, hints and generation."""
from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from proofcheck.http_api import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_list_exercises(client):
    exercises = client.get("/exercises").json()
    ids = [e["id"] for e in exercises]
    assert "geo-perp-transfer" in ids
    assert all({"id", "nat", "field", "tier", "goal_check"} <= set(e)
               for e in exercises)


def test_get_single_exercise(client):
    ex = client.get("/exercises/geo-perp-transfer").json()
    assert ex["id"] == "geo-perp-transfer"
    assert ex["form"]
    assert ex["sample_proof"]


def test_unknown_exercise_is_404(client):
    assert client.get("/exercises/no-such-exercise").status_code == 404
    assert client.get("/exercises/no-such-exercise/hints").status_code == 404


def test_check_golden_solution(client):
    ex = client.get("/exercises/nt-product-successor-even").json()
    resp = client.post("/check", json={
        "exercise_id": ex["id"], "text": ex["sample_proof"]})
    assert resp.status_code == 200
    report = resp.json()
    assert report["summary"]["all_verified"] is True
    assert report["goal_status"] == "reached"
    assert all(l["verdict"] in ("verified", "skipped")
               for l in report["lines"])


def test_check_flawed_text(client):
    resp = client.post("/check", json={
        "exercise_id": "nt-product-successor-even",
        "text": "We show: even(n*(n+1)).\n\nProof:\n"
                "Let n be a natural number.\nThen n*(n+1) is odd.\nqed\n"})
    report = resp.json()
    assert report["summary"]["all_verified"] is False
    failing = [l for l in report["lines"]
               if l["verdict"] in ("not-verified", "fallacy")]
    assert len(failing) == 1
    assert failing[0]["messages"]


def test_check_options_pass_through(client):
    ex = client.get("/exercises/nt-product-successor-even").json()
    resp = client.post("/check", json={
        "exercise_id": ex["id"], "text": ex["sample_proof"],
        "goal_check": False})
    assert resp.json()["goal_status"] == "bypassed"


def test_hints_endpoint(client):
    out = client.get("/exercises/nt-product-successor-even/hints").json()
    assert out[-1]["kind"] == "goal-form"
    assert all(h["text"] for h in out)


def test_generate_endpoint_is_deterministic(client):
    a = client.post("/generate", json={"family": "parity-cases", "seed": 3})
    b = client.post("/generate", json={"family": "parity-cases", "seed": 3})
    assert a.status_code == 200
    assert a.json() == b.json()
    assert a.json()["id"] == "gen-parity-cases-3"


def test_generate_unknown_family_is_400(client):
    resp = client.post("/generate", json={"family": "bogus"})
    assert resp.status_code == 400


def test_families_endpoint(client):
    fams = client.get("/families").json()
    assert "parity-direct" in fams and "induction-inequality" in fams
