"""HTTP service: sessions, feedback, elicitation, explanations."""

import json

import pytest
from fastapi.testclient import TestClient

from pskyline.service import MAX_INFERIOR_WIDTH, create_app

from conftest import CARS_CSV, CARS_SCHEMA_JSON


@pytest.fixture()
def client():
    return TestClient(create_app())


@pytest.fixture()
def dataset_id(client):
    res = client.post(
        "/datasets",
        json={"schema": json.loads(CARS_SCHEMA_JSON), "csv": CARS_CSV},
    )
    assert res.status_code == 201
    return res.json()["id"]


@pytest.fixture()
def session_id(client, dataset_id):
    res = client.post("/sessions", json={"dataset": dataset_id})
    assert res.status_code == 201
    return res.json()["id"]


def test_dataset_upload_and_skyline(client, dataset_id):
    res = client.get(f"/datasets/{dataset_id}/skyline")
    assert res.status_code == 200
    assert res.json()["ids"] == ["t1", "t2", "t3", "t4"]


def test_dataset_upload_rejects_bad_payloads(client):
    assert client.post("/datasets", json={"csv": CARS_CSV}).status_code == 400
    res = client.post(
        "/datasets",
        json={"schema": {"attributes": []}, "csv": CARS_CSV},
    )
    assert res.status_code == 400
    res2 = client.post(
        "/datasets",
        json={"schema": json.loads(CARS_SCHEMA_JSON), "csv": "id,nope\n1,2\n"},
    )
    assert res2.status_code == 400


def test_unknown_dataset_and_session_are_404(client):
    assert client.get("/datasets/d99/skyline").status_code == 404
    assert client.post("/sessions", json={"dataset": "d99"}).status_code == 404
    assert client.get("/sessions/s99/state").status_code == 404
    assert client.post("/sessions/s99/elicit").status_code == 404


def test_new_session_starts_at_the_skyline(client, session_id):
    res = client.get(f"/sessions/{session_id}/state")
    assert res.status_code == 200
    state = res.json()
    assert state["expression"] == "make * price * year"
    assert state["winnow"] == ["t1", "t2", "t3", "t4"]
    assert state["superior"] == [] and state["inferior"] == []
    assert state["history"] == []


def test_superior_feedback_then_elicit(client, session_id):
    fb = client.post(
        f"/sessions/{session_id}/feedback",
        json={"add_superior": ["t3"]},
    )
    assert fb.status_code == 200
    res = client.post(f"/sessions/{session_id}/elicit")
    assert res.status_code == 200
    body = res.json()
    assert body["winnow"] == ["t3"]
    edges = {tuple(e) for e in body["pgraph"]["edges"]}
    assert len(edges) == 3  # a total order over three attributes
    excluded = {e["id"]: e for e in body["explanation"]}
    assert set(excluded) == {"t1", "t2", "t4", "t5"}
    assert all(e["dominated_by"] for e in excluded.values())
    state = client.get(f"/sessions/{session_id}/state").json()
    assert len(state["history"]) == 1
    assert state["constraints"], "constraint system should be recorded"


def test_feedback_validation_errors(client, session_id):
    assert (
        client.post(
            f"/sessions/{session_id}/feedback", json={"add_superior": ["t9"]}
        ).status_code
        == 400
    )
    client.post(f"/sessions/{session_id}/feedback", json={"add_superior": ["t3"]})
    clash = client.post(
        f"/sessions/{session_id}/feedback", json={"add_inferior": ["t3"]}
    )
    assert clash.status_code == 400
    assert clash.json()["error"] == "conflicting_feedback"


def test_dominated_superior_is_409_with_witness(client, session_id):
    res = client.post(
        f"/sessions/{session_id}/feedback", json={"add_superior": ["t5"]}
    )
    assert res.status_code == 409
    body = res.json()
    assert body["error"] == "not_in_skyline"
    assert body["id"] == "t5"
    assert body["dominated_by"] == "t2"


def test_inferior_feedback_solves_by_search(client, session_id):
    client.post(f"/sessions/{session_id}/feedback", json={"add_superior": ["t4"]})
    client.post(f"/sessions/{session_id}/feedback", json={"add_inferior": ["t3"]})
    res = client.post(f"/sessions/{session_id}/elicit")
    assert res.status_code == 200
    body = res.json()
    assert body["expression"] == "year & price & make"
    assert body["winnow"] == ["t4"]


def test_unsatisfiable_inferior_is_409(client, session_id):
    # t1 sits in the skyline and no superior is marked, so nothing dominates it
    client.post(f"/sessions/{session_id}/feedback", json={"add_inferior": ["t1"]})
    res = client.post(f"/sessions/{session_id}/elicit")
    assert res.status_code == 409
    assert res.json()["error"] == "no_relation"


def test_elicit_without_feedback_returns_the_skyline(client, session_id):
    res = client.post(f"/sessions/{session_id}/elicit")
    assert res.status_code == 200
    assert res.json()["expression"] == "make * price * year"


def test_wide_schema_rejects_inferior_marks(client):
    attrs = [
        {"name": f"a{i}", "kind": "numeric", "preference": "higher"}
        for i in range(MAX_INFERIOR_WIDTH + 1)
    ]
    header = "id," + ",".join(a["name"] for a in attrs)
    rows = ["r1," + ",".join("1" for _ in attrs), "r2," + ",".join("2" for _ in attrs)]
    csv_text = header + "\n" + "\n".join(rows) + "\n"
    ds = client.post("/datasets", json={"schema": {"attributes": attrs}, "csv": csv_text})
    sid = client.post("/sessions", json={"dataset": ds.json()["id"]}).json()["id"]
    res = client.post(f"/sessions/{sid}/feedback", json={"add_inferior": ["r1"]})
    assert res.status_code == 422
    assert res.json()["error"] == "inferior_unsupported"
    ok = client.post(f"/sessions/{sid}/feedback", json={"add_superior": ["r2"]})
    assert ok.status_code == 200


def test_feedback_is_idempotent_per_tuple(client, session_id):
    for _ in range(2):
        client.post(f"/sessions/{session_id}/feedback", json={"add_superior": ["t3"]})
    state = client.get(f"/sessions/{session_id}/state").json()
    assert state["superior"] == ["t3"]


def test_history_accumulates_rounds(client, session_id):
    client.post(f"/sessions/{session_id}/feedback", json={"add_superior": ["t3"]})
    client.post(f"/sessions/{session_id}/elicit")
    client.post(f"/sessions/{session_id}/feedback", json={"add_superior": ["t2"]})
    client.post(f"/sessions/{session_id}/elicit")
    state = client.get(f"/sessions/{session_id}/state").json()
    assert len(state["history"]) == 2
    assert state["history"][0]["winnow"] == ["t3"]


def test_openapi_schema_is_served(client):
    res = client.get("/spec")
    assert res.status_code == 200
    paths = res.json()["paths"]
    assert "/datasets" in paths
    assert "/sessions/{session_id}/elicit" in paths
