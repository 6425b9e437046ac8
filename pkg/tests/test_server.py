import json
from datetime import datetime, timedelta

import pytest
from fastapi.testclient import TestClient

from easense.server import MAX_REQUESTS_PER_MINUTE, Session, create_app
from easense.store import ExperimentHistory


@pytest.fixture
def client(tmp_path):
    return TestClient(create_app(ExperimentHistory(str(tmp_path / "history"))))


def _ask(client, command, **params):
    with client.websocket_connect("/mcp") as ws:
        ws.send_text(json.dumps({"command": command, "params": params}))
        return ws.receive_json()


def test_presets_command(client):
    response = _ask(client, "presets")
    assert response["error"] is None
    names = [p["name"] for p in response["result"]["presets"]["de"]["params"]]
    assert names[0] == "lambda" and "b_type" in names


def test_problems_command(client):
    response = _ask(client, "problems", suite="moo10")
    assert response["result"]["problems"][0] == "dtlz1"
    assert len(response["result"]["problems"]) == 10
    assert "unknown suite" in _ask(client, "problems", suite="nope")["error"]


def test_unknown_command_and_bad_payload(client):
    assert _ask(client, "launch")["error"] == "Unknown command: launch"
    with client.websocket_connect("/mcp") as ws:
        ws.send_text("not json")
        assert ws.receive_json()["error"]


def test_report_needs_a_store(client, tmp_path):
    assert "store" in _ask(client, "report")["error"]
    assert "no sensitivity reports" in _ask(client, "report", store=str(tmp_path / "empty"))["error"]


def test_run_then_report_and_list(client, tiny_de):
    response = _ask(client, "run", config=tiny_de)
    assert response["error"] is None
    assert response["result"]["executed_cells"] == 48
    assert response["result"]["ranking"]["consolidated"]

    report = _ask(client, "report", store=tiny_de["output_dir"], metric="best")
    assert list(report["result"]["reports"]) == ["morris_best"]

    listed = _ask(client, "list")["result"]["experiments"]
    assert [e["status"] for e in listed] == ["finished"]


def test_rejected_run_is_recorded(client, tiny_de):
    response = _ask(client, "run", config={**tiny_de, "p": 5})
    assert "must be even" in response["error"]
    assert _ask(client, "list")["result"]["experiments"][0]["status"] == "rejected"


def test_session_rate_window_slides():
    session = Session()
    start = datetime(2024, 1, 1)
    assert all(session.allow(start) for _ in range(MAX_REQUESTS_PER_MINUTE))
    assert not session.allow(start + timedelta(seconds=30))
    assert session.allow(start + timedelta(minutes=1, seconds=1))
