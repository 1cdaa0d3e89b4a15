from unittest import mock

import pytest
from fastapi.testclient import TestClient

from backend.main import app
from mst_fortify.commands.greedy import RaiseCommand

TRIANGLE = "3\n0 1 0 1\n0 2 0 1\n1 2 0 1\n"


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/").json() == {"message": "MST Fortify API"}
    assert client.get("/health").json()["status"] == "healthy"


def test_list_solvers(client):
    names = [entry["name"] for entry in client.get("/solvers").json()]
    assert "targeted" in names
    assert len(names) == 14


def test_solve(client):
    response = client.post("/solve/targeted", json={"instance": TRIANGLE, "target": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["cost"] == "3"
    assert body["increase"] == "2"
    assert "check" not in body


def test_solve_with_rational_budget(client):
    response = client.post("/solve/raise", json={"instance": TRIANGLE, "budget": "3/2"})
    assert response.status_code == 200
    assert response.json()["increase"] == "1"


def test_unknown_solver(client):
    assert client.post("/solve/nope", json={"instance": TRIANGLE}).status_code == 404


def test_failures_are_unprocessable(client):
    response = client.post("/solve/raise", json={"instance": TRIANGLE})
    assert response.status_code == 422
    assert response.json()["detail"] == "raise needs --budget"


def test_check_violation_is_a_conflict(client):
    with mock.patch.object(RaiseCommand, "compare", return_value=(False, "forced")):
        response = client.post(
            "/solve/raise", json={"instance": TRIANGLE, "budget": 3, "check": True}
        )
    assert response.status_code == 409
    assert response.json()["detail"]["message"] == "forced"
