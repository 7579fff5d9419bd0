"""
Integration tests for the scox API endpoints.

Requests go through the FastAPI TestClient; no server is started.
"""
import pytest

from scox.bounds import DEFAULT_BOUNDS

A2 = {"type": "A2"}


@pytest.mark.integration
class TestHealthEndpoints:
    """Root, health and metrics."""

    def test_root_endpoint(self, client):
        """GET / should return welcome message."""
        response = client.get("/")

        assert response.status_code == 200
        data = response.json()
        assert data["message"] == "Welcome to the scox API"
        assert "endpoints" in data

    def test_health_endpoint(self, client):
        """GET /health builds A2 and reports the engine check."""
        response = client.get("/health")

        assert response.status_code in [200, 503]
        data = response.json()
        assert "status" in data
        assert "engine" in data["checks"]

    def test_metrics_endpoint(self, client):
        """Metrics may be disabled in the test environment."""
        response = client.get("/metrics")
        assert response.status_code in [200, 404]


@pytest.mark.integration
class TestSystemEndpoints:
    """Classification and double cosets."""

    def test_classify_a3(self, client):
        response = client.post("/api/systems/classify", json={"type": "A3"})

        assert response.status_code == 200
        data = response.json()
        assert data["name"] == "A3"
        assert data["rank"] == 3
        assert data["finite"] is True
        assert data["positive_roots"] == 6

    def test_classify_infinite_matrix(self, client):
        response = client.post(
            "/api/systems/classify",
            json={"matrix": [[1, 3, 3], [3, 1, 3], [3, 3, 1]]},
        )

        assert response.status_code == 200
        assert response.json()["finite"] is False

    def test_type_and_matrix_together(self, client):
        """Exactly one of type or matrix is accepted."""
        response = client.post(
            "/api/systems/classify",
            json={"type": "A2", "matrix": [[1, 3], [3, 1]]},
        )
        assert response.status_code == 422

    def test_unknown_type(self, client):
        response = client.post("/api/systems/classify", json={"type": "Q7"})

        assert response.status_code == 400
        assert response.json()["error"] == "VALIDATION_ERROR"

    def test_describe_coset(self, client):
        response = client.post(
            "/api/cosets/describe",
            json={"system": A2, "left": "s", "right": "s", "word": "sts"},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["min"] == ["s2"]
        assert data["max"] == ["s1", "s2", "s1"]
        assert data["is_identity"] is False


@pytest.mark.integration
class TestExpressionEndpoints:
    """Evaluation, reduction, rex sets and switchbacks."""

    def test_evaluate(self, client):
        response = client.post(
            "/api/expressions/evaluate",
            json={"system": A2, "expression": "[∅,s,st,t,∅]"},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["expression"] == "[∅,s1,s1s2,s2,∅]"
        assert data["width"] == 4
        assert data["reduced"] is True
        assert data["coset"]["max"] == ["s1", "s2", "s1"]

    def test_reduce(self, client):
        response = client.post(
            "/api/expressions/reduce",
            json={"system": A2, "expression": "[∅,s,∅,s,∅]"},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["start"] == "[∅,s1,∅,s1,∅]"
        assert data["final"] == "[∅,s1,∅]"
        assert data["steps"]

    def test_malformed_expression(self, client):
        response = client.post(
            "/api/expressions/evaluate",
            json={"system": A2, "expression": "[∅,s,∅"},
        )
        assert response.status_code == 400

    def test_rex_enumerate(self, client):
        response = client.post("/api/rex", json={"system": A2, "word": "sts"})

        assert response.status_code == 200
        data = response.json()
        assert data["mode"] == "enumerate"
        assert data["count"] == 6
        assert len(data["expressions"]) == 6

    def test_rex_bound_header(self, client, mocker):
        """An exceeded bound answers 413 and names the bound."""
        mocker.patch.object(DEFAULT_BOUNDS.rex, "max_vertices", 2)

        response = client.post("/api/rex", json={"system": A2, "word": "sts"})

        assert response.status_code == 413
        assert response.json()["error"] == "RESOURCE_BOUND_EXCEEDED"
        assert response.headers["X-Scox-Bound"] == "SCOX_MAX_VERTICES"

    def test_switchback(self, client):
        response = client.post(
            "/api/relations/switchback",
            json={"system": {"type": "H3"}, "a": 1, "b": 3},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["c"] == [2, 1, 3, 2]
        assert data["lhs"] and data["rhs"]

    def test_switchback_out_of_range(self, client):
        response = client.post(
            "/api/relations/switchback",
            json={"system": {"type": "H3"}, "a": 1, "b": 4},
        )
        assert response.status_code == 400

    def test_switchback_without_rotation(self, client):
        response = client.post(
            "/api/relations/switchback",
            json={"system": {"type": "A3"}, "a": 1, "b": 3},
        )

        assert response.status_code == 422
        assert response.json()["error"] == "NO_ROTATION"

    def test_table(self, client):
        response = client.get("/api/relations/tables/H3")

        assert response.status_code == 200
        data = response.json()
        assert data["rank"] == 3
        assert data["rows"][0] == {"a": 1, "b": 2, "c": [3, 2, 3, 1]}


@pytest.mark.integration
class TestComplexEndpoints:

    def test_build_json(self, client):
        response = client.post("/api/complexes/build", json={"system": A2})

        assert response.status_code == 200
        assert len(response.json()["vertices"]) == 13

    def test_build_dot(self, client):
        response = client.post(
            "/api/complexes/build",
            json={"system": A2, "left": "s", "format": "dot"},
        )

        assert response.status_code == 200
        assert response.text.startswith("digraph")


@pytest.mark.integration
class TestWebEndpoints:
    """Web evaluation and Hom counts."""

    def test_evaluate_text(self, client):
        response = client.post(
            "/api/webs/evaluate",
            json={"text": "(1,2) ; merge@1(1,2) ; split@1(1,2)"},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["degree"] == 4
        assert data["top"] == [1, 2]
        assert data["expression"] == "[s2,s1s2,s2]"

    def test_evaluate_document(self, client):
        document = {
            "bottom": [1, 2],
            "layers": [
                {"kind": "merge", "at": 1, "a": 1, "b": 2},
                {"kind": "split", "at": 1, "a": 1, "b": 2},
            ],
        }
        response = client.post("/api/webs/evaluate", json={"web": document})

        assert response.status_code == 200
        assert response.json()["web"] == "(1,2) ; merge@1(1,2) ; split@1(1,2)"

    @pytest.mark.parametrize("body", [
        {},
        {"text": "(1,1) ; merge@1(1,1)", "web": {"bottom": [1, 1]}},
    ])
    def test_evaluate_needs_exactly_one_form(self, client, body):
        response = client.post("/api/webs/evaluate", json=body)

        assert response.status_code == 400
        assert response.json()["details"]["field"] == "web"

    def test_hom_count(self, client):
        response = client.post("/api/webs/hom-count", json={"bottom": [1, 1], "top": [2]})

        assert response.status_code == 200
        assert response.json()["count"] == 1
