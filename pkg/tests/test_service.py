"""HTTP API: exercise listing, attempt flow, hint escalation, boundaries."""

import json
import shutil

import pytest
from fastapi.testclient import TestClient

from asphint.hints import Hint
from asphint.pipeline import PHASE_SEMANTICS, Diagnosis
from asphint.service import MAX_LEVEL, ServiceConfig, create_app
from asphint.solving import SolverConfig
from conftest import CITIES_BUNDLE, REFERENCE_SRC, SAMPLE_ANSWERS

EXERCISE_ID = "cities-open-road"
ATTEMPTS_URL = f"/api/v1/exercises/{EXERCISE_ID}/attempts"


@pytest.fixture()
def service(tmp_path):
    exercise_dir = tmp_path / "exercises"
    exercise_dir.mkdir()
    shutil.copy(CITIES_BUNDLE, exercise_dir / "cities.json")
    config = ServiceConfig(exercise_dir, attempt_log=tmp_path / "attempts.jsonl")
    client = TestClient(create_app(config))
    return client, config


def _attempt(client, source, level=0, session=None):
    body = {"answer_source": source, "requested_level": level}
    if session is not None:
        body["session"] = session
    response = client.post(ATTEMPTS_URL, json=body)
    assert response.status_code == 200, response.text
    return response.json()


def test_listing_shows_id_and_statement_only(service):
    client, _ = service
    data = client.get("/api/v1/exercises").json()
    assert [sorted(entry) for entry in data] == [["id", "statement"]]
    assert data[0]["id"] == EXERCISE_ID


def test_detail_adds_the_given_program(service):
    client, _ = service
    data = client.get(f"/api/v1/exercises/{EXERCISE_ID}").json()
    assert "road(istanbul,kocaeli)." in data["given"]
    assert "open_road" not in data["given"]


def test_unknown_exercise_is_404(service):
    client, _ = service
    assert client.get("/api/v1/exercises/nope").status_code == 404
    response = client.post(
        "/api/v1/exercises/nope/attempts", json={"answer_source": "p."}
    )
    assert response.status_code == 404


def test_empty_answer_is_422(service):
    client, _ = service
    response = client.post(ATTEMPTS_URL, json={"answer_source": "  \n"})
    assert response.status_code == 422


def test_out_of_range_level_is_rejected(service):
    client, _ = service
    response = client.post(
        ATTEMPTS_URL, json={"answer_source": "p.", "requested_level": 3}
    )
    assert response.status_code == 422


def test_correct_answer_passes_and_returns_no_hints(service):
    client, _ = service
    data = _attempt(client, REFERENCE_SRC)
    assert data["passed"] is True
    assert data["failed_attempts"] == 0
    assert data["diagnosis"]["hints"] == []


def test_hint_level_requires_matching_failures(service):
    client, _ = service
    # First attempt: nothing failed yet, so level 2 is not served.
    first = _attempt(client, SAMPLE_ANSWERS["one_way"], level=2)
    assert first["served_level"] == 0
    assert first["failed_attempts"] == 1
    assert first["available_level"] == 1
    session = first["session"]

    second = _attempt(client, SAMPLE_ANSWERS["one_way"], level=2, session=session)
    assert second["served_level"] == 1
    messages = [h["message"] for h in second["diagnosis"]["hints"]]
    assert any("of predicate open_road" in m for m in messages)

    third = _attempt(client, SAMPLE_ANSWERS["one_way"], level=2, session=session)
    assert third["served_level"] == 2
    assert third["available_level"] == MAX_LEVEL
    messages = [h["message"] for h in third["diagnosis"]["hints"]]
    assert any("open_road(duzce,zonguldak) and open_road(zonguldak,duzce)" in m for m in messages)


def test_requested_level_is_honoured_below_the_cap(service):
    client, _ = service
    session = _attempt(client, SAMPLE_ANSWERS["one_way"], level=2)["session"]
    _attempt(client, SAMPLE_ANSWERS["one_way"], level=2, session=session)
    # Three failures allow level 2, but the student asked for 0.
    data = _attempt(client, SAMPLE_ANSWERS["one_way"], level=0, session=session)
    assert data["served_level"] == 0
    messages = [h["message"] for h in data["diagnosis"]["hints"]]
    assert messages == ["The answer set contains more true atoms than it should."]


def test_unknown_session_token_gets_a_fresh_one(service):
    client, _ = service
    data = _attempt(client, SAMPLE_ANSWERS["one_way"], session="forged-token")
    assert data["session"] != "forged-token"
    assert data["failed_attempts"] == 1


def test_failure_counts_are_per_session(service):
    client, _ = service
    first = _attempt(client, SAMPLE_ANSWERS["one_way"])
    stranger = _attempt(client, SAMPLE_ANSWERS["one_way"])
    assert stranger["session"] != first["session"]
    assert stranger["failed_attempts"] == 1


def test_passing_does_not_count_as_a_failure(service):
    client, _ = service
    session = _attempt(client, SAMPLE_ANSWERS["one_way"])["session"]
    data = _attempt(client, REFERENCE_SRC, session=session)
    assert data["passed"] is True
    assert data["failed_attempts"] == 1


def test_timeout_maps_to_503(tmp_path):
    exercise_dir = tmp_path / "exercises"
    exercise_dir.mkdir()
    shutil.copy(CITIES_BUNDLE, exercise_dir / "cities.json")
    config = ServiceConfig(
        exercise_dir,
        attempt_log=tmp_path / "attempts.jsonl",
        solver=SolverConfig(time_budget=1e-9, method="exhaustive"),
    )
    client = TestClient(create_app(config))
    response = client.post(ATTEMPTS_URL, json={"answer_source": REFERENCE_SRC})
    assert response.status_code == 503


def test_attempts_are_logged_as_jsonl(service):
    client, config = service
    _attempt(client, SAMPLE_ANSWERS["missing_dot"])
    _attempt(client, REFERENCE_SRC)
    lines = config.attempt_log.read_text().splitlines()
    assert len(lines) == 2
    records = [json.loads(line) for line in lines]
    assert records[0]["phase_reached"] == 1
    assert records[0]["passed"] is False
    assert records[1]["passed"] is True
    assert all("session" in r and "time" in r for r in records)


def test_response_never_contains_the_reference_rule(service):
    client, _ = service
    for name, source in SAMPLE_ANSWERS.items():
        session = None
        for _ in range(3):
            body = {"answer_source": source, "requested_level": 2}
            if session:
                body["session"] = session
            response = client.post(ATTEMPTS_URL, json=body)
            assert response.status_code == 200
            session = response.json()["session"]
            blob = response.text
            assert "not blocked(X,Y), not blocked(Y,X)" not in blob, name
            assert "missing_predicates" not in blob, name
            assert "reference_set" not in blob, name


def test_boundary_check_sanitizes_a_leaking_diagnosis(service, monkeypatch):
    client, _ = service
    leaked = "open_road(X,Y) :- road(X,Y), not blocked(X,Y), not blocked(Y,X)."

    def fake_evaluate(ex, source, level=0, config=None):
        return Diagnosis(
            PHASE_SEMANTICS,
            None,
            (Hint(PHASE_SEMANTICS, 0, f"Just write {leaked}", {}),),
        )

    monkeypatch.setattr("asphint.service.evaluate_attempt", fake_evaluate)
    data = _attempt(client, SAMPLE_ANSWERS["one_way"])
    assert leaked not in json.dumps(data)
    assert data["diagnosis"]["flags"] == ["non-reveal-violation"]
    assert data["diagnosis"]["hints"] == []


def test_concurrent_attempts_stay_independent_and_deterministic(service):
    client, _ = service
    from concurrent.futures import ThreadPoolExecutor

    sources = [SAMPLE_ANSWERS["one_way"], SAMPLE_ANSWERS["wrong_pred"], REFERENCE_SRC] * 4

    def post(source):
        return _attempt(client, source)

    with ThreadPoolExecutor(max_workers=6) as pool:
        results = list(pool.map(post, sources))

    def stripped(diagnosis):
        return {k: v for k, v in diagnosis.items() if k != "timings"}

    baseline = {
        source: stripped(_attempt(client, source)["diagnosis"]) for source in set(sources)
    }
    for source, result in zip(sources, results):
        assert stripped(result["diagnosis"]) == baseline[source]
        # Every request above omitted the session token, so each got its
        # own session and first-failure count.
        assert result["failed_attempts"] <= 1


def test_config_from_env(monkeypatch, tmp_path):
    monkeypatch.delenv("ASPHINT_EXERCISE_DIR", raising=False)
    with pytest.raises(RuntimeError):
        ServiceConfig.from_env()
    monkeypatch.setenv("ASPHINT_EXERCISE_DIR", str(tmp_path))
    monkeypatch.setenv("ASPHINT_ATTEMPT_LOG", str(tmp_path / "log.jsonl"))
    config = ServiceConfig.from_env()
    assert config.exercise_dir == tmp_path
    assert config.attempt_log == tmp_path / "log.jsonl"
