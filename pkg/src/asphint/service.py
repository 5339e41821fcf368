"""HTTP service exposing exercises and attempt evaluation.

The reference solution never leaves the process: exercise listings carry
only id and statement, the detail view adds the given context program, and
attempt responses are filtered through the same non-reveal boundary the
pipeline enforces hint by hint.

Hint escalation is tied to effort: a session may request hint level n only
after n failed attempts on that exercise, so pressing for detail without
trying never pays.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .bundles import load_exercise_dir
from .pipeline import (
    Diagnosis,
    Exercise,
    TimeoutFinding,
    diagnosis_to_dict,
    evaluate_attempt,
)
from .solving import SolverConfig

log = logging.getLogger(__name__)

EXERCISE_DIR_ENV = "ASPHINT_EXERCISE_DIR"
ATTEMPT_LOG_ENV = "ASPHINT_ATTEMPT_LOG"
MAX_LEVEL = 2


@dataclass
class ServiceConfig:
    exercise_dir: Path
    attempt_log: Path | None = None
    solver: SolverConfig = field(default_factory=lambda: SolverConfig(time_budget=5.0))

    @classmethod
    def from_env(cls) -> "ServiceConfig":
        directory = os.environ.get(EXERCISE_DIR_ENV)
        if not directory:
            raise RuntimeError(f"{EXERCISE_DIR_ENV} is not set")
        log_path = os.environ.get(ATTEMPT_LOG_ENV)
        return cls(Path(directory), Path(log_path) if log_path else None)


class AttemptRequest(BaseModel):
    answer_source: str
    requested_level: int = Field(default=0, ge=0, le=MAX_LEVEL)
    session: str | None = None


def _student_view(d: Diagnosis) -> dict[str, Any]:
    view = diagnosis_to_dict(d, include_internal=False)
    finding = view.get("finding")
    if finding and finding["kind"] == "semantic":
        # Atom-level detail is a level 2 privilege; predicate names are
        # already as much as level 1 reveals, and they only travel inside
        # the hints generated for that level.
        finding.pop("extra", None)
        finding.pop("missing", None)
    return view


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    exercises = load_exercise_dir(config.exercise_dir)
    attempt_log = config.attempt_log or config.exercise_dir / "attempts.jsonl"

    app = FastAPI(title="asphint")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    lock = threading.Lock()
    failures: dict[tuple[str, str], int] = {}
    known_sessions: set[str] = set()

    def _log_attempt(record: dict[str, Any]) -> None:
        try:
            with lock:
                with attempt_log.open("a") as fh:
                    fh.write(json.dumps(record) + "\n")
        except OSError as exc:
            log.warning("could not append to attempt log %s: %s", attempt_log, exc)

    def _boundary_ok(payload: dict[str, Any], ex: Exercise, answer_source: str) -> bool:
        blob = json.dumps(payload)
        for rule in ex.reference_rules.rules:
            text = rule.to_text()
            if text in blob and text not in answer_source:
                return False
        return True

    @app.get("/api/v1/exercises")
    def list_exercises() -> list[dict[str, str]]:
        return [
            {"id": ex.id, "statement": ex.statement}
            for ex in sorted(exercises.values(), key=lambda e: e.id)
        ]

    @app.get("/api/v1/exercises/{exercise_id}")
    def get_exercise(exercise_id: str) -> dict[str, str]:
        ex = exercises.get(exercise_id)
        if ex is None:
            raise HTTPException(404, f"unknown exercise {exercise_id!r}")
        return {"id": ex.id, "statement": ex.statement, "given": ex.given_program.to_text()}

    @app.post("/api/v1/exercises/{exercise_id}/attempts")
    def post_attempt(exercise_id: str, request: AttemptRequest) -> dict[str, Any]:
        ex = exercises.get(exercise_id)
        if ex is None:
            raise HTTPException(404, f"unknown exercise {exercise_id!r}")
        if not request.answer_source.strip():
            raise HTTPException(422, "answer_source is empty")

        with lock:
            session = request.session
            if not session or session not in known_sessions:
                session = uuid.uuid4().hex
                known_sessions.add(session)
            failed_before = failures.get((session, exercise_id), 0)

        served_level = min(request.requested_level, failed_before, MAX_LEVEL)
        diagnosis = evaluate_attempt(ex, request.answer_source, served_level, config.solver)

        if isinstance(diagnosis.findings, TimeoutFinding):
            _log_attempt(
                {
                    "time": time.time(),
                    "session": session,
                    "exercise": exercise_id,
                    "outcome": "timeout",
                }
            )
            raise HTTPException(503, "evaluation timed out; try a simpler formulation")

        with lock:
            if not diagnosis.passed:
                failures[(session, exercise_id)] = failed_before + 1
            failed_after = failures.get((session, exercise_id), 0)

        response = {
            "session": session,
            "exercise_id": exercise_id,
            "served_level": served_level,
            "available_level": min(failed_after, MAX_LEVEL),
            "failed_attempts": failed_after,
            "passed": diagnosis.passed,
            "diagnosis": _student_view(diagnosis),
        }
        if not _boundary_ok(response, ex, request.answer_source):
            log.error("non-reveal boundary tripped for exercise %s", exercise_id)
            response["diagnosis"] = {
                "phase_reached": diagnosis.phase_reached,
                "passed": diagnosis.passed,
                "finding": None,
                "hints": [],
                "flags": ["non-reveal-violation"],
                "timings": {},
            }

        _log_attempt(
            {
                "time": time.time(),
                "session": session,
                "exercise": exercise_id,
                "answer_source": request.answer_source,
                "requested_level": request.requested_level,
                "served_level": served_level,
                "phase_reached": diagnosis.phase_reached,
                "passed": diagnosis.passed,
            }
        )
        return response

    return app


def serve(config: ServiceConfig | None = None, host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=host, port=port)
