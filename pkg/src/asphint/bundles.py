"""Exercise bundle files: loading, schema checks, authoring validation.

A bundle is a JSON object with the fields id, statement, given, reference,
and question_predicates; given and reference hold rule source text.  The
reference stays server side for the whole life of the exercise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core import Program, combine
from .grounding import check_safety
from .parsing import ParseError, parse_program, syntax_hint
from .pipeline import Exercise
from .solving import BudgetExceeded, SolverConfig, answer_sets


class BundleError(Exception):
    """The bundle file does not match the schema."""


class ExerciseValidationError(Exception):
    """The bundle matches the schema but cannot work as an exercise."""


@dataclass(frozen=True)
class ExerciseBundle:
    id: str
    statement: str
    given: str
    reference: str
    question_predicates: tuple[tuple[str, int], ...]
    notes: str | None = None


def load_bundle(path: str | Path) -> ExerciseBundle:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise BundleError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise BundleError(f"{path}: bundle must be a JSON object")
    for field_name in ("id", "statement", "given", "reference", "question_predicates"):
        if field_name not in data:
            raise BundleError(f"{path}: missing required field {field_name!r}")
    for field_name in ("id", "statement", "given", "reference"):
        if not isinstance(data[field_name], str) or not data[field_name].strip():
            raise BundleError(f"{path}: field {field_name!r} must be a non-empty string")
    preds = data["question_predicates"]
    if not isinstance(preds, list):
        raise BundleError(f"{path}: question_predicates must be a list of [name, arity] pairs")
    parsed_preds = []
    for entry in preds:
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not isinstance(entry[0], str)
            or not isinstance(entry[1], int)
        ):
            raise BundleError(f"{path}: bad question predicate entry {entry!r}")
        parsed_preds.append((entry[0], entry[1]))
    notes = data.get("notes")
    if notes is not None and not isinstance(notes, str):
        raise BundleError(f"{path}: notes must be a string")
    return ExerciseBundle(
        data["id"], data["statement"], data["given"], data["reference"], tuple(parsed_preds), notes
    )


def _parse_source(label: str, source: str) -> Program:
    parsed = parse_program(source)
    if isinstance(parsed, ParseError):
        raise ExerciseValidationError(
            f"{label} program does not parse: {parsed.machine_text()}\n"
            f"{syntax_hint(parsed).caret_rendering}"
        )
    return parsed


def build_exercise(bundle: ExerciseBundle, config: SolverConfig | None = None) -> Exercise:
    """Validate a bundle and produce the runnable exercise.

    The combined reference program must be safe and have at least one
    answer set, and no client-visible text may contain a reference rule.
    """
    given = _parse_source("given", bundle.given)
    reference = _parse_source("reference", bundle.reference)
    combined = combine(given, reference)
    violations = check_safety(combined)
    if violations:
        names = ", ".join(sorted(set().union(*(v.unsafe_variables for v in violations))))
        raise ExerciseValidationError(f"reference program is unsafe, variables: {names}")
    try:
        result = answer_sets(combined, config or SolverConfig(time_budget=10.0))
    except BudgetExceeded as exc:
        raise ExerciseValidationError(f"reference program too hard to solve: {exc}") from exc
    if not result.answer_sets:
        raise ExerciseValidationError("reference program has no answer set")
    for rule in reference.rules:
        text = rule.to_text()
        if text in bundle.statement or text in bundle.given:
            raise ExerciseValidationError(
                f"client-visible text contains a reference rule: {text}"
            )
    return Exercise(
        bundle.id,
        bundle.statement,
        given,
        reference,
        frozenset(bundle.question_predicates),
    )


def load_exercise(path: str | Path, config: SolverConfig | None = None) -> Exercise:
    return build_exercise(load_bundle(path), config)


def load_exercise_dir(directory: str | Path) -> dict[str, Exercise]:
    """All *.json bundles in a directory, keyed by exercise id."""
    directory = Path(directory)
    if not directory.is_dir():
        raise BundleError(f"not a directory: {directory}")
    exercises: dict[str, Exercise] = {}
    for path in sorted(directory.glob("*.json")):
        exercise = load_exercise(path)
        if exercise.id in exercises:
            raise BundleError(f"duplicate exercise id {exercise.id!r} in {path}")
        exercises[exercise.id] = exercise
    return exercises
