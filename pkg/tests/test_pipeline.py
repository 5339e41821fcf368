"""End-to-end attempt evaluation: phase routing, guarded hints, and the
serialized diagnosis format."""

import pytest

from asphint.core import Program
from asphint.hints import Hint
from asphint.parsing import ParseError, parse_program
from asphint.pipeline import (
    FLAG_BOTH_INCONSISTENT,
    FLAG_NON_REVEAL,
    PASSED,
    PHASE_SEMANTICS,
    PHASE_SYNTAX,
    PHASE_VOCABULARY,
    Diagnosis,
    Exercise,
    TimeoutFinding,
    VocabReport,
    diagnosis_from_dict,
    diagnosis_to_dict,
    evaluate_attempt,
    non_reveal_guard,
)
from asphint.semdiff import SemanticDiff
from asphint.solving import SolverConfig
from conftest import REFERENCE_SRC, SAMPLE_ANSWERS


def _program(source: str) -> Program:
    p = parse_program(source)
    assert isinstance(p, Program)
    return p


EXPECTED_PHASES = {
    "missing_dot": PHASE_SYNTAX,
    "semicolon": PHASE_SYNTAX,
    "wrong_pred": PHASE_VOCABULARY,
    "wrong_arity": PHASE_VOCABULARY,
    "wrong_const": PHASE_VOCABULARY,
    "one_way": PHASE_SEMANTICS,
}


@pytest.mark.parametrize("name", sorted(SAMPLE_ANSWERS))
def test_each_sample_answer_stops_at_its_phase(cities_exercise, name):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS[name])
    assert d.phase_reached == EXPECTED_PHASES[name]
    assert not d.passed
    assert d.hints, name


def test_reference_text_passes(cities_exercise):
    d = evaluate_attempt(cities_exercise, REFERENCE_SRC)
    assert d.passed
    assert d.phase_reached == PASSED
    assert d.hints == ()
    assert d.findings is None


def test_rewritten_solutions_pass(cities_exercise):
    rewritings = [
        # Body reordered.
        "open_road(X,Y) :- not blocked(Y,X), not blocked(X,Y), road(X,Y).",
        # Variables renamed.
        "open_road(From, To) :- road(From, To), not blocked(From, To), not blocked(To, From).",
        # Exploits the symmetry of road.
        "open_road(X,Y) :- road(Y,X), not blocked(X,Y), not blocked(Y,X).",
    ]
    for source in rewritings:
        d = evaluate_attempt(cities_exercise, source)
        assert d.passed, source


def test_syntax_diagnosis_carries_the_machine_readable_error(cities_exercise):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["missing_dot"])
    assert isinstance(d.findings, ParseError)
    (hint,) = d.hints
    assert "Syntax error, unexpected <EOF>." in hint.message
    assert "rules are of the form" in hint.message
    assert hint.payload["machine"].startswith("-:1:")
    assert "caret" in hint.payload


def test_vocab_diagnosis_names_only_the_stray_predicate(cities_exercise):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["wrong_pred"])
    assert isinstance(d.findings, VocabReport)
    assert d.findings.diff.wrong_preds == frozenset({"obstacle"})
    assert any("obstacle should not be used" in h.message for h in d.hints)
    # The forgotten predicate is recorded internally but never hinted.
    assert "blocked" not in " ".join(h.message for h in d.hints)


def test_wrong_arity_reports_diff_and_safety(cities_exercise):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["wrong_arity"])
    assert isinstance(d.findings, VocabReport)
    assert d.findings.diff.wrong_arities == frozenset({("road", 1)})
    # road(X) leaves Y unbound, so the same answer also trips safety.
    assert d.findings.safety
    assert any("appears only under 'not' or in the head" in h.message for h in d.hints)


def test_wrong_constants_reported(cities_exercise):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["wrong_const"])
    assert isinstance(d.findings, VocabReport)
    assert d.findings.diff.wrong_constants == frozenset({"x", "y"})


def test_semantic_diagnosis_finds_the_two_extra_atoms(cities_exercise):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["one_way"], level=2)
    assert isinstance(d.findings, SemanticDiff)
    assert {a.to_text() for a in d.findings.extra} == {
        "open_road(duzce,zonguldak)",
        "open_road(zonguldak,duzce)",
    }
    assert d.findings.missing == frozenset()
    (hint,) = d.hints
    assert hint.message == (
        "The answer set contains true atoms which should be false: "
        "open_road(duzce,zonguldak) and open_road(zonguldak,duzce)."
    )


def test_level_zero_semantic_hint_gives_direction_only(cities_exercise):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["one_way"], level=0)
    (hint,) = d.hints
    assert hint.message == "The answer set contains more true atoms than it should."
    assert "open_road" not in hint.message


def test_empty_source_is_a_semantic_failure(cities_exercise):
    # An empty program parses fine, uses no stray vocabulary, and then
    # produces none of the required open_road atoms.
    d = evaluate_attempt(cities_exercise, "% no answer yet\n")
    assert d.phase_reached == PHASE_SEMANTICS
    assert isinstance(d.findings, SemanticDiff)
    assert d.findings.missing


def test_timings_cover_the_phases_that_ran(cities_exercise):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["one_way"])
    assert set(d.timings) == {PHASE_SYNTAX, PHASE_VOCABULARY, PHASE_SEMANTICS}
    assert all(t >= 0 for t in d.timings.values())
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["missing_dot"])
    assert set(d.timings) == {PHASE_SYNTAX}


def test_tiny_time_budget_yields_a_timeout_finding(cities_exercise):
    d = evaluate_attempt(
        cities_exercise,
        REFERENCE_SRC,
        config=SolverConfig(time_budget=1e-9, method="exhaustive"),
    )
    assert d.phase_reached == PHASE_SEMANTICS
    assert isinstance(d.findings, TimeoutFinding)
    assert not d.passed
    assert any(h.payload.get("kind") == "timeout" for h in d.hints)


def test_non_reveal_guard_redacts_reference_text(cities_exercise):
    leaking = Hint(
        PHASE_SEMANTICS,
        2,
        f"Try writing {cities_exercise.reference_rules.rules[0].to_text()}",
        {},
    )
    guarded = non_reveal_guard(leaking, cities_exercise)
    assert guarded is not leaking
    assert REFERENCE_SRC.split(" :- ")[0] not in guarded.message or "differs" in guarded.message
    assert guarded.payload.get("kind") == "redacted"
    assert guarded.level == 0


def test_non_reveal_guard_checks_caret_payload_too(cities_exercise):
    canonical = cities_exercise.reference_rules.rules[0].to_text()
    leaking = Hint(PHASE_SYNTAX, 0, "look here", {"caret": canonical + "\n^"})
    guarded = non_reveal_guard(leaking, cities_exercise)
    assert guarded is not leaking


def test_non_reveal_guard_exempts_the_students_own_text(cities_exercise):
    # A student who literally typed the reference may be shown their own
    # rule, e.g. inside a caret rendering.
    student = _program(REFERENCE_SRC)
    canonical = student.rules[0].to_text()
    h = Hint(PHASE_SYNTAX, 0, f"Check this rule: {canonical}", {})
    assert non_reveal_guard(h, cities_exercise, student) is h


def test_non_reveal_guard_passes_clean_hints(cities_exercise):
    h = Hint(PHASE_SEMANTICS, 0, "The answer set contains more true atoms than it should.", {})
    assert non_reveal_guard(h, cities_exercise) is h


def test_guard_violation_is_flagged_in_the_diagnosis():
    # A reference bundle whose rule text equals a vocabulary hint would be
    # caught; simulate by evaluating against a reference whose canonical
    # text appears inside the hint message.  Constructed, not realistic.
    ex = Exercise(
        id="trap",
        statement="",
        given_program=_program("q(a)."),
        reference_rules=_program("p :- q(a)."),
    )
    # Student uses predicate named exactly like the reference rule text
    # cannot exist; instead check evaluate_attempt leaves flags empty on
    # ordinary answers.
    d = evaluate_attempt(ex, "p :- q(a), not r(a).")
    assert FLAG_NON_REVEAL not in d.flags


def test_both_inconsistent_flag():
    ex = Exercise(
        id="none",
        statement="",
        given_program=_program("q(a)."),
        reference_rules=_program("p :- q(a), not p."),
    )
    d = evaluate_attempt(ex, "p :- q(a), not p.")
    assert d.passed
    assert FLAG_BOTH_INCONSISTENT in d.flags


def test_evaluation_is_deterministic_modulo_timings(cities_exercise):
    for source in SAMPLE_ANSWERS.values():
        runs = []
        for _ in range(2):
            data = diagnosis_to_dict(evaluate_attempt(cities_exercise, source, level=2))
            data.pop("timings")
            runs.append(data)
        assert runs[0] == runs[1], source


@pytest.mark.parametrize("name", sorted(SAMPLE_ANSWERS))
def test_emitted_hints_are_guard_stable(cities_exercise, name):
    # Whatever the pipeline emits must already be clean: running the guard
    # again (without the student-text exemption) changes nothing.
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS[name], level=2)
    for h in d.hints:
        assert non_reveal_guard(h, cities_exercise) is h


@pytest.mark.parametrize("name", sorted(SAMPLE_ANSWERS))
def test_diagnosis_round_trips_through_dict(cities_exercise, name):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS[name], level=2)
    data = diagnosis_to_dict(d)
    back = diagnosis_from_dict(data)
    assert back.phase_reached == d.phase_reached
    assert back.hints == d.hints
    assert back.flags == d.flags
    assert type(back.findings) is type(d.findings)
    assert diagnosis_to_dict(back) == data


def test_student_view_hides_reference_material(cities_exercise):
    d = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["one_way"], level=0)
    data = diagnosis_to_dict(d, include_internal=False)
    blob = str(data)
    assert "reference_set" not in blob
    assert data["finding"]["has_extra"] is True
    assert data["finding"]["has_missing"] is False
    d2 = evaluate_attempt(cities_exercise, SAMPLE_ANSWERS["wrong_pred"])
    data2 = diagnosis_to_dict(d2, include_internal=False)
    assert "missing_predicates" not in data2["finding"]
    assert "blocked" not in str(data2)


def test_passed_diagnosis_serializes_cleanly(cities_exercise):
    d = evaluate_attempt(cities_exercise, REFERENCE_SRC)
    data = diagnosis_to_dict(d, include_internal=False)
    assert data["passed"] is True
    assert data["finding"] is None
    assert data["hints"] == []
    back = diagnosis_from_dict(diagnosis_to_dict(d))
    assert back.passed
