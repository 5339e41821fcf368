"""The three-phase evaluation pipeline.

An attempt runs through syntax, then vocabulary, then semantics, and the
first failing phase produces the diagnosis; later phases never run.  Every
hint passes the non-reveal guard before it is handed out, so a diagnosis
can always be shown to the student without leaking the sample solution.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Union

from .core import Atom, Interpretation, Program, combine, sort_atoms
from .grounding import SafetyViolation, check_safety
from .hints import PHASE_SEMANTICS, PHASE_SYNTAX, PHASE_VOCABULARY, Hint
from .parsing import ParseError, parse_program, syntax_hint
from .semdiff import SemanticDiff, compare, semantic_hint
from .solving import BudgetExceeded, SolverConfig, answer_sets
from .vocabulary import VocabDiff, scoped_vocab, vocab_diff, vocab_hint

PASSED = "passed"

FLAG_NON_REVEAL = "non-reveal-violation"
FLAG_BOTH_INCONSISTENT = "both-inconsistent"

GENERIC_HINTS = {
    PHASE_SYNTAX: "There is a syntax error in the answer.",
    PHASE_VOCABULARY: "The answer uses vocabulary the exercise does not expect.",
    PHASE_SEMANTICS: "The answer set differs from the expected one.",
}


@dataclass(frozen=True)
class Exercise:
    id: str
    statement: str
    given_program: Program
    reference_rules: Program
    question_predicates: frozenset[tuple[str, int]] = frozenset()


@dataclass(frozen=True)
class VocabReport:
    """Phase 2 finding: the vocabulary diff, any safety violations, and the
    reference-minus-student remainder kept for instructors only."""

    diff: VocabDiff
    safety: tuple[SafetyViolation, ...]
    missing_preds: frozenset[str]
    missing_arities: frozenset[tuple[str, int]]
    missing_constants: frozenset[str]

    def failed(self) -> bool:
        return bool(self.safety) or not self.diff.is_empty()


@dataclass(frozen=True)
class TimeoutFinding:
    detail: str


Finding = Union[ParseError, VocabReport, SemanticDiff, TimeoutFinding, None]


@dataclass(frozen=True)
class Diagnosis:
    phase_reached: int | str
    findings: Finding
    hints: tuple[Hint, ...]
    timings: Mapping[int, float] = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.phase_reached == PASSED


def non_reveal_guard(h: Hint, ex: Exercise, student_rules: Program | None = None) -> Hint:
    """Replace h when its text would echo a reference rule.

    Rules the student wrote themselves are exempt: their own text is not a
    secret.  A replaced hint is generic at level 0 and carries a flag so the
    failure is visible in logs.
    """
    exempt = {r.to_text() for r in student_rules.rules} if student_rules else set()
    protected = {r.to_text() for r in ex.reference_rules.rules} - exempt
    shown = h.message + "\n" + str(h.payload.get("caret", ""))
    for text in protected:
        if text in shown:
            return Hint(
                h.phase,
                0,
                GENERIC_HINTS.get(h.phase, GENERIC_HINTS[PHASE_SEMANTICS]),
                {"kind": "redacted", FLAG_NON_REVEAL.replace("-", "_"): True},
            )
    return h


def _guard_all(
    hints: list[Hint], ex: Exercise, student_rules: Program | None
) -> tuple[tuple[Hint, ...], tuple[str, ...]]:
    out = []
    flags: tuple[str, ...] = ()
    for h in hints:
        guarded = non_reveal_guard(h, ex, student_rules)
        if guarded is not h:
            flags = (FLAG_NON_REVEAL,)
        out.append(guarded)
    return tuple(out), flags


def evaluate_attempt(
    ex: Exercise,
    answer_source: str,
    level: int = 0,
    config: SolverConfig | None = None,
) -> Diagnosis:
    """Evaluate one attempt and return the diagnosis for the first failing
    phase, or a passed diagnosis when the answer sets coincide."""
    config = config or SolverConfig(time_budget=5.0)
    timings: dict[int, float] = {}

    started = time.perf_counter()
    parsed = parse_program(answer_source)
    timings[PHASE_SYNTAX] = time.perf_counter() - started
    if isinstance(parsed, ParseError):
        sh = syntax_hint(parsed)
        hint = Hint(
            PHASE_SYNTAX,
            0,
            f"{sh.message}\n{sh.reminder}",
            {
                "kind": "syntax",
                "category": parsed.category,
                "caret": sh.caret_rendering,
                "machine": parsed.machine_text(),
            },
        )
        hints, flags = _guard_all([hint], ex, None)
        return Diagnosis(PHASE_SYNTAX, parsed, hints, timings, flags)

    p_u = combine(ex.given_program, parsed)
    p_r = combine(ex.given_program, ex.reference_rules)

    started = time.perf_counter()
    diff = vocab_diff(p_u, p_r)
    safety = tuple(check_safety(p_u))
    reference_vocab = scoped_vocab(p_r)
    student_vocab = scoped_vocab(p_u)
    report = VocabReport(
        diff,
        safety,
        reference_vocab.preds - student_vocab.preds,
        reference_vocab.predarities - student_vocab.predarities,
        reference_vocab.constants - student_vocab.constants,
    )
    timings[PHASE_VOCABULARY] = time.perf_counter() - started
    if report.failed():
        hints = [] if diff.is_empty() else vocab_hint(diff, p_r, min(level, 1))
        hints.extend(_safety_hints(safety))
        guarded, flags = _guard_all(hints, ex, parsed)
        return Diagnosis(PHASE_VOCABULARY, report, guarded, timings, flags)

    started = time.perf_counter()
    try:
        result_u = answer_sets(p_u, config)
        remaining = None
        if config.time_budget is not None:
            remaining = max(0.05, config.time_budget - (time.perf_counter() - started))
        result_r = answer_sets(p_r, replace(config, time_budget=remaining))
    except BudgetExceeded as exc:
        timings[PHASE_SEMANTICS] = time.perf_counter() - started
        hint = Hint(
            PHASE_SEMANTICS,
            0,
            "The answer could not be evaluated within the time budget; "
            "this says nothing about whether it is correct.",
            {"kind": "timeout"},
        )
        guarded, flags = _guard_all([hint], ex, parsed)
        return Diagnosis(PHASE_SEMANTICS, TimeoutFinding(str(exc)), guarded, timings, flags)
    d = compare(result_u.answer_sets, result_r.answer_sets)
    timings[PHASE_SEMANTICS] = time.perf_counter() - started

    warn_flags: tuple[str, ...] = (FLAG_BOTH_INCONSISTENT,) if d.warning else ()
    if d.matched:
        return Diagnosis(PASSED, None, (), timings, warn_flags)
    hints = semantic_hint(d, min(level, 2))
    guarded, flags = _guard_all(hints, ex, parsed)
    return Diagnosis(PHASE_SEMANTICS, d, guarded, timings, warn_flags + flags)


def _safety_hints(safety: tuple[SafetyViolation, ...]) -> list[Hint]:
    hints = []
    for v in safety:
        names = sorted(v.unsafe_variables)
        if len(names) == 1:
            subject = f"Variable {names[0]} appears"
        else:
            subject = f"Variables {', '.join(names)} appear"
        hints.append(
            Hint(
                PHASE_VOCABULARY,
                0,
                f"{subject} only under 'not' or in the head; every variable "
                "must also appear in a positive body atom.",
                {"kind": "unsafe_rule", "variables": names, "rule": v.rule.to_text()},
            )
        )
    return hints


def _atoms_to_texts(atoms: frozenset[Atom]) -> list[str]:
    return [a.to_text() for a in sort_atoms(atoms)]


def diagnosis_to_dict(d: Diagnosis, include_internal: bool = True) -> dict[str, Any]:
    """Serialize a diagnosis; include_internal=False drops instructor-only
    data such as the reference answer set and the missing vocabulary."""
    finding: dict[str, Any] | None = None
    f = d.findings
    if isinstance(f, ParseError):
        finding = {
            "kind": "syntax",
            "line": f.line,
            "col_start": f.col_start,
            "col_end": f.col_end,
            "expected": sorted(f.expected),
            "found": f.found,
            "found_text": f.found_text,
            "source_line_text": f.source_line_text,
            "category": f.category,
            "machine": f.machine_text(),
        }
    elif isinstance(f, VocabReport):
        finding = {
            "kind": "vocabulary",
            "wrong_predicates": sorted(f.diff.wrong_preds),
            "wrong_arities": [[p, k] for p, k in sorted(f.diff.wrong_arities)],
            "wrong_constants": sorted(f.diff.wrong_constants),
            "unsafe": [
                {"rule": v.rule.to_text(), "variables": sorted(v.unsafe_variables)}
                for v in f.safety
            ],
        }
        if include_internal:
            finding["missing_predicates"] = sorted(f.missing_preds)
            finding["missing_arities"] = [[p, k] for p, k in sorted(f.missing_arities)]
            finding["missing_constants"] = sorted(f.missing_constants)
    elif isinstance(f, SemanticDiff):
        finding = {
            "kind": "semantic",
            "matched": f.matched,
            "multiplicity_note": f.multiplicity_note,
            "warning": f.warning,
        }
        if include_internal:
            finding["extra"] = _atoms_to_texts(f.extra)
            finding["missing"] = _atoms_to_texts(f.missing)
            finding["student_set"] = _atoms_to_texts(f.student_set.atoms)
            finding["reference_set"] = _atoms_to_texts(f.reference_set.atoms)
        else:
            finding["has_extra"] = bool(f.extra)
            finding["has_missing"] = bool(f.missing)
    elif isinstance(f, TimeoutFinding):
        finding = {"kind": "timeout", "detail": f.detail}
    return {
        "phase_reached": d.phase_reached,
        "passed": d.passed,
        "finding": finding,
        "hints": [
            {"phase": h.phase, "level": h.level, "message": h.message, "payload": dict(h.payload)}
            for h in d.hints
        ],
        "flags": list(d.flags),
        "timings": {str(phase): seconds for phase, seconds in d.timings.items()},
    }


def diagnosis_from_dict(data: Mapping[str, Any]) -> Diagnosis:
    """Rebuild a Diagnosis from its full serialized form."""
    from .parsing import parse_atom_text

    def parse_rule_text(text: str):
        program = parse_program(text)
        if isinstance(program, ParseError) or len(program.rules) != 1:
            raise ValueError(f"not a rule: {text!r}")
        return program.rules[0]

    def atoms(texts: list[str]) -> frozenset[Atom]:
        return frozenset(parse_atom_text(t) for t in texts)

    raw = data.get("finding")
    finding: Finding = None
    if raw is not None and raw["kind"] == "syntax":
        finding = ParseError(
            raw["line"],
            raw["col_start"],
            raw["col_end"],
            frozenset(raw["expected"]),
            raw["found"],
            raw["source_line_text"],
            raw["category"],
            raw.get("found_text", ""),
        )
    elif raw is not None and raw["kind"] == "vocabulary":
        finding = VocabReport(
            VocabDiff(
                frozenset(raw["wrong_predicates"]),
                frozenset((p, k) for p, k in raw["wrong_arities"]),
                frozenset(raw["wrong_constants"]),
            ),
            tuple(
                SafetyViolation(parse_rule_text(v["rule"]), frozenset(v["variables"]))
                for v in raw["unsafe"]
            ),
            frozenset(raw.get("missing_predicates", ())),
            frozenset((p, k) for p, k in raw.get("missing_arities", ())),
            frozenset(raw.get("missing_constants", ())),
        )
    elif raw is not None and raw["kind"] == "semantic":
        finding = SemanticDiff(
            raw["matched"],
            atoms(raw.get("extra", ())),
            atoms(raw.get("missing", ())),
            Interpretation(atoms(raw.get("student_set", ()))),
            Interpretation(atoms(raw.get("reference_set", ()))),
            raw.get("multiplicity_note"),
            raw.get("warning"),
        )
    elif raw is not None and raw["kind"] == "timeout":
        finding = TimeoutFinding(raw["detail"])
    return Diagnosis(
        data["phase_reached"],
        finding,
        tuple(
            Hint(h["phase"], h["level"], h["message"], h.get("payload", {}))
            for h in data.get("hints", ())
        ),
        {int(phase): seconds for phase, seconds in data.get("timings", {}).items()},
        tuple(data.get("flags", ())),
    )
