"""Comparison of student and reference answer sets, and the graduated
semantic hints derived from the difference."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

from .core import Atom, Interpretation, atom_sort_key, sort_atoms
from .hints import PHASE_SEMANTICS, Hint

WARN_BOTH_INCONSISTENT = "both programs have no answer set"


def _interp_key(i: Interpretation) -> tuple:
    return tuple(atom_sort_key(a) for a in i.sorted_atoms())


@dataclass(frozen=True)
class SemanticDiff:
    matched: bool
    extra: frozenset[Atom]
    missing: frozenset[Atom]
    student_set: Interpretation
    reference_set: Interpretation
    multiplicity_note: str | None = None
    warning: str | None = None


def compare(
    student: Collection[Interpretation], reference: Collection[Interpretation]
) -> SemanticDiff:
    """Diff two answer set collections.

    Equal collections match.  Otherwise each reference set is greedily
    paired with the closest student set by symmetric difference, ties
    broken canonically, and the worst differing pair is reported.  A
    cardinality mismatch is noted separately.
    """
    su = frozenset(student)
    sr = frozenset(reference)
    empty = Interpretation(frozenset())
    if su == sr:
        if not su:
            return SemanticDiff(
                True, frozenset(), frozenset(), empty, empty, None, WARN_BOTH_INCONSISTENT
            )
        witness = min(su, key=_interp_key)
        return SemanticDiff(True, frozenset(), frozenset(), witness, witness)

    note = None
    if len(su) != len(sr):
        note = f"{len(su)} answer sets where {len(sr)} expected"

    if not sr:
        witness = min(su, key=_interp_key)
        return SemanticDiff(False, witness.atoms, frozenset(), witness, empty, note)
    if not su:
        witness = min(sr, key=_interp_key)
        return SemanticDiff(False, frozenset(), witness.atoms, empty, witness, note)

    available = sorted(su, key=_interp_key)
    pairs: list[tuple[Interpretation, Interpretation]] = []
    for ref in sorted(sr, key=_interp_key):
        if not available:
            break
        best = min(available, key=lambda s: (len(s.atoms ^ ref.atoms), _interp_key(s)))
        available.remove(best)
        pairs.append((best, ref))

    differing = [(s, r) for s, r in pairs if s.atoms != r.atoms]
    if not differing:
        # Every paired set matches, so only the cardinalities disagree.
        s, r = pairs[0]
        return SemanticDiff(False, frozenset(), frozenset(), s, r, note)
    worst = max(differing, key=lambda p: len(p[0].atoms ^ p[1].atoms))
    s, r = worst
    return SemanticDiff(False, s.atoms - r.atoms, r.atoms - s.atoms, s, r, note)


def _atom_list(atoms: frozenset[Atom]) -> str:
    texts = [a.to_text() for a in sort_atoms(atoms)]
    if len(texts) == 1:
        return texts[0]
    return ", ".join(texts[:-1]) + " and " + texts[-1]


def _pred_list(atoms: frozenset[Atom]) -> tuple[str, list[str]]:
    preds = sorted({a.predicate for a in atoms})
    if len(preds) == 1:
        return f"predicate {preds[0]}", preds
    return "predicates " + ", ".join(preds), preds


def semantic_hint(d: SemanticDiff, level: int) -> list[Hint]:
    """Hints for a failed comparison, at exactly the requested level.

    Level 0 only gives the direction of the mistake, level 1 adds the
    predicates involved, level 2 adds the offending ground atoms.
    """
    if d.matched:
        raise ValueError("semantic_hint needs a failed comparison")
    hints = []
    if d.extra:
        if level == 0:
            hints.append(
                Hint(
                    PHASE_SEMANTICS,
                    0,
                    "The answer set contains more true atoms than it should.",
                    {"kind": "extra_atoms"},
                )
            )
        elif level == 1:
            phrase, preds = _pred_list(d.extra)
            hints.append(
                Hint(
                    PHASE_SEMANTICS,
                    1,
                    f"The answer set contains more true atoms of {phrase} than it should.",
                    {"kind": "extra_atoms", "predicates": preds},
                )
            )
        else:
            hints.append(
                Hint(
                    PHASE_SEMANTICS,
                    2,
                    "The answer set contains true atoms which should be false: "
                    f"{_atom_list(d.extra)}.",
                    {
                        "kind": "extra_atoms",
                        "atoms": [a.to_text() for a in sort_atoms(d.extra)],
                    },
                )
            )
    if d.missing:
        if level == 0:
            hints.append(
                Hint(
                    PHASE_SEMANTICS,
                    0,
                    "The answer set contains fewer true atoms than it should.",
                    {"kind": "missing_atoms"},
                )
            )
        elif level == 1:
            phrase, preds = _pred_list(d.missing)
            hints.append(
                Hint(
                    PHASE_SEMANTICS,
                    1,
                    f"The answer set contains fewer true atoms of {phrase} than it should.",
                    {"kind": "missing_atoms", "predicates": preds},
                )
            )
        else:
            hints.append(
                Hint(
                    PHASE_SEMANTICS,
                    2,
                    "The answer set contains false atoms which should be true: "
                    f"{_atom_list(d.missing)}.",
                    {
                        "kind": "missing_atoms",
                        "atoms": [a.to_text() for a in sort_atoms(d.missing)],
                    },
                )
            )
    if d.multiplicity_note:
        hints.append(
            Hint(
                PHASE_SEMANTICS,
                min(level, 2),
                "The number of answer sets differs from the expected one.",
                {"kind": "multiplicity", "note": d.multiplicity_note},
            )
        )
    return hints
