"""Vocabulary extraction and the student-minus-reference differences.

The three differences are computed over whole programs, with the exercise
context included on both sides, so vocabulary the context itself introduces
never counts against the student:

    wrong predicates   preds(P_U)       \\ preds(P_R)
    wrong arities      predarities(P_U) \\ predarities(P_R)
    wrong constants    constants(P_U)   \\ constants(P_R)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Atom, Program, signature
from .hints import PHASE_VOCABULARY, Hint


@dataclass(frozen=True)
class Vocabulary:
    preds: frozenset[str] = frozenset()
    predarities: frozenset[tuple[str, int]] = frozenset()
    constants: frozenset[str] = frozenset()

    def union(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(
            self.preds | other.preds,
            self.predarities | other.predarities,
            self.constants | other.constants,
        )

    def issubset(self, other: "Vocabulary") -> bool:
        return (
            self.preds <= other.preds
            and self.predarities <= other.predarities
            and self.constants <= other.constants
        )


def extract_vocab(x: Program | Iterable[Atom]) -> Vocabulary:
    atoms = x.atoms() if isinstance(x, Program) else x
    preds = set()
    arities = set()
    consts = set()
    for a in atoms:
        preds.add(a.predicate)
        arities.add(signature(a))
        consts.update(t.name for t in a.args if t.is_constant)
    return Vocabulary(frozenset(preds), frozenset(arities), frozenset(consts))


def scoped_vocab(p: Program, scope: str = "all") -> Vocabulary:
    """Vocabulary of the heads, the bodies, or all atoms of p."""
    if scope == "all":
        return extract_vocab(p.atoms())
    if scope == "head":
        return extract_vocab(a for r in p.rules for a in r.head)
    if scope == "body":
        return extract_vocab(a for r in p.rules for a in (r.pos_body | r.neg_body))
    raise ValueError(f"unknown scope {scope!r}")


def wrongpred(p_u: Program, p_r: Program) -> frozenset[str]:
    return scoped_vocab(p_u).preds - scoped_vocab(p_r).preds


def wrongarity(p_u: Program, p_r: Program) -> frozenset[tuple[str, int]]:
    return scoped_vocab(p_u).predarities - scoped_vocab(p_r).predarities


def wrongcons(p_u: Program, p_r: Program) -> frozenset[str]:
    return scoped_vocab(p_u).constants - scoped_vocab(p_r).constants


@dataclass(frozen=True)
class VocabDiff:
    wrong_preds: frozenset[str]
    wrong_arities: frozenset[tuple[str, int]]
    wrong_constants: frozenset[str]

    def is_empty(self) -> bool:
        return not (self.wrong_preds or self.wrong_arities or self.wrong_constants)


def vocab_diff(p_u: Program, p_r: Program) -> VocabDiff:
    return VocabDiff(wrongpred(p_u, p_r), wrongarity(p_u, p_r), wrongcons(p_u, p_r))


def vocab_hint(d: VocabDiff, p_r: Program, level: int) -> list[Hint]:
    """Hints for a non-empty diff: predicates first, then arities, then
    constants, each in canonical order.  Level 1 may reveal the expected
    arity of a misused predicate; nothing stronger exists in this phase."""
    if d.is_empty():
        raise ValueError("vocab_hint needs a non-empty diff")
    level = min(level, 1)
    reference = scoped_vocab(p_r)
    hints = []
    for pred in sorted(d.wrong_preds):
        hints.append(
            Hint(
                PHASE_VOCABULARY,
                level,
                f"Predicate {pred} should not be used.",
                {"kind": "wrong_predicate", "predicate": pred},
            )
        )
    for pred, arity in sorted(d.wrong_arities):
        # A predicate already reported as wrong makes its arity finding
        # redundant.
        if pred in d.wrong_preds:
            continue
        message = f"Predicate {pred} was used with arity {arity} which is unexpected."
        payload = {"kind": "wrong_arity", "predicate": pred, "arity": arity}
        expected = sorted(k for name, k in reference.predarities if name == pred)
        if level >= 1 and expected:
            if len(expected) == 1:
                message += f" The arity of {pred} in the sample solution is {expected[0]}."
            else:
                listed = ", ".join(str(k) for k in expected)
                message += f" The arity of {pred} in the sample solution is one of {listed}."
            payload["expected_arities"] = expected
        hints.append(Hint(PHASE_VOCABULARY, level, message, payload))
    if d.wrong_constants:
        listed = ", ".join(sorted(d.wrong_constants))
        hints.append(
            Hint(
                PHASE_VOCABULARY,
                level,
                "The program contains the following unexpected constants "
                f"which are not required in the solution: {listed}.",
                {"kind": "wrong_constants", "constants": sorted(d.wrong_constants)},
            )
        )
    return hints
