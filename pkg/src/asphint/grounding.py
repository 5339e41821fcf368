"""Safety checking, Herbrand base construction, and rule instantiation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .core import (
    Atom,
    Program,
    Rule,
    Term,
    constant,
    constants_of,
    signature,
    variables_of,
)


@dataclass(frozen=True)
class SafetyViolation:
    """A rule whose head or negative body uses variables the positive body
    does not bind."""

    rule: Rule
    unsafe_variables: frozenset[str]


class UnsafeProgramError(Exception):
    def __init__(self, violations: list[SafetyViolation]) -> None:
        names = ", ".join(sorted(set().union(*(v.unsafe_variables for v in violations))))
        super().__init__(f"program is unsafe, offending variables: {names}")
        self.violations = violations


def check_safety(p: Program) -> list[SafetyViolation]:
    """Violations in document order; empty means every rule is safe."""
    violations = []
    for r in p.rules:
        bound = variables_of(r.pos_body)
        unsafe = (variables_of(r.head) | variables_of(r.neg_body)) - bound
        if unsafe:
            violations.append(SafetyViolation(r, unsafe))
    return violations


def herbrand_base(p: Program) -> frozenset[Atom]:
    """All atoms formable from the signatures and constants occurring in p."""
    consts = sorted(constants_of(p))
    atoms: set[Atom] = set()
    for pred, arity in {signature(a) for a in p.atoms()}:
        if arity == 0:
            atoms.add(Atom(pred))
            continue
        for combo in itertools.product(consts, repeat=arity):
            atoms.add(Atom(pred, tuple(constant(c) for c in combo)))
    return frozenset(atoms)


@dataclass(frozen=True)
class GroundProgram:
    rules: frozenset[Rule]
    herbrand_base: frozenset[Atom]


def _substitute(r: Rule, binding: dict[str, str]) -> Rule:
    def sub_term(t: Term) -> Term:
        return constant(binding[t.name]) if t.is_variable else t

    def sub_atom(a: Atom) -> Atom:
        return Atom(a.predicate, tuple(sub_term(t) for t in a.args))

    return Rule(
        frozenset(sub_atom(a) for a in r.head),
        frozenset(sub_atom(a) for a in r.pos_body),
        frozenset(sub_atom(a) for a in r.neg_body),
        r.source_span,
    )


def _naive_instances(p: Program) -> Iterator[Rule]:
    consts = sorted(constants_of(p))
    for r in p.rules:
        rule_vars = sorted(variables_of(r))
        if not rule_vars:
            yield r
            continue
        for combo in itertools.product(consts, repeat=len(rule_vars)):
            yield _substitute(r, dict(zip(rule_vars, combo)))


def _match(atom: Atom, fact: Atom, binding: dict[str, str]) -> dict[str, str] | None:
    if atom.predicate != fact.predicate or atom.arity != fact.arity:
        return None
    out = dict(binding)
    for t, f in zip(atom.args, fact.args):
        if t.is_constant:
            if t.name != f.name:
                return None
        elif t.name in out:
            if out[t.name] != f.name:
                return None
        else:
            out[t.name] = f.name
    return out


def _driven_instances(p: Program) -> frozenset[Rule]:
    # Instantiate positive bodies only against atoms already derivable when
    # negation is ignored.  Discarded instances have a positive body that no
    # candidate interpretation can satisfy, so answer sets are unchanged.
    derivable: set[Atom] = set()
    instances: set[Rule] = set()
    changed = True
    while changed:
        changed = False
        for r in p.rules:
            pos = sorted(r.pos_body, key=lambda a: len(variables_of(a)))
            bindings = [dict()]
            for atom in pos:
                next_bindings = []
                for b in bindings:
                    for fact in derivable:
                        nb = _match(atom, fact, b)
                        if nb is not None:
                            next_bindings.append(nb)
                bindings = next_bindings
                if not bindings:
                    break
            for b in bindings:
                inst = _substitute(r, b)
                if inst not in instances:
                    instances.add(inst)
                    changed = True
                    derivable.update(inst.head)
    return frozenset(instances)


def ground(p: Program, prune: bool = False) -> GroundProgram:
    """Instantiate every rule over the constants of p.

    With prune=True only instances whose positive body can ever be derived
    are kept; the answer sets are the same either way.
    """
    violations = check_safety(p)
    if violations:
        raise UnsafeProgramError(violations)
    if prune:
        rules = _driven_instances(p)
    else:
        rules = frozenset(_naive_instances(p))
    return GroundProgram(rules, herbrand_base(p))
