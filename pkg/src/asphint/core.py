"""Core data model: terms, atoms, rules, programs, interpretations.

Rules follow the usual disjunctive shape

    h1 | ... | hk :- b1, ..., bn, not c1, ..., not cm.

with set semantics for the head and for each body part.  A rule with an
empty body is a fact, a rule with an empty head is a constraint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

CONSTANT = "constant"
VARIABLE = "variable"


@dataclass(frozen=True)
class Term:
    kind: str
    name: str

    def __post_init__(self) -> None:
        if self.kind not in (CONSTANT, VARIABLE):
            raise ValueError(f"unknown term kind {self.kind!r}")
        if not self.name:
            raise ValueError("empty term name")
        if self.kind == CONSTANT and not (self.name[0].islower() or self.name.isdigit()):
            raise ValueError(
                f"constant must start with a lowercase letter or be an integer: {self.name!r}"
            )
        if self.kind == VARIABLE and not self.name[0].isupper():
            raise ValueError(f"variable must start with an uppercase letter: {self.name!r}")

    @property
    def is_constant(self) -> bool:
        return self.kind == CONSTANT

    @property
    def is_variable(self) -> bool:
        return self.kind == VARIABLE

    def to_text(self) -> str:
        return self.name


def constant(name: str) -> Term:
    return Term(CONSTANT, name)


def variable(name: str) -> Term:
    return Term(VARIABLE, name)


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        if not self.predicate or not self.predicate[0].islower():
            raise ValueError(f"predicate must start with a lowercase letter: {self.predicate!r}")

    @property
    def arity(self) -> int:
        return len(self.args)

    def to_text(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(t.name for t in self.args)})"


def signature(a: Atom) -> tuple[str, int]:
    return (a.predicate, a.arity)


def atom_sort_key(a: Atom) -> tuple[str, int, tuple[str, ...]]:
    # Canonical order: predicate, then arity, then argument names.
    return (a.predicate, a.arity, tuple(t.name for t in a.args))


def sort_atoms(atoms: Iterable[Atom]) -> list[Atom]:
    return sorted(atoms, key=atom_sort_key)


@dataclass(frozen=True)
class Rule:
    head: frozenset[Atom] = frozenset()
    pos_body: frozenset[Atom] = frozenset()
    neg_body: frozenset[Atom] = frozenset()
    # (start_line, start_col, end_line, end_col), 1-based; not part of rule identity.
    source_span: tuple[int, int, int, int] | None = field(default=None, compare=False)

    @property
    def is_fact(self) -> bool:
        return not self.pos_body and not self.neg_body

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_disjunctive(self) -> bool:
        return len(self.head) > 1

    def atoms(self) -> Iterator[Atom]:
        yield from self.head
        yield from self.pos_body
        yield from self.neg_body

    def to_text(self) -> str:
        head = " | ".join(a.to_text() for a in sort_atoms(self.head))
        body = [a.to_text() for a in sort_atoms(self.pos_body)]
        body += [f"not {a.to_text()}" for a in sort_atoms(self.neg_body)]
        if body:
            return f"{head} :- {', '.join(body)}." if head else f":- {', '.join(body)}."
        return f"{head}." if head else ":-."


@dataclass(frozen=True, eq=False)
class Program:
    rules: tuple[Rule, ...] = ()

    def __init__(self, rules: Iterable[Rule] = ()) -> None:
        object.__setattr__(self, "rules", tuple(rules))

    def rule_set(self) -> frozenset[Rule]:
        return frozenset(self.rules)

    # Rule order and duplication never matter for analyses, so neither do
    # they for program identity.
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Program):
            return NotImplemented
        return self.rule_set() == other.rule_set()

    def __hash__(self) -> int:
        return hash(self.rule_set())

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def atoms(self) -> Iterator[Atom]:
        for r in self.rules:
            yield from r.atoms()

    def to_text(self) -> str:
        return "\n".join(r.to_text() for r in self.rules)


def combine(*programs: Program) -> Program:
    rules: list[Rule] = []
    for p in programs:
        rules.extend(p.rules)
    return Program(rules)


@dataclass(frozen=True)
class Interpretation:
    atoms: frozenset[Atom] = frozenset()

    def __post_init__(self) -> None:
        for a in self.atoms:
            if not is_ground(a):
                raise ValueError(f"interpretation atom must be ground: {a.to_text()}")

    def __contains__(self, a: Atom) -> bool:
        return a in self.atoms

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def sorted_atoms(self) -> list[Atom]:
        return sort_atoms(self.atoms)

    def to_text(self) -> str:
        return "{" + ", ".join(a.to_text() for a in self.sorted_atoms()) + "}"


def is_ground(x: Any) -> bool:
    """True when x contains no variables."""
    if isinstance(x, Term):
        return x.is_constant
    if isinstance(x, Atom):
        return all(t.is_constant for t in x.args)
    if isinstance(x, Rule):
        return all(is_ground(a) for a in x.atoms())
    if isinstance(x, Program):
        return all(is_ground(r) for r in x.rules)
    raise TypeError(f"cannot decide groundness of {type(x).__name__}")


def variables_of(x: Any) -> frozenset[str]:
    if isinstance(x, Term):
        return frozenset((x.name,)) if x.is_variable else frozenset()
    if isinstance(x, Atom):
        return frozenset(t.name for t in x.args if t.is_variable)
    if isinstance(x, Rule):
        return variables_of(x.atoms())
    if isinstance(x, Program):
        return variables_of(x.rules)
    if isinstance(x, Iterable):
        out: set[str] = set()
        for item in x:
            out |= variables_of(item)
        return frozenset(out)
    raise TypeError(f"cannot collect variables of {type(x).__name__}")


def constants_of(x: Any) -> frozenset[str]:
    if isinstance(x, Term):
        return frozenset((x.name,)) if x.is_constant else frozenset()
    if isinstance(x, Atom):
        return frozenset(t.name for t in x.args if t.is_constant)
    if isinstance(x, Rule):
        return constants_of(x.atoms())
    if isinstance(x, Program):
        return constants_of(x.rules)
    if isinstance(x, Iterable):
        out: set[str] = set()
        for item in x:
            out |= constants_of(item)
        return frozenset(out)
    raise TypeError(f"cannot collect constants of {type(x).__name__}")
