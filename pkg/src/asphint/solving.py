"""Answer set computation under stable model semantics.

Two evaluation paths:

* stratified fixpoint, used when the program is non-disjunctive and its
  predicate dependency graph has no cycle through negation; it derives the
  perfect model layer by layer and then filters it through the constraints;
* exhaustive search over candidate interpretations, used otherwise; the
  candidates are the subsets of the ground rule heads that contain every
  unconditional fact, and a configurable budget bounds how many are examined.

Both paths agree wherever both apply.  Budget exhaustion raises
BudgetExceeded, which is a resource failure and must never be read as
"no answer set".
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .core import Atom, Interpretation, Program, Rule, is_ground
from .grounding import GroundProgram, UnsafeProgramError, check_safety, ground

STRATIFIED = "stratified-fixpoint"
EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class SolverConfig:
    candidate_budget: int = 1 << 22
    time_budget: float | None = None
    method: str = "auto"  # auto | stratified | exhaustive
    prune: bool = True


@dataclass(frozen=True)
class SolverStats:
    candidates: int
    elapsed: float


@dataclass(frozen=True)
class AnswerSetResult:
    answer_sets: frozenset[Interpretation]
    method: str
    stats: SolverStats


class BudgetExceeded(Exception):
    """Raised when the candidate or wall-clock budget runs out."""


def satisfies(i: Interpretation, r: Rule) -> bool:
    """Classical satisfaction of a single ground rule."""
    if not is_ground(r):
        raise ValueError(f"rule is not ground: {r.to_text()}")
    if r.neg_body & i.atoms:
        return True
    if not r.pos_body <= i.atoms:
        return True
    return bool(r.head & i.atoms)


def reduct(g: GroundProgram, i: Interpretation) -> GroundProgram:
    """Drop rules whose negative body intersects i, strip the rest."""
    kept = frozenset(
        Rule(r.head, r.pos_body, frozenset(), r.source_span)
        for r in g.rules
        if not (r.neg_body & i.atoms)
    )
    return GroundProgram(kept, g.herbrand_base)


def _forced_atoms(rules: frozenset[Rule]) -> frozenset[Atom]:
    # Heads of single-headed rules with no body at all: members of every model.
    out = set()
    for r in rules:
        if len(r.head) == 1 and not r.pos_body and not r.neg_body:
            out |= r.head
    return frozenset(out)


def is_answer_set(g: GroundProgram, i: Interpretation) -> bool:
    """True iff i is a subset-minimal model of the reduct of g by i."""
    red = reduct(g, i)
    if not all(satisfies(i, r) for r in red.rules):
        return False
    atoms = sorted({a for r in red.rules for a in r.atoms()} | set(i.atoms), key=Atom.to_text)
    index = {a: n for n, a in enumerate(atoms)}
    masks = [
        (
            sum(1 << index[a] for a in r.head),
            sum(1 << index[a] for a in r.pos_body),
        )
        for r in red.rules
    ]
    i_mask = sum(1 << index[a] for a in i.atoms)
    forced = _forced_atoms(red.rules)
    forced_mask = sum(1 << index[a] for a in forced)
    return _is_minimal_model(i_mask, forced_mask, masks)


def _models(mask: int, rule_masks: list[tuple[int, int]]) -> bool:
    for head, pos in rule_masks:
        if not (head & mask) and not (pos & ~mask):
            return False
    return True


def _is_minimal_model(i_mask: int, forced_mask: int, rule_masks: list[tuple[int, int]]) -> bool:
    free = i_mask & ~forced_mask
    if not free:
        return True
    sub = (free - 1) & free
    while True:
        if _models(forced_mask | sub, rule_masks):
            return False
        if not sub:
            return True
        sub = (sub - 1) & free


def stratify(p: Program) -> dict[str, int] | None:
    """Predicate strata, or None when some cycle runs through negation."""
    preds = {a.predicate for a in p.atoms()}
    strata = {name: 0 for name in preds}
    bound = len(preds) + 1
    while True:
        changed = False
        for r in p.rules:
            for h in r.head:
                for b in r.pos_body:
                    if strata[h.predicate] < strata[b.predicate]:
                        strata[h.predicate] = strata[b.predicate]
                        changed = True
                for b in r.neg_body:
                    if strata[h.predicate] < strata[b.predicate] + 1:
                        strata[h.predicate] = strata[b.predicate] + 1
                        changed = True
                if strata[h.predicate] >= bound:
                    # A stratum can only climb past the predicate count when
                    # negation occurs inside a dependency cycle.
                    return None
        if not changed:
            return strata


def _perfect_model(g: GroundProgram, strata: dict[str, int]) -> Interpretation | None:
    defining: dict[int, list[Rule]] = {}
    constraints = []
    for r in g.rules:
        if r.is_constraint:
            constraints.append(r)
        else:
            (h,) = r.head
            defining.setdefault(strata[h.predicate], []).append(r)
    model: set[Atom] = set()
    for level in sorted(defining):
        changed = True
        while changed:
            changed = False
            for r in defining[level]:
                (h,) = r.head
                if h in model:
                    continue
                if r.pos_body <= model and not (r.neg_body & model):
                    model.add(h)
                    changed = True
    for c in constraints:
        if c.pos_body <= model and not (c.neg_body & model):
            return None
    return Interpretation(frozenset(model))


def _exhaustive(g: GroundProgram, config: SolverConfig, deadline: float | None) -> tuple[frozenset[Interpretation], int]:
    head_atoms = sorted({a for r in g.rules for a in r.head}, key=Atom.to_text)
    forced = _forced_atoms(g.rules)
    free = [a for a in head_atoms if a not in forced]
    # Free candidate atoms occupy the low bit positions so that the loop
    # counter doubles as the candidate mask.
    atoms = free + sorted(
        {a for r in g.rules for a in r.atoms()} - set(free), key=Atom.to_text
    )
    index = {a: n for n, a in enumerate(atoms)}
    n_free = len(free)
    if 1 << n_free > config.candidate_budget:
        raise BudgetExceeded(
            f"candidate budget exceeded: 2^{n_free} candidates, "
            f"budget {config.candidate_budget}"
        )
    rule_masks = [
        (
            sum(1 << index[a] for a in r.head),
            sum(1 << index[a] for a in r.pos_body),
            sum(1 << index[a] for a in r.neg_body),
        )
        for r in g.rules
    ]
    forced_mask = sum(1 << index[a] for a in forced)
    found = []
    examined = 0
    for cand in range(1 << n_free):
        examined += 1
        if deadline is not None and examined % 1024 == 0 and time.perf_counter() > deadline:
            raise BudgetExceeded("time budget exceeded during exhaustive search")
        i_mask = forced_mask | cand
        kept = [(h, p) for h, p, n in rule_masks if not (n & i_mask)]
        if not _models(i_mask, kept):
            continue
        reduct_forced = 0
        for h, p in kept:
            if not p and h.bit_count() == 1:
                reduct_forced |= h
        if _is_minimal_model(i_mask, reduct_forced, kept):
            found.append(i_mask)
    interpretations = frozenset(
        Interpretation(frozenset(a for a in atoms if (1 << index[a]) & m)) for m in found
    )
    return interpretations, examined


def answer_sets(p: Program, config: SolverConfig | None = None) -> AnswerSetResult:
    """All answer sets of p, with the evaluation method and search stats."""
    config = config or SolverConfig()
    started = time.perf_counter()
    deadline = started + config.time_budget if config.time_budget is not None else None
    violations = check_safety(p)
    if violations:
        raise UnsafeProgramError(violations)

    non_disjunctive = all(len(r.head) <= 1 for r in p.rules)
    strata = stratify(p) if non_disjunctive else None
    if config.method == STRATIFIED or config.method == "stratified":
        if strata is None:
            raise ValueError("program is disjunctive or not stratified")
        method = STRATIFIED
    elif config.method == EXHAUSTIVE or config.method == "exhaustive":
        method = EXHAUSTIVE
    elif config.method == "auto":
        method = STRATIFIED if strata is not None else EXHAUSTIVE
    else:
        raise ValueError(f"unknown solver method {config.method!r}")

    g = ground(p, prune=config.prune)
    if deadline is not None and time.perf_counter() > deadline:
        raise BudgetExceeded("time budget exceeded during grounding")

    if method == STRATIFIED:
        assert strata is not None
        model = _perfect_model(g, strata)
        sets = frozenset() if model is None else frozenset((model,))
        examined = 1
    else:
        sets, examined = _exhaustive(g, config, deadline)

    ordered = sorted(sets, key=lambda i: len(i))
    for idx, small in enumerate(ordered):
        for large in ordered[idx + 1 :]:
            assert not small.atoms < large.atoms, "answer sets must form an anti-chain"

    elapsed = time.perf_counter() - started
    return AnswerSetResult(sets, method, SolverStats(examined, elapsed))
