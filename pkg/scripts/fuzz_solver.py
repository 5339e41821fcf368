"""Randomized agreement experiment for the two solver paths.

Generates safe random programs, solves each with the exhaustive search,
and checks it against a brute-force enumeration of every subset of the
Herbrand base.  Stratified programs are additionally pushed through the
layered fixpoint and must produce the identical single answer set.

    python3 scripts/fuzz_solver.py --count 500 --seed 7
"""

import argparse
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "src"))
sys.path.insert(0, str(REPO_ROOT / "tests"))

from asphint.solving import STRATIFIED, SolverConfig, answer_sets
from genprog import small_corpus
from oracles import bruteforce_answer_sets


@dataclass(frozen=True)
class FuzzConfig:
    count: int = 300
    seed: int = 0
    stratified_share: float = 0.4


def run(config: FuzzConfig) -> int:
    n_strat = int(config.count * config.stratified_share)
    n_free = config.count - n_strat
    rng = random.Random(config.seed)
    started = time.perf_counter()
    disagreements = 0
    multiplicity = {0: 0, 1: 0, 2: 0}

    corpus = small_corpus(seed=rng.randrange(1 << 30), count=n_free)
    for p in corpus:
        expected = bruteforce_answer_sets(p)
        got = {i.atoms for i in answer_sets(p).answer_sets}
        if got != expected:
            disagreements += 1
            print("DISAGREEMENT on:\n" + p.to_text())
        multiplicity[min(len(got), 2)] = multiplicity.get(min(len(got), 2), 0) + 1

    strat = small_corpus(seed=rng.randrange(1 << 30), count=n_strat, stratified=True)
    strat_failures = 0
    for p in strat:
        fix = answer_sets(p, SolverConfig(method="stratified"))
        exh = answer_sets(p, SolverConfig(method="exhaustive"))
        ok = (
            fix.method == STRATIFIED
            and len(fix.answer_sets) == 1
            and fix.answer_sets == exh.answer_sets
        )
        if not ok:
            strat_failures += 1
            print("STRATIFIED MISMATCH on:\n" + p.to_text())

    elapsed = time.perf_counter() - started
    print(f"programs checked:      {config.count}")
    print(f"  vs brute force:      {n_free} ({disagreements} disagreements)")
    print(f"  stratified vs both:  {n_strat} ({strat_failures} mismatches)")
    print(f"answer set counts:     0: {multiplicity[0]}  1: {multiplicity[1]}  2+: {multiplicity[2]}")
    print(f"elapsed:               {elapsed:.2f}s")
    return 1 if disagreements or strat_failures else 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=300)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--stratified-share", type=float, default=0.4)
    args = parser.parse_args()
    return run(FuzzConfig(args.count, args.seed, args.stratified_share))


if __name__ == "__main__":
    sys.exit(main())
