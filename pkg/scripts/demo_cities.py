"""Walk the shipped road-map exercise through six characteristic answers.

Shows, for each answer, which phase caught it and the hints a student
would see at the requested level.

    python3 scripts/demo_cities.py [--level N]
"""

import argparse
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "src"))

from asphint.bundles import load_exercise
from asphint.cli import format_hint_block
from asphint.pipeline import evaluate_attempt

ANSWERS = [
    ("missing final dot", "open_road(X,Y) :- road(X,Y), not blocked(X,Y)"),
    ("semicolon instead of dot", "open_road(X,Y) :- road(X,Y), not blocked(X,Y);"),
    ("made-up predicate", "open_road(X,Y) :- road(X,Y), not obstacle(X,Y)."),
    ("wrong arity", "open_road(X,Y) :- road(X), not blocked(X,Y)."),
    ("constants instead of variables", "open_road(X,Y) :- road(x,y), not blocked(X,Y)."),
    ("hard-coded one blockage", "open_road(X,Y) :- road(X,Y), not blocked(duzce,bolu)."),
    ("a correct rewriting", "open_road(A,B) :- road(A,B), not blocked(A,B), not blocked(B,A)."),
]

PHASE_NAMES = {1: "syntax", 2: "vocabulary", 3: "semantics", "passed": "passed"}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--level", type=int, default=2, choices=(0, 1, 2))
    args = parser.parse_args()

    exercise = load_exercise(REPO_ROOT / "exercises" / "cities.json")
    print(f"exercise: {exercise.id}")
    print(exercise.statement.strip())
    print()

    for label, source in ANSWERS:
        diagnosis = evaluate_attempt(exercise, source, args.level)
        print("=" * 72)
        print(f"answer ({label}):")
        print(f"    {source}")
        print(f"stopped in phase: {PHASE_NAMES[diagnosis.phase_reached]}")
        if diagnosis.passed:
            print("Correct.")
        for hint in diagnosis.hints:
            print(format_hint_block(hint))
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
