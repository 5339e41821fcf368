"""Shared fixtures: the worked road-map exercise and its sample answers."""

from __future__ import annotations

from pathlib import Path

import pytest

from asphint.bundles import load_exercise

REPO_ROOT = Path(__file__).resolve().parent.parent
CITIES_BUNDLE = REPO_ROOT / "exercises" / "cities.json"

GIVEN_SRC = """\
road(istanbul,kocaeli). road(karabuk,bolu).
road(kocaeli,sakarya). road(duzce,karabuk).
blocked(duzce,zonguldak). road(bolu,zonguldak).
road(duzce,zonguldak). road(sakarya,duzce).
% Roads run in both directions.
road(X,Y) :- road(Y,X).
"""

REFERENCE_SRC = "open_road(X,Y) :- road(X,Y), not blocked(X,Y), not blocked(Y,X)."

# Six characteristic student answers, from malformed to almost right.
ANSWER_MISSING_DOT = "open_road(X,Y) :- road(X,Y), not blocked(X,Y)"
ANSWER_SEMICOLON = "open_road(X,Y) :- road(X,Y), not blocked(X,Y);"
ANSWER_WRONG_PRED = "open_road(X,Y) :- road(X,Y), not obstacle(X,Y)."
ANSWER_WRONG_ARITY = "open_road(X,Y) :- road(X), not blocked(X,Y)."
ANSWER_WRONG_CONST = "open_road(X,Y) :- road(x,y), not blocked(X,Y)."
ANSWER_ONE_WAY = "open_road(X,Y) :- road(X,Y), not blocked(duzce,bolu)."

SAMPLE_ANSWERS = {
    "missing_dot": ANSWER_MISSING_DOT,
    "semicolon": ANSWER_SEMICOLON,
    "wrong_pred": ANSWER_WRONG_PRED,
    "wrong_arity": ANSWER_WRONG_ARITY,
    "wrong_const": ANSWER_WRONG_CONST,
    "one_way": ANSWER_ONE_WAY,
}


@pytest.fixture(scope="session")
def cities_exercise():
    return load_exercise(CITIES_BUNDLE)


# Filled in by the acceptance tests; printed after the run so the verdict
# per criterion survives pytest's output capture.
ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, status in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{status}  {name}")
