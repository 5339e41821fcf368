"""The hint record handed to students.

Hints are graduated: level 0 states a direction, level 1 adds names,
level 2 adds concrete atoms.  Higher levels are only served after repeated
failed attempts, and no level ever includes a solution rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

PHASE_SYNTAX = 1
PHASE_VOCABULARY = 2
PHASE_SEMANTICS = 3


@dataclass(frozen=True)
class Hint:
    phase: int
    level: int
    message: str
    payload: Mapping[str, Any] = field(default_factory=dict)
