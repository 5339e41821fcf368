"""Graduated, solution-hiding hints for answer set programming exercises.

A student answer is compared against a hidden sample solution in three
phases: syntax, vocabulary, and answer set semantics.  The first failing
phase yields a hint whose strength grows with the number of failed
attempts, and no hint ever contains a rule of the sample solution.
"""

from .bundles import (
    BundleError,
    ExerciseBundle,
    ExerciseValidationError,
    build_exercise,
    load_bundle,
    load_exercise,
    load_exercise_dir,
)
from .core import (
    Atom,
    Interpretation,
    Program,
    Rule,
    Term,
    combine,
    constant,
    is_ground,
    signature,
    variable,
)
from .grounding import (
    GroundProgram,
    SafetyViolation,
    UnsafeProgramError,
    check_safety,
    ground,
    herbrand_base,
)
from .hints import Hint
from .parsing import ParseError, SyntaxHint, parse_program, syntax_hint, tokenize
from .pipeline import (
    PASSED,
    Diagnosis,
    Exercise,
    TimeoutFinding,
    VocabReport,
    diagnosis_from_dict,
    diagnosis_to_dict,
    evaluate_attempt,
    non_reveal_guard,
)
from .semdiff import SemanticDiff, compare, semantic_hint
from .solving import (
    AnswerSetResult,
    BudgetExceeded,
    SolverConfig,
    answer_sets,
    is_answer_set,
    reduct,
    satisfies,
    stratify,
)
from .vocabulary import (
    Vocabulary,
    VocabDiff,
    extract_vocab,
    scoped_vocab,
    vocab_diff,
    vocab_hint,
    wrongarity,
    wrongcons,
    wrongpred,
)

__version__ = "0.1.0"
