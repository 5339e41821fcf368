"""Command line front end.

    asphint check --exercise ex.json --answer answer.lp [--level N] [--format text|json]
    asphint validate --exercise ex.json
    asphint serve [--exercise-dir DIR] [--host H] [--port P]

check exits 0 when the answer is correct, 1 when a hint was issued, and 2
on usage or internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bundles import BundleError, ExerciseValidationError, load_exercise
from .hints import Hint
from .pipeline import diagnosis_to_dict, evaluate_attempt

EXIT_PASSED = 0
EXIT_HINT = 1
EXIT_ERROR = 2


def format_hint_block(h: Hint) -> str:
    caret = h.payload.get("caret")
    if caret:
        return f"Hint:\n{caret}\n{h.message}"
    return f"Hint: {h.message}"


def _cmd_check(args: argparse.Namespace) -> int:
    try:
        exercise = load_exercise(args.exercise)
    except (BundleError, ExerciseValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        answer_source = Path(args.answer).read_text()
    except OSError as exc:
        print(f"error: cannot read answer: {exc}", file=sys.stderr)
        return EXIT_ERROR

    diagnosis = evaluate_attempt(exercise, answer_source, args.level)
    if args.format == "json":
        print(json.dumps(diagnosis_to_dict(diagnosis, include_internal=True), indent=2))
    else:
        if diagnosis.passed:
            print("Correct.")
        else:
            for h in diagnosis.hints:
                print(format_hint_block(h))
    return EXIT_PASSED if diagnosis.passed else EXIT_HINT


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        exercise = load_exercise(args.exercise)
    except (BundleError, ExerciseValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"OK: {exercise.id}")
    return EXIT_PASSED


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import ServiceConfig, serve

    if args.exercise_dir:
        config = ServiceConfig(Path(args.exercise_dir))
    else:
        try:
            config = ServiceConfig.from_env()
        except RuntimeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
    serve(config, host=args.host, port=args.port)
    return EXIT_PASSED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asphint")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="evaluate an answer file against an exercise")
    check.add_argument("--exercise", required=True, help="exercise bundle (JSON)")
    check.add_argument("--answer", required=True, help="answer source file")
    check.add_argument("--level", type=int, default=0, choices=(0, 1, 2))
    check.add_argument("--format", default="text", choices=("text", "json"))
    check.set_defaults(func=_cmd_check)

    validate = sub.add_parser("validate", help="check that an exercise bundle is usable")
    validate.add_argument("--exercise", required=True)
    validate.set_defaults(func=_cmd_validate)

    serve_cmd = sub.add_parser("serve", help="run the HTTP service")
    serve_cmd.add_argument("--exercise-dir", default=None)
    serve_cmd.add_argument("--host", default="127.0.0.1")
    serve_cmd.add_argument("--port", type=int, default=8000)
    serve_cmd.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; keep that code.
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
