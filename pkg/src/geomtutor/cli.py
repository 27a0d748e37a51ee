"""Command-line entry point: lint, build-set, validate, serve.

Exit codes are a scripting contract:
  0 success, 1 lint/validation findings, 2 usage error, 3 I/O or config error.

``validate`` replays the script through the same session engine the HTTP
service uses, so its JSON output matches the service's report body exactly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import load_config
from .corpus_io import (
    canonical_json,
    load_corpus,
    load_corpus_unchecked,
    load_script,
    report_to_text,
)
from .errors import (
    BadRangeError,
    CorpusFormatError,
    CorpusIoError,
    GeomError,
    InvalidConfigError,
    LintFailureError,
    OutOfRangeError,
    SchemaVersionMismatchError,
    UnknownProblemError,
    UnknownSkillError,
)
from .ontology import lint_errors
from .selection import DEFAULT_EFFICIENCY_RATIO, SetRequest, build_set, explain_set
from .validation import replay_session

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _corpus_arg(parser: argparse.ArgumentParser) -> None:
    default = os.environ.get("GEOM_CORPUS")
    parser.add_argument(
        "corpus",
        nargs="?" if default else None,
        default=default,
        help="corpus file (defaults to $GEOM_CORPUS)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_lint = sub.add_parser("lint", help="check a corpus for integrity problems")
    _corpus_arg(p_lint)
    p_lint.add_argument("--format", choices=("human", "json"), default="human")

    p_set = sub.add_parser("build-set", help="build a problem set for a target skill")
    _corpus_arg(p_set)
    p_set.add_argument("--target", required=True, help="target skill id")
    p_set.add_argument("--known", default="", help="comma-separated skill ids or @file with one per line")
    p_set.add_argument("--count", type=int, default=5)
    p_set.add_argument("--mode", choices=("strict", "efficiency"), default="strict")
    p_set.add_argument("--ratio", type=float, default=DEFAULT_EFFICIENCY_RATIO)
    p_set.add_argument("--band", default=None, help="difficulty window lo:hi")
    p_set.add_argument("--reinforce", action="store_true")
    p_set.add_argument("--format", choices=("human", "json"), default="human")

    p_val = sub.add_parser("validate", help="batch-validate a proof script")
    _corpus_arg(p_val)
    p_val.add_argument("script")
    p_val.add_argument("--from", dest="from_", type=int, default=None)
    p_val.add_argument("--to", dest="to_", type=int, default=None)
    p_val.add_argument("--format", choices=("human", "json", "text"), default="human")

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    _corpus_arg(p_serve)
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--config", default=None, help="JSON config file")

    return parser


def _parse_known(raw: str) -> frozenset[str]:
    raw = raw.strip()
    if not raw:
        return frozenset()
    if raw.startswith("@"):
        with open(raw[1:], encoding="utf-8") as fh:
            return frozenset(line.strip() for line in fh if line.strip())
    return frozenset(part.strip() for part in raw.split(",") if part.strip())


def _parse_band(raw: str | None) -> tuple[int, int] | None:
    if raw is None:
        return None
    lo, _, hi = raw.partition(":")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise OutOfRangeError(f"band must look like 5:20, got {raw!r}")


def cmd_lint(args) -> int:
    _, diagnostics = load_corpus_unchecked(args.corpus)
    errors = lint_errors(diagnostics)
    warnings = [d for d in diagnostics if d.severity == "Warning"]
    if args.format == "json":
        print(canonical_json({
            "diagnostics": [d.as_dict() for d in diagnostics],
            "errors": len(errors),
            "warnings": len(warnings),
        }), end="")
    else:
        for d in diagnostics:
            print(f"{d.severity:8} {d.code:18} {d.subject:20} {d.message}")
        print(f"{len(errors)} errors, {len(warnings)} warnings")
    return EXIT_FINDINGS if errors else EXIT_OK


def cmd_build_set(args) -> int:
    catalog = load_corpus(args.corpus)
    request = SetRequest(
        target=args.target,
        known=_parse_known(args.known),
        count=args.count,
        difficulty_range=_parse_band(args.band),
        mode=args.mode,
        ratio=args.ratio,
        reinforce=args.reinforce,
    )
    built = build_set(catalog, request)
    payload = built.as_dict()
    payload["report"] = explain_set(catalog, request, built)
    if args.format == "json":
        print(canonical_json(payload), end="")
        return EXIT_OK
    report = payload["report"]
    print(f"target: {report['target']}  mode: {report['mode']}"
          + (f"  ratio: {report['ratio']}" if report["ratio"] else ""))
    if not report["blocks"]:
        print("no eligible problems")
    for block in report["blocks"]:
        print(f"\n{block['problem_id']}  d{block['difficulty']} ({block['band']})  "
              f"via {block['witness_graph']}")
        print(f"  {block['statement_text']}")
        if block["shortcut_graph"]:
            print(f"  note: accessible alternative {block['shortcut_graph']} exists")
    if payload["shortfall"]:
        print("\nSHORTFALL: fewer eligible problems than requested")
    return EXIT_OK


def cmd_validate(args) -> int:
    catalog = load_corpus(args.corpus)
    problem_id, known, lines = load_script(args.script)
    if problem_id not in catalog.problems:
        raise UnknownProblemError(f"script references unknown problem {problem_id!r}")
    if (args.from_ is None) != (args.to_ is None):
        raise BadRangeError("--from and --to must be given together")
    if args.from_ is not None:
        if not (1 <= args.from_ <= args.to_ <= len(lines)):
            raise BadRangeError(f"bad range {args.from_}..{args.to_} for {len(lines)} lines")
        lines = lines[args.from_ - 1 : args.to_]
    session = replay_session("cli", catalog, catalog.problems[problem_id], lines, known)
    report = session.teacher_report().as_dict()
    if args.format == "json":
        print(canonical_json(report), end="")
    else:
        print(report_to_text(report), end="")
    return EXIT_FINDINGS if report["manual_review"] else EXIT_OK


def cmd_serve(args) -> int:
    from .service import run_server

    config = load_config(args.config, port=args.port, corpus_path=args.corpus)
    catalog = load_corpus(config.corpus_path or args.corpus)
    try:
        run_server(catalog, config)
    except OSError as exc:  # port already bound, permissions, ...
        print(f"error: cannot serve: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits with 2 on usage errors already
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "corpus", None) is None:
        print("error: no corpus given and GEOM_CORPUS is not set", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "lint":
            return cmd_lint(args)
        if args.command == "build-set":
            return cmd_build_set(args)
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "serve":
            return cmd_serve(args)
        return EXIT_USAGE
    except (CorpusIoError, SchemaVersionMismatchError, CorpusFormatError, InvalidConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except LintFailureError as exc:
        print(f"error: corpus has lint errors; run `geom lint` for details ({exc})", file=sys.stderr)
        return EXIT_FINDINGS
    except (UnknownSkillError, UnknownProblemError, BadRangeError, OutOfRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
