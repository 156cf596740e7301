"""Command-line front end.

Subcommands: mutate, flip, quiver, enumerate, verify, validate.  Models are
exchanged as JSON (see README for the schemas); DOT is output-only.  Exit
statuses: 0 success, 1 verification failure, 2 malformed JSON or bad usage,
3 invalid model, 4 index out of range, 5 enumeration guard exceeded.
The ANGULATOR_GUARD environment variable overrides the enumeration guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import annulus as ann
from . import disk
from .disk import DEFAULT_GUARD, DiskConfig, GuardExceeded, InvalidAngulation
from .quiver import ColoredQuiver, VertexRangeError
from .verify import run_suite

EXIT_BAD_JSON = 2
EXIT_INVALID = 3
EXIT_RANGE = 4
EXIT_GUARD = 5


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read_input(spec: str) -> dict:
    """Load JSON from '-' (stdin), an inline object, or a file path."""
    try:
        if spec == "-":
            return json.load(sys.stdin)
        if spec.lstrip().startswith("{"):
            return json.loads(spec)
        with open(spec) as handle:
            return json.load(handle)
    except (json.JSONDecodeError, OSError) as exc:
        raise CliError(EXIT_BAD_JSON, f"cannot read input: {exc}")


def _dump(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _load_quiver(data: dict) -> ColoredQuiver:
    try:
        quiver = ColoredQuiver.from_json_dict(data)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CliError(EXIT_BAD_JSON, f"malformed quiver JSON: {exc}")
    problems = quiver.validate()
    if problems:
        raise CliError(
            EXIT_INVALID,
            "invalid quiver: " + "; ".join(map(str, problems)),
        )
    return quiver


def _load_angulation(data: dict):
    kind = data.get("type")
    try:
        if kind == "disk":
            angulation = disk.DiskAngulation.from_json_dict(data)
        elif kind == "annulus":
            angulation = ann.AnnulusAngulation.from_json_dict(data)
        else:
            raise CliError(EXIT_BAD_JSON, f"unknown model type {kind!r}")
    except CliError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CliError(EXIT_BAD_JSON, f"malformed angulation JSON: {exc}")
    problems = angulation.violations()
    if problems:
        raise CliError(EXIT_INVALID, "invalid angulation: " + "; ".join(problems))
    return angulation


def cmd_mutate(args) -> int:
    quiver = _load_quiver(_read_input(args.input))
    try:
        if args.inverse:
            result = quiver.mutate_inverse(args.vertex)
        elif args.procedural:
            result = quiver.mutate_procedural(args.vertex)
        else:
            result = quiver.mutate(args.vertex)
    except VertexRangeError as exc:
        raise CliError(EXIT_RANGE, str(exc))
    if args.format == "dot":
        print(result.to_dot())
    else:
        print(_dump(result.to_json_dict()))
    return 0


def cmd_flip(args) -> int:
    angulation = _load_angulation(_read_input(args.input))
    arcs = (
        angulation.diagonals
        if isinstance(angulation, disk.DiskAngulation)
        else angulation.arcs
    )
    if not (0 <= args.arc < len(arcs)):
        raise CliError(EXIT_RANGE, f"arc index {args.arc} outside 0..{len(arcs) - 1}")
    try:
        flipped = angulation.flip(arcs[args.arc])
    except ann.UnsupportedFlip as exc:
        raise CliError(EXIT_INVALID, str(exc))
    print(_dump(flipped.to_json_dict()))
    return 0


def cmd_quiver(args) -> int:
    angulation = _load_angulation(_read_input(args.input))
    quiver = angulation.quiver_of()
    if args.format == "dot":
        print(quiver.to_dot())
    else:
        print(_dump(quiver.to_json_dict()))
    return 0


def cmd_validate(args) -> int:
    data = _read_input(args.input)
    if "arrows" in data:
        _load_quiver(data)
    else:
        _load_angulation(data)
    print("valid")
    return 0


def cmd_enumerate(args) -> int:
    try:
        cfg = DiskConfig(args.m, args.sides)
    except ValueError as exc:
        raise CliError(EXIT_BAD_JSON, str(exc))
    try:
        count, _ = disk.enumerate_angulations(cfg, guard=args.guard)
        print(count)
        if args.dot:
            graph = disk.flip_graph(cfg, guard=args.guard)
            with open(args.dot, "w") as handle:
                handle.write(graph.to_dot() + "\n")
    except GuardExceeded as exc:
        raise CliError(EXIT_GUARD, str(exc))
    return 0


def cmd_verify(args) -> int:
    try:
        reports = run_suite(
            args.suite, seed=args.seed, steps=args.steps, guard=args.guard
        )
    except ValueError as exc:
        raise CliError(EXIT_BAD_JSON, str(exc))
    except GuardExceeded as exc:
        raise CliError(EXIT_GUARD, str(exc))
    payload = [r.to_json_dict(include_elapsed=False) for r in reports]
    print(_dump({"suite": args.suite, "reports": payload}))
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    guard = int(os.environ.get("ANGULATOR_GUARD", DEFAULT_GUARD))
    parser = argparse.ArgumentParser(
        prog="angulator",
        description="Colored quiver mutation and (m+2)-angulation models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutate", help="mutate a colored quiver at a vertex")
    p.add_argument("input", help="path, inline JSON, or - for stdin")
    p.add_argument("-k", "--vertex", type=int, required=True)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--procedural", action="store_true")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("flip", help="flip an angulation at an arc index")
    p.add_argument("input")
    p.add_argument("--arc", type=int, required=True,
                   help="index into the canonical arc order")
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("quiver", help="colored quiver of an angulation")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("validate", help="check a quiver or angulation JSON")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", help="count disk angulations")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sides", type=int, required=True)
    p.add_argument("--dot", help="write the flip graph as DOT to this path")
    p.add_argument("--guard", type=int, default=guard)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run theorem-checking suites")
    p.add_argument("--suite", choices=("all", "compat", "counts", "cut"),
                   default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=500,
                   help="random-walk length (also scales trial counts)")
    p.add_argument("--guard", type=int, default=guard)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InvalidAngulation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
