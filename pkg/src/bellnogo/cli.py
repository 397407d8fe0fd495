"""Command-line front end.

    bellnogo singlet-scan --grid N
    bellnogo nogo --t1 A --t2 B --t3 C         (or --grid N for a verdict table)
    bellnogo realizability --file problem.json
    bellnogo simulate --mode {singlet,lhv} --t1 A --t2 B --n N --seed S
    bellnogo bell-check --file model.json
    bellnogo vn-demo

Angles are radians unless ``--deg`` is given. Output goes to ``--output`` or
standard output. Exit status: 0 success, 2 invalid input, 1 internal error.
Output is never coloured, so ``NO_COLOR`` needs no special handling.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import contextual, nogo, quantum, realizability
from ._format import csv_text, rounded
from .errors import BellNogoError
from .probspace import SignVariable, bell_functional, bell_proof_trace, make_space


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bellnogo", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the result here instead of standard output")
    common.add_argument("--format", choices=["csv", "json"], help="output format")
    angles = argparse.ArgumentParser(add_help=False)
    angles.add_argument("--deg", action="store_true", help="angles are given in degrees")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("singlet-scan", parents=[common], help="singlet correlation E(0, d) by trace vs -cos d")
    p.add_argument("--grid", type=_positive_int, required=True, help="number of angles in [0, 2 pi)")

    p = sub.add_parser("nogo", parents=[common, angles], help="no-go pipeline verdict")
    p.add_argument("--t1", type=_finite)
    p.add_argument("--t2", type=_finite)
    p.add_argument("--t3", type=_finite)
    p.add_argument("--grid", type=_positive_int, help="scan theta2, theta3 on a grid instead (theta1 = 0)")

    p = sub.add_parser("realizability", parents=[common], help="decide a realizability problem")
    p.add_argument("--file", required=True, help="problem JSON")
    p.add_argument("--oracle", choices=["simplex", "exact"], default="simplex")

    p = sub.add_parser("simulate", parents=[common, angles], help="one seeded measurement run")
    p.add_argument("--mode", choices=["singlet", "lhv"], required=True)
    p.add_argument("--t1", type=_finite, required=True)
    p.add_argument("--t2", type=_finite, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=_nonneg_int, required=True)
    p.add_argument("--id", default="run", help="context label")

    p = sub.add_parser("bell-check", parents=[common], help="Bell report for a finite model")
    p.add_argument("--file", required=True, help="model JSON")

    sub.add_parser("vn-demo", parents=[common], help="additivity counterexample")
    return parser


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _json_text(obj) -> str:
    return json.dumps(rounded(obj), indent=2) + "\n"


def _angle(args, value: float) -> float:
    return math.radians(value) if args.deg else value


def _singlet_scan(args):
    rows = []
    for k in range(args.grid):
        d = 2 * math.pi * k / args.grid
        e = quantum.singlet_correlation(0.0, d)
        rows.append([d, e, -math.cos(d), abs(e + math.cos(d))])
    return ["delta", "matrix_correlation", "closed_form", "abs_error"], rows


def _nogo(args):
    if args.grid is not None:
        if any(t is not None for t in (args.t1, args.t2, args.t3)):
            raise UsageError("--grid cannot be combined with --t1/--t2/--t3")
        if args.grid < 2:
            raise UsageError("--grid must be at least 2 for nogo")
        rows = nogo.angle_scan(args.grid)
        return nogo.SCAN_COLUMNS, [list(r) for r in rows]
    for flag in ("t1", "t2", "t3"):
        if getattr(args, flag) is None:
            raise UsageError(f"--{flag} is required (or use --grid)")
    verdict = nogo.theorem4_pipeline(_angle(args, args.t1), _angle(args, args.t2), _angle(args, args.t3))
    return verdict.to_dict()


def _realizability(args):
    problem = realizability.RealizabilityProblem.from_dict(_load_json(args.file))
    if args.oracle == "exact":
        outcome = realizability.brute_force_oracle(problem)
    else:
        outcome = realizability.decide(problem)
    return {"problem": problem.to_dict(), **outcome.to_dict()}


def _simulate(args):
    ctx = contextual.Context(args.id, (_angle(args, args.t1), _angle(args, args.t2)), args.n, args.seed)
    run = contextual.sample_singlet_run if args.mode == "singlet" else contextual.sample_lhv_run
    report = run(ctx)
    return contextual.RUN_COLUMNS, [report.row()]


def _bell_check(args):
    data = _load_json(args.file)
    if not isinstance(data, dict) or set(data) != {"weights", "variables"}:
        raise UsageError(f"{args.file}: model must have exactly the fields 'weights' and 'variables'")
    variables = data["variables"]
    if not isinstance(variables, dict) or not {"a", "b", "c"} <= set(variables):
        raise UsageError(f"{args.file}: 'variables' must contain 'a', 'b' and 'c'")
    for name, values in variables.items():
        if not isinstance(values, list) or any(isinstance(v, bool) or v not in (1, -1) for v in values):
            raise UsageError(f"{args.file}: variable {name!r} must be a list of +1/-1 integers")
    space = make_space(data["weights"])
    a, b, c = (SignVariable(variables[k]) for k in "abc")
    report = bell_functional(space, a, b, c)
    trace = bell_proof_trace(space, a, b, c)
    return {**report.to_dict(), "proof_trace": [{"name": s.name, "value": s.value, "ok": s.ok} for s in trace]}


def _vn_demo(args):
    return nogo.vn_additivity_counterexample().to_dict()


HANDLERS = {
    "singlet-scan": _singlet_scan,
    "nogo": _nogo,
    "realizability": _realizability,
    "simulate": _simulate,
    "bell-check": _bell_check,
    "vn-demo": _vn_demo,
}


def render(args) -> str:
    """Run the selected command and return its output text."""
    result = HANDLERS[args.command](args)
    is_table = isinstance(result, tuple)
    if not is_table:
        if args.format == "csv":
            raise UsageError(f"--format csv is not available for {args.command}; it emits a JSON record")
        return _json_text(result)
    header, rows = result
    if args.format == "json":
        return _json_text([dict(zip(header, row)) for row in rows])
    return csv_text(header, rows)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad flags
    try:
        text = render(args)
    except (UsageError, BellNogoError, ValueError) as exc:
        print(f"bellnogo {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"bellnogo {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 1
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"bellnogo: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
