"""Command-line front end.

Examples::

    ampphase solve --phi pi/2 --a 0.25
    ampphase rotate --x pi/2 --a 0.25
    ampphase exact --n 3 --marked 5 --phi pi/2
    ampphase simulate --n 2 --marked 3 --phi pi --varphi pi --steps 1
    ampphase bounds --check lemma1 --grid default

Exit codes: 0 success, 2 invalid arguments, 1 internal contract violation.
"""
from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import operator
import re
import sys

from . import __version__
from .bounds import CHECKS, CSV_FIELDS, DEFAULT_A, DEFAULT_PHI, SweepGrid, summarize, sweep
from .core import (
    AlgorithmModel,
    PhasePair,
    build_q_matrix,
    decompose_equal_diagonal,
    diagonal_gap,
    solve_phi_good,
)
from .errors import AmplificationError, ContractViolation
from .exact import CERTAINTY_TOL, exact_report
from .rotation import plan_rotation
from .simulator import SimConfig, simulate_rows

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def parse_angle(text: str) -> float:
    """Parse radians, accepting ``pi`` in simple arithmetic: ``pi/2``, ``3pi/4``, ``-2*pi/3``."""
    src = text.strip().lower()
    src = re.sub(r"([0-9.])\s*pi", r"\1*pi", src)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")

    try:
        value = ev(tree)
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"division by zero in angle {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"angle {text!r} is not finite")
    return value


def parse_marked(text: str) -> frozenset:
    try:
        return frozenset(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"marked indices must be a comma list of integers, got {text!r}") from None


def parse_probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {value}")
    return value


def parse_grid(text: str) -> tuple[tuple, tuple]:
    """``default`` or ``a=0.01,0.001;phi=pi/2,pi/3`` (either part optional)."""
    if text.strip() == "default":
        return DEFAULT_A, DEFAULT_PHI
    a_values, phi_values = DEFAULT_A, DEFAULT_PHI
    for part in text.split(";"):
        if not part.strip():
            continue
        key, _, vals = part.partition("=")
        items = [v for v in vals.split(",") if v.strip()]
        key = key.strip()
        if key == "a":
            a_values = tuple(parse_probability(v) for v in items)
        elif key == "phi":
            phi_values = tuple(parse_angle(v) for v in items)
        else:
            raise argparse.ArgumentTypeError(f"unknown grid key {key!r}; use a= and phi=")
    return a_values, phi_values


def _varphi_option(text: str):
    if text in ("equal", "matched"):
        return text
    return parse_angle(text)


class _Out:
    def __init__(self, path):
        self.path = path
        self.buf = io.StringIO()

    def write(self, s):
        self.buf.write(s)

    def flush_to(self, stdout):
        data = self.buf.getvalue()
        if self.path:
            with open(self.path, "w", newline="") as fh:
                fh.write(data)
        else:
            stdout.write(data)


def _dump(record, out):
    out.write(json.dumps(record) + "\n")


def cmd_solve(args, out):
    model = AlgorithmModel.from_probability(args.a)
    phi_good = solve_phi_good(args.phi, model)
    M = build_q_matrix(model, PhasePair(args.phi, phi_good))
    dec = decompose_equal_diagonal(M)
    _dump(
        {
            "phi_zero": PhasePair(args.phi, phi_good).phi_zero,
            "a": model.a,
            "phi_good": phi_good,
            "vartheta": dec.vartheta,
            "u": dec.u,
            "v": dec.v,
            "diagonal_gap": diagonal_gap(M),
        },
        out,
    )


def cmd_rotate(args, out):
    plan = plan_rotation(args.x, AlgorithmModel.from_probability(args.a))
    if plan.deviation > 1e-9:
        raise ContractViolation(f"rotation deviates from target by {plan.deviation:.3g}")
    _dump(plan.as_dict(), out)


def cmd_exact(args, out):
    config = None
    if args.n is not None:
        if args.marked is None:
            raise AmplificationError("--n requires --marked")
        config = SimConfig(args.n, args.marked)
        config.require_proper()
        model = config.model()
    elif args.a is not None:
        model = AlgorithmModel.from_probability(args.a)
    else:
        raise AmplificationError("give either --a or --n with --marked")
    report = exact_report(args.phi, model, config)
    _dump(report, out)
    for key in ("p_success_subspace", "p_success_registers"):
        p = report[key]
        if p is not None and abs(p - 1.0) > CERTAINTY_TOL:
            raise ContractViolation(f"{key}={p} is not 1 within {CERTAINTY_TOL}")


def cmd_simulate(args, out):
    config = SimConfig(args.n, args.marked)
    if args.steps < 0:
        raise AmplificationError("--steps must be non-negative")
    rows = simulate_rows(config, PhasePair(args.phi, args.varphi), args.steps)
    if args.format == "csv":
        writer = csv.DictWriter(out, fieldnames=["step", "p_good", "angle_estimate"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        for row in rows:
            _dump(row, out)


def cmd_bounds(args, out, stderr):
    a_values, phi_values = args.grid
    grid = SweepGrid(args.check, a_values, phi_values, args.varphi, args.epsilon)
    reports = sweep(grid, workers=args.workers)
    if args.format == "json":
        for r in reports:
            _dump(r.csv_row(), out)
    else:
        writer = csv.DictWriter(out, fieldnames=list(CSV_FIELDS), lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.csv_row().items()})
    stderr.write(json.dumps(summarize(reports)) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ampphase", description="Amplitude amplification with arbitrary phases.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json",)):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", default=None, help="write output to this path instead of stdout")

    p = sub.add_parser("solve", help="matched oracle phase and decomposition")
    p.add_argument("--phi", type=parse_angle, required=True)
    p.add_argument("--a", type=parse_probability, required=True)
    common(p)

    p = sub.add_parser("rotate", help="plan a rotation by an arbitrary angle")
    p.add_argument("--x", type=parse_angle, required=True)
    p.add_argument("--a", type=parse_probability, required=True)
    common(p)

    p = sub.add_parser("exact", help="schedule and run search with success probability one")
    p.add_argument("--phi", type=parse_angle, required=True)
    p.add_argument("--a", type=parse_probability)
    p.add_argument("--n", type=int)
    p.add_argument("--marked", type=parse_marked)
    common(p)

    p = sub.add_parser("simulate", help="statevector run of repeated iterates")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marked", type=parse_marked, required=True)
    p.add_argument("--phi", type=parse_angle, required=True)
    p.add_argument("--varphi", type=parse_angle, required=True)
    p.add_argument("--steps", type=int, default=1)
    common(p, ("json", "csv"))

    p = sub.add_parser("bounds", help="sweep an error-bound check over a grid")
    p.add_argument("--check", choices=CHECKS, required=True)
    p.add_argument("--grid", type=parse_grid, default="default")
    p.add_argument("--varphi", type=_varphi_option, default="equal",
                   help="oracle phase: 'equal' (= phi), 'matched', or an angle")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--workers", type=int, default=1)
    common(p, ("csv", "json"))
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(args.out)
    try:
        if args.command == "bounds":
            cmd_bounds(args, out, stderr)
        else:
            {"solve": cmd_solve, "rotate": cmd_rotate, "exact": cmd_exact, "simulate": cmd_simulate}[
                args.command
            ](args, out)
    except AmplificationError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except ContractViolation as exc:
        out.flush_to(stdout)
        stderr.write(f"contract violation: {exc}\n")
        return 1
    out.flush_to(stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
