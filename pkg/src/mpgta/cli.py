"""Command-line front end.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
"""

import argparse
import json
import logging
import random
import sys
from fractions import Fraction

from .bra import build_bra, export_dot
from .errors import MpgtaError, ValidationError
from .finite import check_opt_finite, parse_arena, solve_finite_mpg
from .ptga import load_ptga
from .regions import all_regions
from .solver import check_lift, integralize_and_solve, oracle_min_max, solution_to_json, value_at
from .solver.certify import sample_configurations
from .solver.oracle import DEFAULT_CAP
from .solver.scaling import GAINS, DEFAULT_MAX_ESCALATIONS, DEFAULT_MAX_SCALE, RECIPES


def rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return n


def natural(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must not be negative: {text!r}")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="mpgta", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def solving(sp):
        sp.add_argument("file")
        sp.add_argument("--max-scale", type=positive_int, default=DEFAULT_MAX_SCALE,
                        help="largest scale factor tried")
        sp.add_argument("--max-escalations", type=natural, default=DEFAULT_MAX_ESCALATIONS)
        sp.add_argument("--max-iters", type=positive_int, default=100_000,
                        help="cap on strategy profile evaluations")
        sp.add_argument("--scale-recipe", choices=RECIPES, default=GAINS)

    sp = sub.add_parser("solve", help="value at the initial state and certificate status")
    solving(sp)
    sp.add_argument("--json", action="store_true", help="print the full solution as JSON")

    sp = sub.add_parser("decide", help="is the value at the initial state below the budget")
    solving(sp)
    sp.add_argument("--budget", type=rational, required=True)

    sp = sub.add_parser("check", help="solve, certify and check the lifted equations")
    solving(sp)
    sp.add_argument("--samples", type=natural, default=100)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("oracle", help="compare the solver with brute-force enumeration")
    solving(sp)
    sp.add_argument("--cap", type=positive_int, default=DEFAULT_CAP)

    sp = sub.add_parser("export-dot", help="write the corner-point graph in DOT")
    sp.add_argument("file")
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("finite-solve", help="solve a finite arena")
    sp.add_argument("file")
    sp.add_argument("--max-iters", type=positive_int, default=100_000)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("regions", help="list the regions for a bound")
    sp.add_argument("--k", type=natural, required=True)
    return p


def _solve(args):
    ptga = load_ptga(args.file)
    sol = integralize_and_solve(ptga, recipe=args.scale_recipe, max_scale=args.max_scale,
                                max_escalations=args.max_escalations, max_iters=args.max_iters)
    return ptga, sol


def _status(report):
    return "ok" if report.ok else f"failed ({len(report.violations)} violations)"


def cmd_solve(args, out):
    ptga, sol = _solve(args)
    if args.json:
        out.write(solution_to_json(sol))
    else:
        value = value_at(sol, ptga, ptga.initial, 0)
        out.write(f"value = {value}, certificate: {_status(sol.certificate)}\n")
    return 0 if sol.certificate.ok else 1


def cmd_decide(args, out):
    ptga, sol = _solve(args)
    out.write(("true" if value_at(sol, ptga, ptga.initial, 0) < args.budget else "false") + "\n")
    return 0


def cmd_check(args, out):
    ptga, sol = _solve(args)
    samples = sample_configurations(sol, random.Random(args.seed), args.samples)
    lift = check_lift(sol, ptga, samples)
    out.write(f"value = {value_at(sol, ptga, ptga.initial, 0)}\n")
    out.write(f"scale = {sol.scale}\n")
    out.write(f"vertices = {len(sol.graph)}\n")
    out.write(f"optimality equations: {_status(sol.certificate)}\n")
    out.write(f"lifted equations at {len(samples)} samples: {_status(lift)}\n")
    for v in sol.certificate.violations + lift.violations:
        out.write(f"  {v.equation} at {v.vertex}: {v.lhs} vs {v.rhs}\n")
    return 0 if sol.certificate.ok and lift.ok else 1


def cmd_oracle(args, out):
    ptga, sol = _solve(args)
    solved = value_at(sol, ptga, ptga.initial, 0)
    g = build_bra(ptga)
    brute = oracle_min_max(g, g.initial, cap=args.cap)
    out.write(f"solver = {solved}\noracle = {brute}\n")
    out.write(f"agree: {'true' if solved == brute else 'false'}\n")
    return 0 if solved == brute else 1


def cmd_export_dot(args, out):
    g = build_bra(load_ptga(args.file))
    with open(args.out, "w") as f:
        f.write(export_dot(g))
    out.write(f"wrote {len(g)} vertices to {args.out}\n")
    return 0


def cmd_finite_solve(args, out):
    with open(args.file) as f:
        arena = parse_arena(f.read())
    sol = solve_finite_mpg(arena, max_iters=args.max_iters)
    bad = check_opt_finite(arena, sol.gain, sol.bias)
    strategy = {**sol.min_strategy, **sol.max_strategy}
    if args.json:
        data = {
            "nodes": [{"id": arena.ids[s], "gain": str(sol.gain[s]), "bias": str(sol.bias[s]),
                       "choice": arena.out[s][strategy[s]].label}
                      for s in range(len(arena))],
            "certificate": {"ok": not bad},
        }
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        for s in range(len(arena)):
            e = arena.out[s][strategy[s]]
            out.write(f"{arena.ids[s]}: gain = {sol.gain[s]}, bias = {sol.bias[s]}, "
                      f"plays {e.label} -> {arena.ids[e.target]}\n")
        out.write(f"certificate: {'ok' if not bad else 'failed'}\n")
    return 0 if not bad else 1


def cmd_regions(args, out):
    for z in all_regions(args.k):
        out.write(f"{z.index}: {z}\n")
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "decide": cmd_decide,
    "check": cmd_check,
    "oracle": cmd_oracle,
    "export-dot": cmd_export_dot,
    "finite-solve": cmd_finite_solve,
    "regions": cmd_regions,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=err)
    try:
        return COMMANDS[args.command](args, out)
    except ValidationError as exc:
        for d in exc.report.diagnostics:
            err.write(f"{d.code}: {d.message} [{d.element}]\n")
        return 1
    except MpgtaError as exc:
        err.write(f"{exc.code}: {exc}\n")
        return 1
    except OSError as exc:
        err.write(f"IOError: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
