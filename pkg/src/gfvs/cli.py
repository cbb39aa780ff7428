"""``gfvs`` command-line front end.

Exit status: 0 for YES / valid, 1 for NO / invalid, 2 for usage errors.
"""
from __future__ import annotations

import argparse
import random
import sys
import time

from . import encoders
from .brute import brute_gfvs
from .encoders import decode_solution
from .errors import UsageError
from .generators import planted_instance
from .groups import make_group
from .io import gfvs_file, parse_instance, serialize_instance
from .multiway_cut import solve_mwc
from .solver import solve, verify


def format_set(X) -> str:
    return "{" + ",".join(map(str, sorted(X))) + "}"


def decision_line(k, X) -> str:
    if X is None:
        return "NO"
    return f"YES k={k} |X|={len(X)} X={format_set(X)}"


def format_witness(witness, group) -> str:
    cycle = " ".join(map(str, witness.cycle))
    return f"witness: {cycle} value={group.format(witness.value)}"


def _read(path):
    if path == "-":
        return parse_instance(sys.stdin.read())
    try:
        with open(path) as fh:
            return parse_instance(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def parse_ids(text: str) -> set:
    text = text.strip()
    if not text:
        return set()
    try:
        return {int(tok) for tok in text.replace(",", " ").split()}
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def cmd_solve(args, out):
    problem = _read(args.instance)
    inst = problem.to_gfvs()
    X = solve(inst, minimize=not args.any)
    if X is not None:
        X = decode_solution(inst, X)
    print(decision_line(inst.k, X), file=out)
    return 0 if X is not None else 1


def cmd_solve_mwc(args, out):
    problem = _read(args.instance)
    inst = problem.to_mwc()
    X = solve_mwc(inst)
    print(decision_line(inst.k, X), file=out)
    return 0 if X is not None else 1


def cmd_verify(args, out):
    problem = _read(args.instance)
    inst = problem.to_gfvs()
    X = parse_ids(args.solution)
    result = verify(inst, X)
    if result.ok:
        print(decision_line(inst.k, X), file=out)
        return 0
    print("NO", file=out)
    print(f"reason: {result.reason}", file=out)
    if result.witness is not None:
        print(format_witness(result.witness, inst.group), file=out)
    return 1


def cmd_convert(args, out):
    problem = _read(args.instance)
    k = problem.budget()
    edges = problem.plain_edges()
    if args.source == "fvs":
        inst = encoders.encode_fvs(problem.n, edges, k)
    elif args.source == "oct":
        inst = encoders.encode_oct(problem.n, edges, k)
    elif args.source == "mwc":
        inst = encoders.encode_mwc(problem.n, edges, problem.terminals, k)
    else:
        inst = encoders.encode_esfvs(problem.to_esfvs())
    text = serialize_instance(gfvs_file(inst))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_brute(args, out):
    problem = _read(args.instance)
    inst = problem.to_gfvs()
    X = brute_gfvs(inst)
    if X is not None:
        X = decode_solution(inst, X)
    print(decision_line(inst.k, X), file=out)
    return 0 if X is not None else 1


def cmd_bench(args, out):
    rng = random.Random(args.seed)
    group = make_group(args.group)
    worst = 0.0
    for i in range(args.count):
        inst = planted_instance(group, args.n, args.m, args.k, rng)
        start = time.perf_counter()
        X = solve(inst, minimize=not args.any)
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        ok = X is not None and verify(inst, X).ok
        print(f"instance {i}: {decision_line(inst.k, X)} verified={ok} time={elapsed:.3f}s", file=out)
    print(f"max time {worst:.3f}s", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfvs", description="Group Feedback Vertex Set solver")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a GFVS instance (minimum solution by default)")
    p.add_argument("instance")
    p.add_argument("--any", action="store_true", help="stop at the first solution within budget")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("solve-mwc", help="solve a vertex Multiway Cut instance")
    p.add_argument("instance")
    p.set_defaults(func=cmd_solve_mwc)

    p = sub.add_parser("verify", help="check a proposed solution")
    p.add_argument("instance")
    p.add_argument("--solution", required=True, help="comma-separated vertex ids")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("convert", help="encode a classical problem as GFVS")
    p.add_argument("instance")
    p.add_argument("--from", dest="source", required=True, choices=["fvs", "oct", "mwc", "esfvs"])
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("brute", help="exhaustive GFVS solver (at most 20 vertices)")
    p.add_argument("instance")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("bench", help="time the solver on planted random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--group", default="z2pow 2")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--m", type=int, default=120)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--any", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))
