"""Command line front end.

Exit codes are a stable contract: 0 for success or an affirmative answer,
1 for a negative answer or reported violations, 2 for usage or parse
errors (and, for equiv, invalid inputs).  Every path argument accepts
``-`` for the standard streams.
"""

from __future__ import annotations

import argparse
import sys

from .automaton import ParseError, parse_wnfa, serialize_wnfa, to_dot, validate
from .bench import format_report, run_bench
from .equivalence import wheeler_bisimilar
from .generators import gen_chain, gen_distinctness, gen_random_wheeler
from .minimize import format_trace, minimize
from .relations import (
    equivalence_from_bits,
    is_bisimulation,
    is_wheeler_bisimulation,
    max_standard_autobisimulation,
    oracle_max_wheeler_autobisimulation,
    parse_relation,
    serialize_relation,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_wnfa(path: str):
    try:
        return parse_wnfa(_read(path))
    except ParseError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None
    except OSError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None


def cmd_validate(args) -> int:
    a = _load_wnfa(args.input)
    report = validate(a)
    print(report.describe(a))
    return 0 if report.ok else 1


def cmd_minimize(args) -> int:
    a = _load_wnfa(args.input)
    report = validate(a)
    if not report.ok:
        print(report.describe(a), file=sys.stderr)
        return 1
    trace: list | None = [] if args.trace else None
    result = minimize(a, trace)
    out = serialize_wnfa(result.quotient)
    class_lines = "".join(
        f"class {p} {c}\n" for p, c in enumerate(result.class_map, 1)
    )
    if args.class_map:
        _write(args.output, out)
        _write(args.class_map, class_lines)
    else:
        _write(args.output, out + class_lines)
    if args.trace:
        _write(args.trace, format_trace(trace))
    if args.dot:
        _write(args.dot, to_dot(result.quotient))
    return 0


def cmd_equiv(args) -> int:
    a = _load_wnfa(args.a)
    b = _load_wnfa(args.b)
    for path, x in ((args.a, a), (args.b, b)):
        report = validate(x)
        if not report.ok:
            print(f"{path}:\n{report.describe(x)}", file=sys.stderr)
            return 2
    verdict = wheeler_bisimilar(a, b)
    print(verdict.reason)
    if verdict.bisimilar:
        if args.witness:
            _write(args.witness, serialize_relation(verdict.witness))
        return 0
    return 1


def cmd_check_relation(args) -> int:
    a = _load_wnfa(args.a)
    b = _load_wnfa(args.b)
    try:
        rel = parse_relation(_read(args.relation))
    except ParseError as exc:
        print(f"{args.relation}: {exc}", file=sys.stderr)
        return 2
    check = is_wheeler_bisimulation if args.wheeler else is_bisimulation
    try:
        failure = check(a, b, rel)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if failure is None:
        print("ok")
        return 0
    print(failure.describe())
    return 1


def cmd_gen(args) -> int:
    try:
        if args.family == "chain":
            a = gen_chain(args.k)
        elif args.family == "distinctness":
            a = gen_distinctness(args.text)
        else:
            a = gen_random_wheeler(
                args.n, args.epl, args.sigma, args.seed, deterministic=args.deterministic
            )
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    _write(args.output, serialize_wnfa(a))
    return 0


def cmd_bench(args) -> int:
    report = run_bench(args.sizes, seed=args.seed)
    sys.stdout.write(format_report(report))
    return 0 if report.enqueue_bound_ok else 1


def cmd_dev_oracle(args) -> int:
    a = _load_wnfa(args.input)
    try:
        bits = oracle_max_wheeler_autobisimulation(a, cap=args.cap)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    print("bits " + " ".join("1" if b else "0" for b in bits.bits))
    part = equivalence_from_bits(bits)
    for p, c in enumerate(part.class_of, 1):
        print(f"class {p} {c + 1}")
    return 0


def cmd_dev_std_bisim(args) -> int:
    a = _load_wnfa(args.input)
    part = max_standard_autobisimulation(a)
    for p, c in enumerate(part.class_of, 1):
        print(f"class {p} {c + 1}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wnfa",
        description="Wheeler NFA toolkit: validate, minimize, compare, generate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the Wheeler axioms and reachability")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("minimize", help="write the minimal Wheeler-bisimilar automaton")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None, help="quotient .wnfa (default stdout)")
    p.add_argument("--class-map", default=None, help="write 'class <in> <out>' lines here")
    p.add_argument("--trace", default=None, help="write the queue-stage trace here")
    p.add_argument("--dot", default=None, help="write a Graphviz rendering of the quotient")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("equiv", help="decide Wheeler-bisimilarity of two automata")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--witness", default=None, help="write a witness relation when bisimilar")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("check-relation", help="test a relation against two automata")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("relation")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--wheeler", action="store_true", help="full order-respecting check")
    mode.add_argument("--standard", action="store_true", help="plain bisimulation check")
    p.set_defaults(func=cmd_check_relation)

    p = sub.add_parser("gen", help="generate an automaton family member")
    gen_sub = p.add_subparsers(dest="family", required=True)
    g = gen_sub.add_parser("chain", help="unary chain with a loop at the start")
    g.add_argument("k", type=int)
    g.add_argument("-o", "--output", default=None)
    g = gen_sub.add_parser("distinctness", help="fan gadget encoding a symbol sequence")
    g.add_argument("text")
    g.add_argument("-o", "--output", default=None)
    g = gen_sub.add_parser("random", help="seeded random Wheeler NFA")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--epl", type=int, default=2, help="edges per label and target")
    g.add_argument("--sigma", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--deterministic", action="store_true")
    g.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time the minimization pipeline")
    p.add_argument("--sizes", type=int, nargs="*", default=[], help="target edge counts")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    return parser


def _build_dev_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wnfa --dev", description="development references")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="brute-force maximum order-respecting autobisimulation")
    p.add_argument("input")
    p.add_argument("--cap", type=int, default=16, help="state-count cap for the enumeration")
    p.set_defaults(func=cmd_dev_oracle)

    p = sub.add_parser("std-bisim", help="naive coarsest standard-bisimulation partition")
    p.add_argument("input")
    p.set_defaults(func=cmd_dev_std_bisim)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "--dev":
        args = _build_dev_parser().parse_args(argv[1:])
    else:
        args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
