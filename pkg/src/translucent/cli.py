"""``tla`` command line tool.

Exit status: 0 for success or acceptance, 1 for rejection or a negative
answer, 2 for usage and input errors.  Results go to stdout, diagnostics
to stderr.
"""
from __future__ import annotations

import argparse
import sys

from . import analysis, constructions
from .fast import run_fast
from .model import AutomatonError, validate
from .naive import FuelExhausted, accepts_naive, find_accepting_trace, render_trace, trace_deterministic
from .textformat import TLASyntaxError, load_tla, serialize_tla

OK, NEGATIVE, ERROR = 0, 1, 2

UNARY_OPS = {
    "embed": constructions.embed_nfawtl,
    "deloop": constructions.eliminate_end_loops,
    "complete": constructions.complete_reading,
    "normalize": constructions.normalize,
    "complement": constructions.complement_deterministic,
}
BINARY_OPS = {
    "union": constructions.union,
    "shuffle": constructions.disjoint_shuffle,
}


class CLIError(Exception):
    pass


def _load(path):
    try:
        return load_tla(path)
    except OSError as e:
        raise CLIError(f"{path}: {e.strerror or e}") from None
    except TLASyntaxError as e:
        raise CLIError(f"{path}: {e}") from None


def _load_valid(path):
    aut = _load(path)
    report = validate(aut)
    if not report:
        raise CLIError(f"{path}: invalid automaton\n{report.render()}")
    return aut


def cmd_check(args) -> int:
    report = validate(_load(args.file))
    print(report.render())
    return OK if report else NEGATIVE


def cmd_run(args) -> int:
    aut = _load_valid(args.file)
    engine = args.engine or ("fast" if aut.kind.deterministic else "naive")
    if engine == "fast" and not aut.kind.deterministic:
        raise CLIError(f"the fast engine needs a deterministic automaton, got {aut.kind}")
    if args.stats and engine != "fast":
        raise CLIError("--stats needs the fast engine")
    aut.check_word(args.word)

    if engine == "fast":
        verdict, stats, trace = run_fast(aut, args.word, want_trace=args.trace)
        if trace is not None:
            print(render_trace(trace))
        if args.stats:
            print(stats.render())
    else:
        verdict = accepts_naive(aut, args.word)
        if args.trace:
            _print_naive_trace(aut, args.word, verdict)
    print(verdict)
    return OK if verdict else NEGATIVE


def _print_naive_trace(aut, word, verdict):
    if verdict:
        print(render_trace(find_accepting_trace(aut, word)))
    elif aut.kind.deterministic:
        try:
            print(render_trace(trace_deterministic(aut, word)))
        except FuelExhausted as e:
            print(render_trace(e.trace))
            print(f"stopped after {e.fuel} steps")
    else:
        print("no accepting computation")


def cmd_transform(args) -> int:
    aut = _load_valid(args.file)
    if args.op in BINARY_OPS:
        if args.other is None:
            raise CLIError(f"--op {args.op} needs a second automaton file")
        out = serialize_tla(BINARY_OPS[args.op](aut, _load_valid(args.other)))
    else:
        if args.other is not None:
            raise CLIError(f"--op {args.op} takes a single automaton file")
        if args.op == "unary-nfa":
            out = constructions.unary_to_nfa(aut).to_text()
        else:
            out = serialize_tla(UNARY_OPS[args.op](aut))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return OK


def cmd_enumerate(args) -> int:
    aut = _load_valid(args.file)
    for w in analysis.enumerate_accepted(aut, args.max_len, budget=args.budget):
        print(w)
    return OK


def cmd_empty(args) -> int:
    aut = _load_valid(args.file)
    res = analysis.bounded_emptiness(aut, args.max_len, budget=args.budget)
    if isinstance(res, analysis.Witness):
        print(f"witness: {res.word or 'λ'}")
        return OK
    print(res)
    return NEGATIVE


def cmd_parikh(args) -> int:
    aut = _load_valid(args.file)
    vectors = analysis.parikh_sample(aut, args.max_len, budget=args.budget)
    print("# " + " ".join(aut.alphabet))
    for v in sorted(vectors, key=lambda v: (v.total(), v.counts)):
        print(v)
    return OK


def cmd_dot(args) -> int:
    sys.stdout.write(analysis.to_diagram(_load_valid(args.file)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tla", description="Automata with translucent letters.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate an automaton file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run", help="decide membership of a word")
    p.add_argument("file")
    p.add_argument("word", help="input word; '' for the empty word")
    p.add_argument("--trace", action="store_true", help="print the computation")
    p.add_argument("--stats", action="store_true", help="print run statistics (fast engine)")
    p.add_argument("--engine", choices=["fast", "naive"], help="default: fast when deterministic")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("transform", help="apply a construction")
    p.add_argument("file")
    p.add_argument("other", nargs="?", help="second automaton for union and shuffle")
    p.add_argument("--op", required=True, choices=[*UNARY_OPS, *BINARY_OPS, "unary-nfa"])
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.set_defaults(func=cmd_transform)

    for name, func, help in [
        ("enumerate", cmd_enumerate, "list accepted words up to a length"),
        ("empty", cmd_empty, "search for a shortest accepted word"),
        ("parikh", cmd_parikh, "letter-count vectors of accepted words"),
    ]:
        p = sub.add_parser(name, help=help)
        p.add_argument("file")
        p.add_argument("--max-len", type=int, required=True, metavar="K")
        p.add_argument("--budget", type=int, default=analysis.DEFAULT_BUDGET, help="max membership tests")
        p.set_defaults(func=func)

    p = sub.add_parser("dot", help="Graphviz diagram")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code else OK
    try:
        return args.func(args)
    except (CLIError, AutomatonError, analysis.BudgetExceeded, ValueError) as e:
        print(f"tla: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
