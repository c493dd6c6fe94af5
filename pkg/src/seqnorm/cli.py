"""``seqnorm`` command line: gen | check | norm | verify | report.

Exit codes: 0 success (or every condition/claim holds), 1 a condition or
claim fails, 2 usage error.
"""

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import conditions as cond
from . import harness
from . import matrices as mg
from ._validation import EnumerationCapError
from .io import load_matrix, matrix_to_dict, parse_space, read_json, write_json
from .norms import SEED, norm_estimate
from .spaces import WeightSeq

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GEN_FAMILIES = ("hilbert", "wm", "nm", "cesaro", "gamma", "cxl1", "cxl2", "cxlinf")

# accepted spellings for --cond
_COND_ALIASES = {
    "c12": "C12", "c13": "C13", "c41": "C41", "c41star": "C41star", "c41*": "C41star",
    "c44": "C44", "c410": "C410", "c410star": "C410star", "c410*": "C410star",
    "c411": "C411", "c412": "C412",
}


class UsageError(Exception):
    pass


def _fmt(x):
    return f"{x:.9g}"


def _parse_weights(text):
    if text is None:
        return None
    if Path(text).is_file():
        return WeightSeq(np.asarray(read_json(text), dtype=float))
    try:
        return WeightSeq(np.array([float(t) for t in text.split(",")]))
    except ValueError as exc:
        raise UsageError(f"bad --weights {text!r}: {exc}") from None


def _parse_cond(text):
    try:
        return _COND_ALIASES[text.lower()]
    except KeyError:
        raise UsageError(f"unknown condition {text!r}; choose from {sorted(_COND_ALIASES)}") from None


def cmd_gen(args):
    rows = args.rows
    cols = rows if args.cols is None else args.cols
    fam = args.family
    if fam == "cxl1":
        A = mg.counterexample_l1(rows)
    elif fam == "cxl2":
        A = mg.counterexample_l2(rows, cols)
    elif fam == "cxlinf":
        A = mg.counterexample_linf(rows, cols)
    else:
        weights = _parse_weights(args.weights)
        if fam in ("wm", "nm"):
            if weights is None:
                raise UsageError(f"--family {fam} needs --weights")
            needed = max(rows, cols)
            if len(weights.entries) < needed:
                raise UsageError(f"{len(weights.entries)} weights given, {needed} needed")
        if fam in ("cesaro", "gamma") and args.alpha is None:
            raise UsageError(f"--family {fam} needs --alpha")
        A = mg.MatrixFamily(fam, alpha=args.alpha, weights=weights).section(rows, cols)
    if args.transpose:
        A = A.T.copy()
    write_json(matrix_to_dict(A), args.output)
    return EXIT_OK


def cmd_check(args):
    A = load_matrix(args.matrix)
    names = [_parse_cond(c) for c in (args.cond or ["c412"])]
    reports = []
    for name in names:
        fn = cond.CHECKERS[name]
        if name in ("C13", "C410", "C410star"):
            cap = args.cap if args.cap is not None else (6 if name == "C13" else 7)
            rep = fn(A, args.n, cap=cap, slack=args.slack)
        elif name == "C12":
            rep = fn(A, slack=args.slack, max_subsets=args.max_subsets)
        elif name == "C44":
            try:
                rep = fn(A, slack=args.slack)
            except cond.NotApplicableError as exc:
                raise UsageError(str(exc)) from None
        else:
            rep = fn(A, slack=args.slack)
        reports.append(rep)
    if args.json:
        write_json([r.to_dict() for r in reports], args.output)
    else:
        for r in reports:
            print(json.dumps(r.to_dict()))
    return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL


def _estimate(A, E, F, restricted, args):
    return norm_estimate(A, E, F, restricted, n_starts=args.starts, seed=args.seed)


def cmd_norm(args):
    A = load_matrix(args.matrix)
    E, F = parse_space(args.E), parse_space(args.F)
    if args.both:
        full = _estimate(A, E, F, False, args)
        dec = _estimate(A, E, F, True, args)
        gap = full.value - dec.value
        if args.json:
            write_json({"unrestricted": full.to_dict(), "restricted": dec.to_dict(), "gap": gap},
                       args.output)
        else:
            print(f"unrestricted {_fmt(full.value)}")
            print(f"restricted   {_fmt(dec.value)}")
            print(f"gap          {_fmt(gap)}")
        return EXIT_OK
    est = _estimate(A, E, F, args.restricted, args)
    if args.json:
        write_json(est.to_dict(), args.output)
    else:
        x = ", ".join(_fmt(v) for v in est.maximizer)
        print(f"value {_fmt(est.value)}  method {est.method}  maximizer [{x}]")
    return EXIT_OK


def _run(args):
    if not args.all and args.filter is None and not getattr(args, "exploratory", False):
        raise UsageError("give --all or --filter PATTERN")
    pattern = None if args.all else args.filter
    results = harness.run_all(pattern, threads=args.threads) if (args.all or args.filter) else []
    if (args.all or args.filter) and not results:
        raise UsageError(f"no claim matches {args.filter!r}")
    return results


def cmd_verify(args):
    if args.list:
        for c in harness.CLAIMS.values():
            print(f"{c.claim_id}\t{c.provenance}\t{c.citation}\t{c.description}")
        return EXIT_OK
    results = _run(args)
    if results:
        print(harness.to_markdown(results))
        if args.markdown:
            Path(args.markdown).write_text(harness.to_markdown(results) + "\n")
        if args.json:
            Path(args.json).write_text(harness.to_json(results) + "\n")
    if args.exploratory:
        print("\nEXPLORATORY (not a claim; does not affect the exit status):")
        print(json.dumps(harness.explore_open_question(), indent=2))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_report(args):
    results = _run(args)
    text = harness.to_csv(results)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    if args.markdown:
        Path(args.markdown).write_text(harness.to_markdown(results) + "\n")
    if args.json:
        Path(args.json).write_text(harness.to_json(results) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _threads_default():
    try:
        return max(1, int(os.environ.get("SEQNORM_THREADS", "1")))
    except ValueError:
        return 1


def build_parser():
    p = _Parser(prog="seqnorm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a matrix section as JSON")
    g.add_argument("--family", required=True, choices=GEN_FAMILIES)
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--cols", type=int, help="default: same as --rows")
    g.add_argument("--alpha", type=float, help="order for cesaro / gamma")
    g.add_argument("--weights", help="comma separated list or a JSON array file")
    g.add_argument("--transpose", action="store_true")
    g.add_argument("-o", "--output", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="test sufficient conditions on a matrix file")
    c.add_argument("matrix")
    c.add_argument("--cond", action="append", help="c12 c13 c41 c41star c44 c410 c410star c411 c412 "
                                                  "(repeatable; default c412)")
    c.add_argument("--cap", type=int, help="row cap for permutation enumeration (default 6 for c13, 7 otherwise)")
    c.add_argument("--n", type=int, help="row truncation for c13 / c410 / c410star")
    c.add_argument("--max-subsets", type=int, default=2 ** 20, help="subset cap for c12")
    c.add_argument("--slack", type=float, default=0.0)
    c.add_argument("--json", action="store_true", help="emit one JSON array instead of JSON lines")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_check)

    n = sub.add_parser("norm", help="estimate an operator norm")
    n.add_argument("matrix")
    n.add_argument("--E", default="lp:2", help="domain: lp:<p>, lpw:<p>:<file>, lorentz:<p>:<file>")
    n.add_argument("--F", default="lp:2", help="codomain, same grammar")
    n.add_argument("--restricted", action="store_true", help="maximize over decreasing inputs only")
    n.add_argument("--both", action="store_true", help="unrestricted, restricted and their gap")
    n.add_argument("--starts", type=int, default=16)
    n.add_argument("--seed", type=int, default=SEED)
    n.add_argument("--json", action="store_true", help="full precision JSON output")
    n.add_argument("-o", "--output")
    n.set_defaults(func=cmd_norm)

    for name, func, helptext in (("verify", cmd_verify, "run registered claims"),
                                 ("report", cmd_report, "run claims and emit CSV")):
        v = sub.add_parser(name, help=helptext)
        v.add_argument("--all", action="store_true")
        v.add_argument("--filter", help="run claims whose id contains this text")
        v.add_argument("--threads", type=int, default=_threads_default(),
                       help="default: SEQNORM_THREADS or 1")
        v.add_argument("--markdown", help="also write a Markdown report here")
        v.add_argument("--json", help="also write a JSON report here")
        if name == "verify":
            v.add_argument("--list", action="store_true", help="list claims and exit")
            v.add_argument("--exploratory", action="store_true",
                           help="also run the open-question exploration")
        else:
            v.add_argument("-o", "--output", help="CSV file (default stdout)")
        v.set_defaults(func=func)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, EnumerationCapError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"seqnorm {args.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
