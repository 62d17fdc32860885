"""Command-line surface.

Every command prints deterministic output for a fixed (argv, input files,
seed) triple: no timestamps or timing land on stdout, so golden files can be
compared byte-for-byte.  The --format flag switches between a human-oriented
text layout and one-record-per-line key:value output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import (
    PatternError,
    format_pattern,
    parse_pattern,
)
from .algebra import classify, decompositions, join
from .classifier import census, report, subpatterns
from .stabilize import max_avoiding_subset, tree_to_coloring
from .constructions import (
    build_dnc_coloring,
    build_measure_coloring,
    build_stable_2dim_coloring,
    verify_trace,
)
from .forcing import (
    catalogue_predicate,
    eval_question_disjunctive,
    eval_question_i,
    eval_question_omega,
    least_bound,
)
from .lemmas import SUITES, run_suites
from . import io as pio


def _flags_record(fl) -> dict:
    return {
        "divergent": int(fl.divergent),
        "irreducible": int(fl.irreducible),
        "merging0": int(fl.merging0),
        "merging1": int(fl.merging1),
    }


def _yn(b: bool) -> str:
    return "yes" if b else "no"


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    p = parse_pattern(args.pattern)
    rep = report(p, args.mode)
    if args.format == "records":
        rec = {"pattern": format_pattern(p), "mode": rep.mode}
        rec.update(_flags_record(rep.flags))
        rec.update({
            "omega_hyp": int(rep.verdict_omega_hyp),
            "one_2dim": int(rep.verdict_one_2dim),
            "omega_2dim": int(rep.verdict_omega_2dim),
        })
        rec.update({f"witness_{k}": v for k, v in sorted(rep.witnesses.items())})
        print(pio.emit_record(rec))
        return 0
    fl = rep.flags
    print(f"pattern {format_pattern(p)} (mode {rep.mode})")
    print(f"  divergent:   {_yn(fl.divergent)}")
    print(f"  irreducible: {_yn(fl.irreducible)}")
    print(f"  0-merging:   {_yn(fl.merging0)}")
    print(f"  1-merging:   {_yn(fl.merging1)}")
    print(f"  omega-hyp:   {_yn(rep.verdict_omega_hyp)}")
    print(f"  one-2dim:    {_yn(rep.verdict_one_2dim)}")
    print(f"  omega-2dim:  {_yn(rep.verdict_omega_2dim)}")
    for key in sorted(rep.witnesses):
        print(f"  witness {key}: {rep.witnesses[key]}")
    return 0


def cmd_census(args) -> int:
    c = census(args.size, args.mode, verdicts=not args.no_verdicts)
    if args.format == "records":
        for row in c.rows:
            rec = {"pattern": format_pattern(row.pattern)}
            rec.update(_flags_record(row.flags))
            if not args.no_verdicts:
                rec.update({
                    "omega_hyp": int(row.omega_hyp),
                    "one_2dim": int(row.one_2dim),
                    "omega_2dim": int(row.omega_2dim),
                })
            print(pio.emit_record(rec))
        return 0
    print(f"census size={c.size} mode={c.mode} total={c.total}")
    print(f"  divergent:               {c.count(lambda r: r.flags.divergent)}")
    print(f"  irreducible:             {c.count(lambda r: r.flags.irreducible)}")
    print(f"  divergent+irreducible:   "
          f"{c.count(lambda r: r.flags.divergent and r.flags.irreducible)}")
    print(f"  merging:                 {c.count(lambda r: r.flags.merging)}")
    if not args.no_verdicts:
        for key, val in c.verdict_counts().items():
            print(f"  {key}: {val}")
    div_irr = [format_pattern(r.pattern) for r in c.rows
               if r.flags.divergent and r.flags.irreducible]
    if div_irr:
        print("  divergent+irreducible patterns: " + " ".join(div_irr))
    return 0


def cmd_decompose(args) -> int:
    p = parse_pattern(args.pattern)
    ds = decompositions(p)
    if args.format == "records":
        for left, right in ds:
            print(pio.emit_record({
                "pattern": format_pattern(p),
                "left": format_pattern(left),
                "right": format_pattern(right),
            }))
        if not ds:
            print(pio.emit_record({"pattern": format_pattern(p), "irreducible": 1}))
        return 0
    if not ds:
        print(f"{format_pattern(p)} is irreducible")
    for left, right in ds:
        print(f"{format_pattern(p)} = {format_pattern(left)} + {format_pattern(right)}")
    return 0


def cmd_join(args) -> int:
    ps = [parse_pattern(t) for t in args.patterns]
    out = ps[0]
    for q in ps[1:]:
        out = join(out, q)
    print(format_pattern(out))
    return 0


def cmd_subpatterns(args) -> int:
    p = parse_pattern(args.pattern)
    subs = sorted(subpatterns(p, args.mode), key=lambda q: (q.size, q.bits))
    for q in subs:
        print(format_pattern(q))
    return 0


def cmd_avoid_search(args) -> int:
    f = pio.parse_coloring(Path(args.coloring).read_text())
    p = parse_pattern(args.pattern)
    if args.elements:
        W = sorted(int(x) for x in args.elements.split(","))
    else:
        W = list(range(f.window))
    best = max_avoiding_subset(f, W, p)
    rec = {
        "pattern": format_pattern(p),
        "window": f.window,
        "size": len(best),
        "elements": ",".join(map(str, sorted(best))) or "-",
    }
    if args.format == "records":
        print(pio.emit_record(rec))
    else:
        print(f"maximum {format_pattern(p)}-avoiding subset "
              f"(size {len(best)}): {sorted(best)}")
    return 0


def cmd_simulate(args) -> int:
    text = Path(args.oracle).read_text()
    if args.kind == "dnc":
        oracle = pio.parse_approx_oracle(text)
        f, trace = build_dnc_coloring(oracle, args.stages)
        coloring_text = pio.format_coloring(f)
    elif args.kind == "measure":
        fns, patterns = pio.parse_measure_oracle(text)
        f, trace = build_measure_coloring(fns, patterns, args.stages)
        coloring_text = pio.format_coloring(f)
    elif args.kind == "stable2dim":
        bs = pio.parse_biarray_oracle(text)
        f, trace = build_stable_2dim_coloring(bs, args.stages)
        coloring_text = pio.format_stable_coloring(f)
    else:
        raise PatternError(f"unknown construction kind {args.kind!r}")
    rep = verify_trace(trace, f)
    if args.coloring_out:
        Path(args.coloring_out).write_text(coloring_text)
    if args.trace_out:
        Path(args.trace_out).write_text("\n".join(pio.trace_records(trace)) + "\n")
    for res in rep.results:
        rec = {"check": res.name, "passed": int(res.passed)}
        if res.stage is not None:
            rec["stage"] = res.stage
        if res.message:
            rec["note"] = res.message.replace(" ", "_")
        print(pio.emit_record(rec))
    if not args.coloring_out:
        sys.stdout.write(coloring_text)
    if not args.trace_out:
        for line in pio.trace_records(trace):
            print(line)
    return 0 if rep.passed else 1


def cmd_force_eval(args) -> int:
    f = pio.parse_coloring(Path(args.coloring).read_text())
    X = sorted(int(x) for x in args.reservoir.split(",")) if args.reservoir else []
    stem = sorted(int(x) for x in args.stem.split(",")) if args.stem else []
    p = parse_pattern(args.pattern)
    phi = catalogue_predicate(args.predicate, f)

    if args.kind == "omega":
        def run(n):
            return eval_question_omega(f, stem, X, p, phi, n, collect_failure=True)
    elif args.kind == "i":
        def run(n):
            return eval_question_i(f, stem, X, p, phi, n, collect_failure=True)
    elif args.kind == "disjunctive":
        stem1 = sorted(int(x) for x in args.stem1.split(",")) if args.stem1 else []
        p1 = parse_pattern(args.pattern1) if args.pattern1 else p
        phi1 = catalogue_predicate(args.predicate1, f) if args.predicate1 else phi

        def run(n):
            return eval_question_disjunctive(f, stem, stem1, X, p, p1, phi, phi1,
                                             n, collect_failure=True)
    else:
        raise PatternError(f"unknown question kind {args.kind!r}")

    if args.least_bound is not None:
        n = least_bound(lambda nn: run(nn)[0], args.least_bound)
        rec = {"question": args.kind, "least_bound": n if n is not None else "-"}
        print(pio.emit_record(rec))
        return 0
    verdict, failure = run(args.bound)
    rec = {"question": args.kind, "bound": args.bound, "verdict": int(verdict)}
    if failure is not None:
        if args.kind == "i":
            h0, h1 = failure
            rec["failing_h0"] = "".join(str(h0[x]) for x in sorted(h0))
            rec["failing_h1"] = "".join(str(h1[x]) for x in sorted(h1))
        else:
            rec["failing_g"] = "".join(str(failure[x]) for x in sorted(failure))
    print(pio.emit_record(rec))
    return 0


def cmd_tree2col(args) -> int:
    tree = pio.parse_tree(Path(args.tree).read_text())
    f = tree_to_coloring(tree, args.window)
    sys.stdout.write(pio.format_coloring(f))
    return 0


def cmd_verify_lemmas(args) -> int:
    names = args.suites.split(",") if args.suites else None
    if names:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise PatternError(f"unknown suites: {', '.join(unknown)}")
    results = run_suites(seed=args.seed, count=args.count, names=names)
    failed = False
    for res in results:
        status = "skip" if res.skipped else ("pass" if res.passed else "FAIL")
        rec = {"suite": res.name, "runs": res.runs, "status": status,
               "seed": args.seed}
        print(pio.emit_record(rec))
        for ce in res.counterexamples:
            print(pio.emit_record({"suite": res.name,
                                   "counterexample": ce.replace(" ", "_")}))
        failed = failed or not res.passed
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="patternkit",
        description="Pattern calculus for Ramsey-like pair colorings: "
                    "classification, constructions, forcing questions.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=("text", "records"), default="text")

    sp = sub.add_parser("classify", help="classify a pattern and its sub-patterns")
    sp.add_argument("pattern")
    sp.add_argument("--mode", choices=("injective", "monotone"), default="injective")
    add_format(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("census", help="classify every pattern of a given size")
    sp.add_argument("size", type=int)
    sp.add_argument("--mode", choices=("injective", "monotone"), default="injective")
    sp.add_argument("--no-verdicts", action="store_true")
    add_format(sp)
    sp.set_defaults(fn=cmd_census)

    sp = sub.add_parser("decompose", help="all splits of a pattern into joins")
    sp.add_argument("pattern")
    add_format(sp)
    sp.set_defaults(fn=cmd_decompose)

    sp = sub.add_parser("join", help="join two or more patterns left to right")
    sp.add_argument("patterns", nargs="+")
    sp.set_defaults(fn=cmd_join)

    sp = sub.add_parser("subpatterns", help="all sub-patterns of a pattern")
    sp.add_argument("pattern")
    sp.add_argument("--mode", choices=("injective", "monotone"), default="injective")
    sp.set_defaults(fn=cmd_subpatterns)

    sp = sub.add_parser("avoid-search",
                        help="maximum avoiding subset of a coloring window")
    sp.add_argument("coloring", help="coloring file")
    sp.add_argument("pattern")
    sp.add_argument("--elements", default="",
                    help="comma-separated subset of the window (default: all)")
    add_format(sp)
    sp.set_defaults(fn=cmd_avoid_search)

    sp = sub.add_parser("simulate", help="run a priority-construction builder")
    sp.add_argument("kind", choices=("dnc", "measure", "stable2dim"))
    sp.add_argument("oracle", help="oracle table file")
    sp.add_argument("--stages", type=int, required=True)
    sp.add_argument("--coloring-out", default="")
    sp.add_argument("--trace-out", default="")
    sp.set_defaults(fn=cmd_simulate)

    sp = sub.add_parser("force-eval", help="evaluate a forcing question")
    sp.add_argument("kind", choices=("omega", "i", "disjunctive"))
    sp.add_argument("coloring", help="coloring file")
    sp.add_argument("pattern")
    sp.add_argument("predicate", help="true|false|size>=K|contains:V|homogeneous:C[:MIN]")
    sp.add_argument("--stem", default="")
    sp.add_argument("--stem1", default="")
    sp.add_argument("--pattern1", default="")
    sp.add_argument("--predicate1", default="")
    sp.add_argument("--reservoir", default="", help="comma-separated reservoir")
    sp.add_argument("--bound", type=int, default=0)
    sp.add_argument("--least-bound", type=int, default=None)
    sp.set_defaults(fn=cmd_force_eval)

    sp = sub.add_parser("tree2col", help="leftmost-path coloring of a binary tree")
    sp.add_argument("tree", help="tree file, one binary string per line")
    sp.add_argument("--window", type=int, required=True)
    sp.set_defaults(fn=cmd_tree2col)

    sp = sub.add_parser("verify-lemmas", help="run the law-checking suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=2000)
    sp.add_argument("--suites", default="", help="comma-separated suite names")
    sp.set_defaults(fn=cmd_verify_lemmas)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PatternError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
