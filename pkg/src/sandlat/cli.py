"""Command-line entry point: ``sandlat <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capacity.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Optional, Sequence

from .cfg import greedoid_check, strong_convergence_check, valid_words
from .core import parse_composition, staircase_seed
from .errors import CapacityExceeded, SandlatError
from .ltheta import theta_chain_report
from .order import is_lattice
from .rules import parse_rule
from .spm import partition_classes
from .statespace import generate
from . import ltheta, verify

MAX_N = 64

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _check_n(n: int) -> int:
    if not 1 <= n <= MAX_N:
        raise UsageError(f"n must lie in 1..{MAX_N}, got {n}")
    return n


def parse_n_range(text: str) -> list[int]:
    """``"4"`` or ``"1..6"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            ns = list(range(int(lo), int(hi) + 1))
        else:
            ns = [int(text)]
    except ValueError:
        raise UsageError(f"bad n range {text!r}") from None
    if not ns:
        raise UsageError(f"empty n range {text!r}")
    for n in ns:
        _check_n(n)
    return ns


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    n = _check_n(args.n)
    rule = parse_rule(args.rule)
    seed = parse_composition(args.origin, n) if args.origin else staircase_seed(n)
    g = generate(seed, rule, cap=args.cap)
    if args.format == "json":
        text = g.to_json() + "\n"
    elif args.format == "dot":
        text = g.to_dot()
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("from", "pos", "to", "kind"))
        for e in g.edges:
            w.writerow((str(g.nodes[e.src]), e.pos, str(g.nodes[e.dst]), e.kind))
        text = buf.getvalue()
    else:
        text = "".join(f"{v}\n" for v in g.nodes)
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    ns = parse_n_range(args.n)
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    rows = []
    tally = {}
    for name in names:
        suite_rows = [r for n in ns for r in verify.run_suite(name, n)]
        tally[name] = (sum(r.passed for r in suite_rows), sum(not r.passed for r in suite_rows))
        rows.extend(suite_rows)
    _emit(verify.rows_to_csv(rows), args.output)
    if args.figure:
        from .plotting import plot_verify_summary

        plot_verify_summary(names, [tally[s][0] for s in names], [tally[s][1] for s in names], args.figure)
    failed = [r for r in rows if not r.passed]
    if failed:
        first = failed[0]
        print(f"first failure: n={first.n} {first.param} {first.prop}: {first.witness}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_classes(args) -> int:
    n = _check_n(args.n)
    cp = partition_classes(n)
    lines = []
    for P, members in cp.classes.items():
        line = f"{P} size={len(members)}"
        if args.members:
            line += " members=" + " ".join(str(a) for a in members)
        lines.append(line)
    text = "\n".join(lines) + "\n"
    if args.format == "dot":
        palette = ["#fbb4ae", "#b3cde3", "#ccebc5", "#decbe4", "#fed9a6", "#ffffcc", "#e5d8bd", "#fddaec", "#f2f2f2"]
        colors = {}
        for c, (P, members) in enumerate(cp.classes.items()):
            for a in members:
                colors[a] = palette[c % len(palette)]
        g = generate(staircase_seed(n), parse_rule("lb"))
        text = g.to_dot(colors=colors, highlight=cp.classes.keys())
    _emit(text, args.output)
    if args.figure:
        from .plotting import plot_class_sizes

        plot_class_sizes(n, [str(P) for P in cp.classes], [len(m) for m in cp.classes.values()], args.figure)
    return EXIT_OK


def cmd_fixed_point(args) -> int:
    n = _check_n(args.n)
    _emit(f"{ltheta.fixed_point(n, args.theta)}\n", args.output)
    return EXIT_OK


def cmd_chain(args) -> int:
    n = _check_n(args.n)
    rep = theta_chain_report(n, with_filter=not args.no_filter, check_lattice=not args.no_lattice)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("theta", "size", "fixed_point", "chain_length", "lattice", "suborder", "filter"))
    for r in rep.rows:
        sub = "" if r.suborder is None else ("pass" if r.suborder else "fail")
        w.writerow((r.theta, r.size, str(r.fixed_point), r.chain_length,
                    "pass" if r.lattice else "fail", sub, "pass" if r.filter_match else "fail"))
    for note in rep.notes:
        buf.write(f"# {note}\n")
    buf.write(f"# spm_equals_theta2={rep.spm_equals_l2} lb_suborder_of_theta1={rep.lb_in_l1} "
              f"full_count={rep.full_count}\n")
    _emit(buf.getvalue(), args.output)
    if args.figure:
        from .plotting import plot_theta_chain

        plot_theta_chain(n, [r.theta for r in rep.rows], [r.size for r in rep.rows],
                         [r.chain_length for r in rep.rows], args.figure)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_cfg_verify(args) -> int:
    n = _check_n(args.n)
    origin = parse_composition(args.origin, n) if args.origin else staircase_seed(n)
    m = args.m
    g = generate(origin, parse_rule(f"cfg:{m}"), cap=args.cap)
    rows = []
    lat = is_lattice(g)
    rows.append(verify.Row(n, f"m={m}", "is_lattice", lat.is_lattice, "" if lat.witness is None else str(lat.witness)))
    sc = strong_convergence_check(origin, m, cap=args.cap)
    rows.append(verify.Row(n, f"m={m}", "strongly_convergent", sc.passed,
                           f"terminal={sc.terminal} length={sc.length}"))
    gr = greedoid_check(origin, m, g.depth)
    rows.append(verify.Row(n, f"m={m}", "greedoid", gr.passed, gr.counterexample or f"words={gr.words}"))
    _emit(verify.rows_to_csv(rows), args.output)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def cmd_cfg_language(args) -> int:
    n = _check_n(args.n)
    origin = parse_composition(args.origin, n) if args.origin else staircase_seed(n)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        for word, _ in valid_words(origin, args.m, args.L):
            out.write(" ".join(map(str, word)) + "\n")
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sandlat", description="Sand-pile models and their lattices")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate the order reachable from a seed")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--rule", required=True, help="lb | spm | cfg:<m> | theta:<theta>")
    g.add_argument("--origin", help="seed composition, e.g. [3,1]; default (n,0,...,0)")
    g.add_argument("--format", choices=("text", "json", "dot", "csv"), default="text")
    g.add_argument("--cap", type=int, default=None, help="node bound (default $SANDLAT_NODE_CAP or 1e7)")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="run property suites and print a CSV table")
    v.add_argument("--n", required=True, help="n or lo..hi")
    v.add_argument("--suite", default="all", choices=sorted(verify.SUITES) + ["all"])
    v.add_argument("-o", "--output")
    v.add_argument("--figure", help="write a pass/fail bar chart to this path")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classes", help="partition L_B(n) by SPM fixed point")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--members", action="store_true")
    c.add_argument("--format", choices=("text", "dot"), default="text")
    c.add_argument("-o", "--output")
    c.add_argument("--figure")
    c.set_defaults(func=cmd_classes)

    f = sub.add_parser("fixed-point", help="bottom element of L(n, theta)")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--theta", type=int, required=True)
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_fixed_point)

    for name in ("chain", "theta-report"):
        ch = sub.add_parser(name, help="walk theta from n down to -n+2")
        ch.add_argument("--n", type=int, required=True)
        ch.add_argument("--no-filter", action="store_true", help="skip the membership-filter comparison")
        ch.add_argument("--no-lattice", action="store_true", help="skip the all-pairs lattice check")
        ch.add_argument("-o", "--output")
        ch.add_argument("--figure", help="write size/chain-length plot to this path")
        ch.set_defaults(func=cmd_chain)

    cv = sub.add_parser("cfg-verify", help="lattice, convergence and greedoid checks for one chip-firing game")
    cv.add_argument("--n", type=int, required=True)
    cv.add_argument("--m", type=int, required=True)
    cv.add_argument("--origin")
    cv.add_argument("--cap", type=int, default=None)
    cv.add_argument("-o", "--output")
    cv.set_defaults(func=cmd_cfg_verify)

    cl = sub.add_parser("cfg-language", help="print every valid firing word up to length L")
    cl.add_argument("--n", type=int, required=True)
    cl.add_argument("--m", type=int, required=True)
    cl.add_argument("--L", type=int, required=True)
    cl.add_argument("--origin")
    cl.add_argument("-o", "--output")
    cl.set_defaults(func=cmd_cfg_language)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, SandlatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
