"""``spanlab`` command line.

Data goes to stdout (or ``--out``); progress and summaries go to stderr.
Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import census as cs
from .certificates import certificate_problem, load_certificate, make_certificate
from .combinatorics import (delannoy, extremal_formula, index_set_size, parity_class_sizes,
                            residue_count, sregular_upper_bound)
from .constructions import ConstructionError, ConstructionName, build
from .groups import GeneratorSet, GroupSpec
from .span import (bfs_ball, directed_bfs_ball, directed_covering_radius, directed_span,
                   signed_span, undirected_diameter)

DEFAULT_S_CAP = 12
FORMULA_KINDS = ("delannoy", "index_set", "parity_classes", "residue", "sregular_bound",
                 "directed_cyclic", "directed_abelian", "undirected_cyclic", "undirected_z2",
                 "conjectured_noncyclic", "sregular_max")


class UsageError(Exception):
    pass


def parse_gens(G: GroupSpec, text: str) -> GeneratorSet:
    """``x1,y1;x2,y2`` pairs, or a comma list of integers for a cyclic group."""
    try:
        if ";" in text:
            pairs = [tuple(int(v) for v in part.split(",")) for part in text.split(";") if part]
            if any(len(p) != 2 for p in pairs):
                raise ValueError("each generator needs two coordinates")
            return GeneratorSet.from_pairs(G, pairs)
        values = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --gens {text!r}: {exc}") from None
    if G.is_cyclic():
        return GeneratorSet.cyclic(G, values)
    if len(values) == 2:
        return GeneratorSet.from_pairs(G, [values])
    raise UsageError("noncyclic groups need --gens as x1,y1;x2,y2")


def _group(text: str) -> GroupSpec:
    try:
        return GroupSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_s(args: argparse.Namespace) -> None:
    if not 1 <= args.s <= args.s_cap:
        raise UsageError(f"--s must lie in [1, {args.s_cap}] (raise --s-cap to go further)")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_formula(args: argparse.Namespace) -> int:
    s, kind = args.s, args.kind
    if kind == "delannoy":
        print(delannoy(args.m, s))
    elif kind == "index_set":
        print(index_set_size(s))
    elif kind == "parity_classes":
        print(*parity_class_sizes(s))
    elif kind == "residue":
        if args.c is None or args.i is None:
            raise UsageError("residue needs --c and --i")
        print(residue_count(s, args.c, args.i))
    elif kind == "sregular_bound":
        if args.c is None:
            raise UsageError("sregular_bound needs --c")
        rep = sregular_upper_bound(args.c, s)
        cond = f" (equality only if {rep.equality_condition})" if rep.equality_condition else ""
        print(f"{rep.bound} {rep.case_label.value}{cond}")
    else:
        print(extremal_formula(kind, s))
    return 0


def _verify_construction(con) -> bool:
    if con.directed:
        radius = directed_covering_radius(con.group, con.generators)
        ok = radius.value is not None and radius.value <= con.s
        print(f"directed covering radius {radius.value}, s={con.s}: {'ok' if ok else 'FAILED'}")
        return ok
    span = signed_span(con.group, con.generators, con.s)
    ball = bfs_ball(con.group, con.generators, con.s)
    agree = bool(np.array_equal(span.covered, ball.covered))
    ok = span.covers_group() and agree
    print(f"covers {span.cover_count}/{con.group.order()}, bfs agrees: {agree}: "
          f"{'ok' if ok else 'FAILED'}")
    return ok


def cmd_construct(args: argparse.Namespace) -> int:
    try:
        con = build(args.name, args.s, c=args.c, p=args.p, k=args.k, n=args.n)
    except ConstructionError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from None
    print(con.describe())
    ok = _verify_construction(con)
    if ok and args.emit_cert:
        if con.directed:
            raise UsageError("certificates are only defined for spanning sets")
        make_certificate(con.group, con.generators, con.s).write(args.emit_cert)
        print(f"certificate written to {args.emit_cert}", file=sys.stderr)
    return 0 if ok else 1


def cmd_span(args: argparse.Namespace) -> int:
    G = _group(args.group)
    A = parse_gens(G, args.gens)
    if args.directed:
        res = directed_span(G, A, args.s)
        check = directed_bfs_ball(G, A, args.s)
        diam = directed_covering_radius(G, A)
    else:
        res = signed_span(G, A, args.s)
        check = bfs_ball(G, A, args.s)
        diam = undirected_diameter(G, A)
    if not np.array_equal(res.covered, check.covered):
        print("span and breadth-first ball disagree", file=sys.stderr)
        return 1
    d = "infinite" if diam.value is None else diam.value
    label = "covering radius" if args.directed else "diameter"
    print(f"covers {res.cover_count}/{G.order()}, {label} {d}")
    if args.emit_cert:
        if args.directed or not res.covers_group():
            raise UsageError("a certificate needs an undirected spanning set")
        make_certificate(G, A, args.s).write(args.emit_cert)
    return 0


def cmd_diameter(args: argparse.Namespace) -> int:
    G = _group(args.group)
    A = parse_gens(G, args.gens)
    res = directed_covering_radius(G, A) if args.directed else undirected_diameter(G, A)
    if res.value is None:
        print("infinite")
    else:
        w = res.witness_element
        print(f"{res.value} (witness ({w.x},{w.y}))")
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    _check_s(args)
    records = cs.rank2_census(args.s, threads=args.threads, max_order=args.max_order)
    text = cs.format_csv(records) if args.format == "csv" else cs.format_jsonl(records)
    _emit(text, args.out)
    spanning = [r for r in records if r.has_spanning_pair]
    regular = [r for r in spanning if r.is_regular]
    exceptions = ", ".join(str(r.group) for r in spanning if not r.is_regular)
    print(f"s={args.s}: {len(records)} rank-2 groups, {len(spanning)} with a spanning pair, "
          f"{len(regular)} s-regular; non-regular: {exceptions or 'none'}", file=sys.stderr)
    if args.emit_certs:
        paths = cs.emit_certificates(records, args.emit_certs)
        print(f"{len(paths)} certificates written to {args.emit_certs}", file=sys.stderr)
    return 0


def cmd_extremal(args: argparse.Namespace) -> int:
    _check_s(args)
    rep = cs.extremal_order(args.kind, args.s, threads=args.threads)
    if args.format == "json":
        _emit(json.dumps(rep.json_obj()) + "\n", args.out)
        return 0
    groups = ", ".join(str(G) for G in rep.attaining_groups) or "none"
    agrees = "n/a" if rep.agrees is None else str(rep.agrees).lower()
    _emit(f"{rep.max_order}\nattaining: {groups}\nformula: {rep.formula_value}\n"
          f"agrees={agrees}\n", args.out)
    return 0


def cmd_perfect(args: argparse.Namespace) -> int:
    _check_s(args)
    try:
        if args.basis:
            found = cs.perfect_basis_census(args.m, args.s, cap=args.max_order)
            expected = cs.characterized_perfect_bases(args.m, args.s)
        else:
            found = cs.perfect_census(args.m, args.s, cap=args.max_order)
            expected = cs.conjectured_perfect_spanning(args.m, args.s)
    except cs.CapExceeded as exc:
        raise UsageError(str(exc)) from None
    for G, A in found:
        print(f"{G} {A}")
    got = {(G, cs.negation_class(G, A)) for G, A in found}
    status = cs.Status.CONSISTENT if got == expected else cs.Status.INCONSISTENT
    print(f"{len(found)} sets up to negation; predicted families: {status.value}",
          file=sys.stderr)
    return 0


def cmd_conjecture41(args: argparse.Namespace) -> int:
    _check_s(args)
    rows = cs.conjecture41_probe(args.s, threads=args.threads)
    lines = ["k,has_spanning_pair,predicted,matches_conjecture"]
    lines += [f"{r.k},{r.has_spanning_pair},{r.predicted},{r.matches_conjecture}" for r in rows]
    _emit("\n".join(lines) + "\n", args.out)
    print(f"s={args.s}: {cs.conjecture41_status(rows).value}", file=sys.stderr)
    return 0


def cmd_check_cert(args: argparse.Namespace) -> int:
    try:
        data = load_certificate(args.path)
    except (OSError, ValueError) as exc:
        print(f"{args.path}: unreadable ({exc})", file=sys.stderr)
        return 1
    problem = certificate_problem(data)
    if problem:
        print(f"{args.path}: INVALID {problem}")
        return 1
    print(f"{args.path}: valid")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spanlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, search: bool = False) -> None:
        p.add_argument("--s", type=int, required=True)
        if search:
            p.add_argument("--threads", type=int, default=1)
            p.add_argument("--s-cap", type=int, default=DEFAULT_S_CAP)
            p.add_argument("--out")

    p = sub.add_parser("formula", help="evaluate a closed-form count or bound")
    common(p)
    p.add_argument("--kind", required=True, choices=FORMULA_KINDS)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--c", type=int)
    p.add_argument("--i", type=int)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("construct", help="build and verify an explicit construction")
    p.add_argument("name", choices=[n.value for n in ConstructionName])
    common(p)
    for flag in ("c", "p", "k", "n"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--emit-cert")
    p.set_defaults(func=cmd_construct)

    for name, func, helptext in (("span", cmd_span, "s-span of a generator set"),
                                 ("diameter", cmd_diameter, "Cayley graph diameter")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--group", required=True)
        p.add_argument("--gens", required=True)
        p.add_argument("--directed", action="store_true")
        if name == "span":
            common(p)
            p.add_argument("--emit-cert")
        p.set_defaults(func=func)

    p = sub.add_parser("census", help="spanning-pair and regularity census of rank-2 groups")
    common(p, search=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--emit-certs")
    p.add_argument("--max-order", type=int)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("extremal", help="largest order admitting a 2-element generating set")
    common(p, search=True)
    p.add_argument("--kind", required=True, choices=[k.value for k in cs.ExtremalKind])
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("perfect", help="perfect spanning sets or bases")
    common(p, search=True)
    p.add_argument("--m", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--basis", action="store_true", help="directed perfect bases")
    p.add_argument("--max-order", type=int, default=cs.DEFAULT_CAP)
    p.set_defaults(func=cmd_perfect)

    p = sub.add_parser("conjecture41", help="probe Z_2 x Z_2k against the predicted pattern")
    common(p, search=True)
    p.set_defaults(func=cmd_conjecture41)

    p = sub.add_parser("check-cert", help="verify a span certificate file")
    p.add_argument("path")
    p.set_defaults(func=cmd_check_cert)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        parser.print_usage(sys.stderr)
        print("spanlab: error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"spanlab: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
