"""Command-line front end.

Exit codes: 0 success / verified, 1 refuted, 2 truncated or incomplete,
3 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .centralizer import (
    COUNTEREXAMPLE_BASE,
    COUNTEREXAMPLE_WALK,
    DEFAULT_MAX_EDGES,
    DEFAULT_MAX_NODES,
    build_groupoid,
    count_support_violations,
    is_in_Y,
    render_dot,
    render_report,
    verify_main_theorem,
    walk_product,
)
from .core import DEFAULT_ROOT_CAP, CoxeterSystem, format_root_table, format_vector, inversion_set
from .decomp import render_decomposition, standard_decomposition
from .errors import CoxeterError, InvariantViolation, NonTerminating
from .graph import (
    classify_components,
    counterexample_graph,
    format_set,
    format_tuple,
    graph_from_type,
    parse_graph,
    parse_subset,
    parse_tuple,
)

EXIT_OK, EXIT_REFUTED, EXIT_TRUNCATED, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxcent", description="Exact computations in Coxeter groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, subset_help: str) -> None:
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--graph", metavar="PATH", help="Coxeter graph file")
        src.add_argument("--type", metavar="NAME", help="finite type such as E8, D7, H4, I2(5)")
        sp.add_argument("--subset", metavar="i,j,...", help=subset_help)
        sp.add_argument("--format", choices=("text", "tsv", "dot"), default="text")

    def limits(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--depth", type=_nonnegative, default=12, help="depth bound for root windows")
        sp.add_argument("--max-nodes", type=_positive, default=DEFAULT_MAX_NODES)
        sp.add_argument("--max-edges", type=_positive, default=DEFAULT_MAX_EDGES)
        sp.add_argument("--max-roots", type=_positive, default=DEFAULT_ROOT_CAP)

    sp = sub.add_parser("roots", help="table of positive roots of a finite (sub)system")
    common(sp, "generators spanning the finite subsystem (default: all)")
    limits(sp)

    sp = sub.add_parser("centralizer", help="groupoid, perpendicular simple system and Y generators")
    common(sp, "the subset I")
    limits(sp)

    sp = sub.add_parser("verify", help="check that Y_I fixes the finite part of the perpendicular subgroup")
    common(sp, "the subset I")
    limits(sp)

    sp = sub.add_parser("decompose", help="standard decomposition of an element of Y_{z,y}")
    common(sp, "the set J")
    limits(sp)
    sp.add_argument("--word", default="", help="the element as comma-separated generators")
    sp.add_argument("--y", required=True, help="source tuple, e.g. 1,2,3")
    sp.add_argument("--z", required=True, help="target tuple, e.g. 5,4,3")

    sp = sub.add_parser("counterexample", help="replay the built-in counterexample walk")
    sp.add_argument("--format", choices=("text",), default="text")
    return p


def _load_system(args: argparse.Namespace) -> CoxeterSystem:
    if args.graph:
        try:
            text = Path(args.graph).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read graph file: {exc}") from exc
        return CoxeterSystem(parse_graph(text))
    if args.type:
        try:
            return CoxeterSystem(graph_from_type(args.type))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    raise InputError("give --graph PATH or --type NAME")


def _subset(args: argparse.Namespace, system: CoxeterSystem, default_all: bool) -> frozenset[int]:
    if args.subset is None:
        return frozenset(range(system.n)) if default_all else frozenset()
    return parse_subset(args.subset, system.n)


def cmd_roots(args: argparse.Namespace, out) -> int:
    system = _load_system(args)
    J = _subset(args, system, default_all=True)
    bad = [c for c, ft in classify_components(system.graph, J) if ft is None]
    if bad:
        raise InputError("not of finite type; offending component(s): " + ", ".join(format_set(c) for c in bad))
    if args.format == "dot":
        raise InputError("roots supports --format text or tsv")
    types = ", ".join(ft.name for _, ft in classify_components(system.graph, J))
    if args.format == "text":
        out.write(f"# positive roots of {types or 'the empty subsystem'}; coefficients in simple roots\n")
    out.write(format_root_table(system, J, args.format))
    return EXIT_OK


def cmd_centralizer(args: argparse.Namespace, out) -> int:
    system = _load_system(args)
    I = _subset(args, system, default_all=False)
    if args.format == "dot":
        gpd = build_groupoid(system, tuple(sorted(I)), args.max_nodes, args.max_edges)
        out.write(render_dot(gpd))
        return EXIT_OK if gpd.complete else EXIT_TRUNCATED
    rep = verify_main_theorem(system, I, args.max_nodes, args.max_edges, args.max_roots)
    out.write(render_report(rep))
    return EXIT_OK if rep.complete else EXIT_TRUNCATED


def cmd_verify(args: argparse.Namespace, out) -> int:
    system = _load_system(args)
    I = _subset(args, system, default_all=False)
    rep = verify_main_theorem(system, I, args.max_nodes, args.max_edges, args.max_roots)
    out.write(f"I = {format_set(I)}\n")
    out.write(f"hypothesis (A_>1-free): {'true' if rep.hypothesis else 'false'}\n")
    out.write(f"perpendicular simple roots: {len(rep.perp_roots)} "
              f"(finite part: {len(rep.finite.finite_roots)})\n")
    out.write(f"loop generators: {len(rep.generators)}\n")
    for v in rep.verdicts:
        if not v.fixed:
            out.write(f"generator y{v.generator + 1} moves {format_vector(v.root)} "
                      f"to {format_vector(v.image)}\n")
    # roots orthogonal to Π_I must have support apart from the infinite components of I
    window = system.roots_up_to_depth(args.depth, args.max_roots)
    bad = count_support_violations(window, I)
    out.write(f"support check: {len(window)} roots up to depth {args.depth}"
              f"{' (capped)' if window.truncated else ''}, {bad} violation(s)\n")
    if not rep.complete:
        out.write("caveat: search limits were reached; the check covers only what was found\n")
    if bad:
        out.write("REFUTED-SUPPORT\n")
        return EXIT_REFUTED
    out.write(f"{rep.status}\n")
    return rep.exit_code


def cmd_decompose(args: argparse.Namespace, out) -> int:
    system = _load_system(args)
    J = _subset(args, system, default_all=False)
    word = parse_tuple_with_repeats(args.word, system.n)
    y = parse_tuple(args.y, system.n)
    z = parse_tuple(args.z, system.n)
    u = system.from_word(word)
    d = standard_decomposition(system, u, y, z, J)
    out.write(f"# u of length {u.length()}, y = {format_tuple(y)}, z = {format_tuple(z)}, J = {format_set(J)}\n")
    out.write(render_decomposition(d))
    return EXIT_OK


def parse_tuple_with_repeats(text: str, n: int) -> list[int]:
    text = text.strip()
    if not text:
        return []
    out = []
    for part in text.replace(" ", ",").split(","):
        if not part:
            continue
        if not part.isdigit() or not 1 <= int(part) <= n:
            raise InputError(f"bad generator {part!r} in word")
        out.append(int(part) - 1)
    return out


def cmd_counterexample(args: argparse.Namespace, out) -> int:
    system = CoxeterSystem(counterexample_graph())
    w, visited = walk_product(system, COUNTEREXAMPLE_BASE, COUNTEREXAMPLE_WALK)
    out.write("walk: " + " -> ".join(format_tuple(x) for x in visited) + "\n")
    base = COUNTEREXAMPLE_BASE
    a1, a2 = system.simple[0], system.simple[1]
    checks = [
        ("closed walk", visited[-1] == base),
        ("w in Y_I", is_in_Y(w, base, base)),
        ("w fixes alpha_4 and alpha_5", all(w.cols[s] == system.simple[s] for s in base)),
        ("w.alpha_1 = alpha_2", w.act(a1) == a2),
        ("length equals inversion count", w.length() == len(inversion_set(w))),
    ]
    out.write(f"length: {w.length()}\n")
    out.write("reduced word: " + " ".join(f"r{s + 1}" for s in w.reduced_word()) + "\n")
    out.write(f"w.alpha_1 = {format_vector(w.act(a1))}\n")
    for name, ok in checks:
        out.write(f"{'PASS' if ok else 'FAIL'} {name}\n")
    ok = all(c for _, c in checks)
    out.write("PASS\n" if ok else "FAIL\n")
    return EXIT_OK if ok else EXIT_REFUTED


COMMANDS = {
    "roots": cmd_roots,
    "centralizer": cmd_centralizer,
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "counterexample": cmd_counterexample,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except NonTerminating as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_TRUNCATED
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    except (InputError, CoxeterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
