"""Command-line front end: ``aloop <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions, lie
from .affine import DEFAULT_BUDGET, find_affine_structure
from .enumeration import SearchSpec, enumerate_loops
from .errors import AlgebraError, FormatError
from .loops import format_ctab, parse_ctab
from .report import SCHEMA, affine_section, analyze, format_text, plain
from .structure import derived_series, is_simple, minimal_normal_subloops, parity_decomposition

LOOP_BUILDERS = {
    "cyclic": constructions.cyclic,
    "elementary-abelian": constructions.elementary_abelian_2,
    "dihedral": constructions.dihedral,
    "symmetric": constructions.symmetric,
    "alternating": constructions.alternating,
    "na5": lambda: constructions.na5(),
}
ALGEBRA_BUILDERS = {
    "abelian": lie.abelian,
    "heisenberg": lambda: lie.heisenberg(),
    "filiform": lie.filiform,
    "w3": lambda: lie.w3(),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _bool(text: str) -> bool:
    if text.lower() in ("true", "yes", "1"):
        return True
    if text.lower() in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=Path, help="write output here instead of stdout")

    p = _Parser(prog="aloop", description="Analyze finite loops and GF(2) Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def loop_cmd(name, help, expect=False):
        s = sub.add_parser(name, parents=[common], help=help)
        s.add_argument("table", type=Path, help=".ctab file")
        if expect:
            s.add_argument("--expect", type=_bool, help="exit 1 unless the property has this value")
        return s

    loop_cmd("validate", "check that a table is a loop")
    a = loop_cmd("analyze", "full property report")
    a.add_argument("--timings", action="store_true", help="include wall-clock timings")
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    a.add_argument("--coords", choices=("mlt", "labels"), default="mlt",
                   help="where to look for coordinates first")
    loop_cmd("solvable", "derived series", expect=True)
    loop_cmd("simple", "simplicity, two ways", expect=True)
    loop_cmd("decompose", "odd/2-power decomposition and minimal normal subloops")
    af = loop_cmd("affine", "affine coordinates and circle-loop checks", expect=True)
    af.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    af.add_argument("--coords", choices=("mlt", "labels"), default="mlt")
    le = loop_cmd("lie-extract", "extract the GF(2) Lie algebra of an exponent-2 loop")
    le.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    le.add_argument("--coords", choices=("mlt", "labels"), default="labels")

    lc = sub.add_parser("lie-check", parents=[common], help="identities of a .gf2lie algebra")
    lc.add_argument("algebra", type=Path)
    lc.add_argument("--expect", type=_bool, help="expected value of jacobi and premedial")
    lt = sub.add_parser("lie-toloop", parents=[common], help="loop u o v = u + v + [u,v]")
    lt.add_argument("algebra", type=Path)

    en = sub.add_parser("enumerate", parents=[common], help="all normalized loops of an order")
    en.add_argument("order", type=int)
    en.add_argument("--filter", action="append", default=[],
                    choices=("commutative", "automorphic", "nonassociative"))
    en.add_argument("--canonical", action="store_true", help="one table per isomorphism class")
    en.add_argument("--workers", type=int, default=1)
    en.add_argument("--count-only", action="store_true")

    co = sub.add_parser("construct", parents=[common], help="write a named loop or algebra")
    co.add_argument("kind", choices=sorted(LOOP_BUILDERS) + [f"lie-{k}" for k in sorted(ALGEBRA_BUILDERS)])
    co.add_argument("param", type=int, nargs="?")
    return p


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n" if args.format == "json" else text
    if args.out:
        args.out.write_text(out)
    else:
        sys.stdout.write(out)


def _expect(args, value) -> int:
    expected = getattr(args, "expect", None)
    return 1 if expected is not None and expected != value else 0


def _load_loop(path: Path):
    return parse_ctab(path.read_text())


def cmd_validate(args) -> int:
    text = args.table.read_text()
    try:
        Q = parse_ctab(text)
    except AlgebraError as exc:
        if isinstance(exc, FormatError):
            raise
        _emit(args, {"is_loop": False, "error": str(exc)}, f"not a loop: {exc}\n")
        return 1
    _emit(args, {"order": Q.n, "is_loop": True, "error": None}, f"loop of order {Q.n}\n")
    return 0


def cmd_analyze(args) -> int:
    report = analyze(_load_loop(args.table), args.seed, args.timings, args.budget, args.coords)
    d = report.to_dict()
    d.pop("schema")
    _emit(args, d, report.to_text())
    return 0


def cmd_solvable(args) -> int:
    ds = derived_series(_load_loop(args.table))
    d = {"solvable": ds.solvable, "derived_series": list(ds.sizes),
         "quotient_orders": list(ds.quotient_orders)}
    _emit(args, d, format_text(d))
    return _expect(args, ds.solvable)


def cmd_simple(args) -> int:
    s = is_simple(_load_loop(args.table))
    d = {"simple": s}
    _emit(args, d, format_text(d))
    return _expect(args, s)


def cmd_decompose(args) -> int:
    Q = _load_loop(args.table)
    pd = parity_decomposition(Q)
    d = {"odd": list(pd.odd.elements), "even": list(pd.even.elements),
         "sizes": [pd.odd.size, pd.even.size],
         "direct_product": pd.is_internal_direct_product, "witness": plain(pd.witness),
         "minimal_normal": [list(m.elements) for m in minimal_normal_subloops(Q)]}
    _emit(args, d, format_text(d))
    return 0


def cmd_affine(args) -> int:
    aff = affine_section(_load_loop(args.table), args.seed, args.budget, args.coords)
    if aff is not None:
        aff.pop("_structure", None)
    d = {"affine": aff}
    _emit(args, d, format_text(d))
    return _expect(args, bool(aff and aff["found"]))


def cmd_lie_extract(args) -> int:
    Q = _load_loop(args.table)
    S = find_affine_structure(Q, args.seed, args.budget, args.coords)
    if S is None:
        raise AlgebraError("no affine structure found")
    A = lie.algebra_from_loop(Q, S, args.seed)
    s = lie.series(A)
    body = lie.format_gf2lie(A)
    d = {"dim": A.dim, "coords": "mlt" if S.inside_mlt else "labels",
         "lower_central": list(s.lower_central),
         "nilpotency_class": s.nilpotency_class, "algebra": body}
    header = f"# lower central series {' '.join(map(str, s.lower_central))}\n"
    _emit(args, d, header + body)
    return 0


def cmd_lie_check(args) -> int:
    A = lie.parse_gf2lie(args.algebra.read_text())
    ax = lie.check_axioms(A, args.seed)
    pm = lie.check_premedial(A)
    s = lie.series(A)
    simple = lie.is_simple(A) if A.dim <= lie.SIMPLICITY_CAP else None
    d = {"dim": A.dim,
         "alternating": plain(ax.alternating), "jacobi": plain(ax.jacobi),
         "ad_product_identity": plain(lie.check_ad_product_identity(A)), "premedial": plain(pm.premedial),
         "lower_central": list(s.lower_central), "derived": list(s.derived),
         "nilpotency_class": s.nilpotency_class, "simple": simple,
         "perfect": lie.is_perfect(A)}
    _emit(args, d, format_text(d))
    return _expect(args, bool(ax.jacobi and pm.premedial))


def cmd_lie_toloop(args) -> int:
    Q = lie.loop_from_algebra(lie.parse_gf2lie(args.algebra.read_text()))
    _emit(args, {"order": Q.n, "table": [list(r) for r in Q.rows]}, format_ctab(Q))
    return 0


def cmd_enumerate(args) -> int:
    spec = SearchSpec(args.order, frozenset(args.filter), args.canonical)
    tables = list(enumerate_loops(spec, args.workers))
    d = {"order": args.order, "filters": sorted(spec.filters), "canonical": args.canonical,
         "count": len(tables)}
    if args.count_only:
        _emit(args, d, f"{len(tables)}\n")
        return 0
    d["tables"] = [[list(r) for r in Q.rows] for Q in tables]
    _emit(args, d, "\n".join(format_ctab(Q) for Q in tables))
    return 0


def _build(builder, param):
    try:
        return builder() if param is None else builder(param)
    except TypeError:
        raise AlgebraError("wrong number of parameters for this construction") from None


def cmd_construct(args) -> int:
    if args.kind.startswith("lie-"):
        A = _build(ALGEBRA_BUILDERS[args.kind[4:]], args.param)
        _emit(args, {"dim": A.dim, "algebra": lie.format_gf2lie(A)}, lie.format_gf2lie(A))
        return 0
    Q = _build(LOOP_BUILDERS[args.kind], args.param)
    _emit(args, {"order": Q.n, "table": [list(r) for r in Q.rows]}, format_ctab(Q))
    return 0


COMMANDS = {
    "validate": cmd_validate, "analyze": cmd_analyze, "solvable": cmd_solvable,
    "simple": cmd_simple, "decompose": cmd_decompose, "affine": cmd_affine,
    "lie-extract": cmd_lie_extract, "lie-check": cmd_lie_check,
    "lie-toloop": cmd_lie_toloop, "enumerate": cmd_enumerate, "construct": cmd_construct,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (AlgebraError, OSError) as exc:
        print(f"aloop {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
