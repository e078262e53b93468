"""Command-line front end.

Thin by design: each command maps to one library operation, prints MRX or
a one-line verdict, and turns library errors into exit codes (1 for
domain failures, 2 for usage problems).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import construct, existence, ingredients, oracle
from .errors import HoleyMagicError, NotConstructible
from .grid import MagicSpec, parse, serialize, verify
from .ingredients import DiagonalProfile
from .kotzig import kotzig


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (HoleyMagicError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _cache_of(args):
    path = getattr(args, "cache", None) or os.environ.get("HOLEY_CACHE")
    return ingredients.IngredientCache(path) if path else None


def _emit(grid) -> int:
    sys.stdout.write(serialize(grid))
    return 0


def _run_two_per_column(args) -> int:
    return _emit(construct.two_per_column(args.m, args.k))


def _run_stacked(args) -> int:
    square = None
    if args.s != 2:  # the s=2 case delegates internally and needs no square
        square = ingredients.magic_square_holes(args.m, args.s, cache=_cache_of(args))
    return _emit(construct.stacked(args.m, args.k, args.s, square))


def _run_nmss(args) -> int:
    square = ingredients.magic_square_holes(args.m, args.s, cache=_cache_of(args))
    result = construct.nmss(args.m, args.s, args.t, square)
    for sq in result.squares:
        sys.stdout.write(serialize(sq))
    return 0


def _run_product(args) -> int:
    cache = _cache_of(args)
    square = ingredients.magic_square_holes(args.m, args.s, cache=cache)
    rect = ingredients.classical_rectangle(args.a, args.b, cache=cache)
    return _emit(construct.product(square, rect))


def _run_five_case(args) -> int:
    m, s = args.m, args.s
    if m < 1 or s < 1:
        raise ValueError("m and s must be positive")
    if s % 2 == 1:
        raise NotConstructible(f"no MR({2 * m},{3 * m};{3 * s},{2 * s}): s must be even")
    if s > m:
        raise NotConstructible(f"need s <= m, got s={s} m={m}")
    cache = _cache_of(args)
    profile = DiagonalProfile(((s // 2, 0, m * s - 1),))
    big = ingredients.magic_square_holes(2 * m, 2 * s, profile=profile, cache=cache)
    if s == 2:
        strip = construct.two_per_column(m, 2)
    else:
        strip = construct.stacked(m, 2, s, ingredients.magic_square_holes(m, s, cache=cache))
    return _emit(construct.five_case(m, s, big, strip))


def _run_block_set(args) -> int:
    members = ingredients.magic_rectangle_set(args.a, args.b, args.c, cache=_cache_of(args))
    return _emit(construct.block_set(args.a, args.b, args.c, members))


def _run_verify(args) -> int:
    if args.path is None:
        text = sys.stdin.read()
    else:
        with open(args.path, "r") as fh:
            text = fh.read()
    grid = parse(text)
    m, n, r, s = args.spec
    report = verify(grid, MagicSpec(m, n, r, s))
    if report.ok:
        print(f"OK row={report.row_constant} col={report.col_constant}")
        return 0
    print("FAIL " + " ".join(str(v) for v in report.failures))
    return 1


def _run_decide(args) -> int:
    decision = existence.decide(args.m, args.n, args.r, args.s)
    if decision.verdict == "exists":
        print(f"EXISTS {decision.route}")
        return 0
    if decision.verdict == "not-exists":
        print(f"NOT-EXISTS {decision.reason}")
        return 1
    print("UNKNOWN")
    return 0


def _run_oracle(args) -> int:
    result = oracle.enumerate(args.m, args.n, args.r, args.s,
                              witness_cap=args.cap, node_budget=args.budget)
    print(f"count={result.count} exhausted={'true' if result.exhausted else 'false'}")
    for grid in result.witnesses:
        sys.stdout.write(serialize(grid))
    return 0


def _run_kotzig(args) -> int:
    arr = kotzig(args.s, args.k)
    for row in arr.entries:
        print(" ".join(str(v) for v in row))
    return 0


def _run_ingredient_ms(args) -> int:
    return _emit(ingredients.magic_square_holes(args.m, args.s, cache=_cache_of(args)))


def _run_ingredient_mr(args) -> int:
    return _emit(ingredients.classical_rectangle(args.a, args.b, cache=_cache_of(args)))


def _run_ingredient_mrs(args) -> int:
    members = ingredients.magic_rectangle_set(args.a, args.b, args.c, cache=_cache_of(args))
    for rect in members:
        sys.stdout.write(serialize(rect))
    return 0


def _add_cache_flag(sub) -> None:
    sub.add_argument("--cache", metavar="PATH",
                     help="ingredient cache file (default: $HOLEY_CACHE if set)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holeymagic",
        description="Construct, verify and decide existence of magic rectangles with empty cells.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    con = top.add_parser("construct", help="build a grid and print it as MRX")
    csub = con.add_subparsers(dest="construction", required=True)

    p = csub.add_parser("two-per-column", help="MR(m,km;2k,2)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_run_two_per_column)

    p = csub.add_parser("stacked", help="MR(m,km;ks,s)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    _add_cache_flag(p)
    p.set_defaults(func=_run_stacked)

    p = csub.add_parser("nmss", help="t separate squares sharing one constant")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    _add_cache_flag(p)
    p.set_defaults(func=_run_nmss)

    p = csub.add_parser("product", help="MR(am,bm;bs,as) from MS(m;s) x MR(a,b)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _add_cache_flag(p)
    p.set_defaults(func=_run_product)

    p = csub.add_parser("five-case", help="MR(2m,3m;3s,2s)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    _add_cache_flag(p)
    p.set_defaults(func=_run_five_case)

    p = csub.add_parser("block-set", help="MR(ac,bc;b,a) from an MRS(a,b;c)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    _add_cache_flag(p)
    p.set_defaults(func=_run_block_set)

    p = top.add_parser("verify", help="check an MRX grid against a spec")
    p.add_argument("path", nargs="?", default=None,
                   help="MRX file (default: standard input)")
    p.add_argument("--spec", type=int, nargs=4, metavar=("M", "N", "R", "S"),
                   required=True)
    p.set_defaults(func=_run_verify)

    p = top.add_parser("decide", help="existence verdict for MR(m,n;r,s)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=_run_decide)

    p = top.add_parser("oracle", help="brute-force enumeration at desk scale")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--cap", type=int, default=4, help="witnesses to keep (default 4)")
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_NODE_BUDGET,
                   help="search node budget")
    p.set_defaults(func=_run_oracle)

    p = top.add_parser("kotzig", help="print an s x k Kotzig array")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_run_kotzig)

    ing = top.add_parser("ingredient", help="fetch or search an ingredient grid")
    isub = ing.add_subparsers(dest="ingredient", required=True)

    p = isub.add_parser("ms", help="s-diagonal magic square with holes")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    _add_cache_flag(p)
    p.set_defaults(func=_run_ingredient_ms)

    p = isub.add_parser("mr", help="classical full magic rectangle")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _add_cache_flag(p)
    p.set_defaults(func=_run_ingredient_mr)

    p = isub.add_parser("mrs", help="magic rectangle set, printed as MRX blocks")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    _add_cache_flag(p)
    p.set_defaults(func=_run_ingredient_mrs)

    return parser


if __name__ == "__main__":
    main()
