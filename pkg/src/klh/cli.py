"""
Command-line front end.

    klh h --type A --rank 3 --w 3412
    klh kl --type A --rank 3 --y e --w 3412
    klh poincare --type A --rank 5 --w 564312 --parabolic 2,3,4
    klh patterns --type D --rank 5 --w=5,2,-3,-4,1
    klh verify --type A --rank 5 --suite formula-a
    klh scan --type D --rank 4 --format csv --out d4.csv
    klh cache build --type A --rank 4

One-line notation is comma-separated (negatives are barred entries); a
plain digit string such as 3412 also works when n < 10. Use --w=... when
the first entry is negative. Exit status: 0 success, 1 verification
failure, 2 usage error or refused size.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bruhat import is_bp_decomposition, poincare, quotient_poincare
from .cache import (
    CacheError, cache_path, cached_kl_table, load_entries, save_table,
)
from .groups import (
    CoxeterContext, Element, GroupTooLarge, Permutation, identity,
    parabolic_decompose, parse_one_line, word_to_element,
)
from .heights import NotTopHeavy, is_top_heavy, top_heavy_h
from .kl import IntervalTooLarge, KLTable, kl_table
from .patterns import CLASSIC, SIGNED_VARIANTS, PatternId, find_classic, find_signed
from .records import dumps, element_record, encode_h, methods_for, pattern_stats
from .records import scan_records, write_scan
from .verify import SUITES, RankCapExceeded, rank_cap, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _one_line(w: Element) -> list[int]:
    return list(w.images if isinstance(w, Permutation) else w.window)


def parse_element(ctx: CoxeterContext, text: str) -> Element:
    """Accept one-line notation, `e`, or a word such as `s1s2`."""
    t = text.strip()
    if t == "e":
        return identity(ctx)
    if t.startswith("s"):
        labels = [int(x) for x in t.split("s")[1:]]
        return word_to_element(ctx, labels)
    return parse_one_line(ctx, t)


def _context(args) -> CoxeterContext:
    return CoxeterContext(args.type, args.rank)


def _kl(ctx: CoxeterContext) -> KLTable:
    return cached_kl_table(ctx)


def _check_cap(ctx: CoxeterContext, slow: bool):
    cap = rank_cap(ctx, slow)
    if ctx.rank > cap:
        hint = "" if slow else "; pass --slow to raise it"
        raise RankCapExceeded(f"{ctx} is above the rank cap {cap}{hint}")


# -- subcommands --------------------------------------------------------------

def cmd_h(args) -> int:
    ctx = _context(args)
    w = parse_element(ctx, args.w)
    methods = methods_for(ctx, args.method)
    if "kl" in methods:
        _kl(ctx)
    sys.stdout.write(dumps(element_record(w, methods)))
    return EXIT_OK


def cmd_kl(args) -> int:
    ctx = _context(args)
    y = parse_element(ctx, args.y)
    w = parse_element(ctx, args.w)
    tab = _kl(ctx)
    a, b = tab.table.index_of(y), tab.table.index_of(w)
    below = tab.table.leq(a, b)
    out = {
        "type": ctx.type, "rank": ctx.rank,
        "y": _one_line(y), "w": _one_line(w),
        "leq": below,
        "R": list(tab.r(a, b).coeffs) if below else [],
        "P": list(tab.p(a, b).coeffs),
    }
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_poincare(args) -> int:
    ctx = _context(args)
    w = parse_element(ctx, args.w)
    L = poincare(w)
    out = {"type": ctx.type, "rank": ctx.rank, "w": _one_line(w),
           "ell": w.length, "L": list(L.coeffs),
           "top_heavy": is_top_heavy(L)}
    try:
        out["h_be"] = encode_h(top_heavy_h(L))
    except NotTopHeavy as exc:
        out["h_be"] = None
        out["error"] = str(exc)
    if args.parabolic is not None:
        J = sorted({int(x) for x in args.parabolic.split(",") if x.strip()})
        ctx.check_labels(J)
        upper, lower = parabolic_decompose(w, J)
        out["J"] = J
        out["w^J"] = _one_line(upper)
        out["w_J"] = _one_line(lower)
        out["L^J(w^J)"] = list(quotient_poincare(upper, J).coeffs)
        out["L(w_J)"] = list(poincare(lower).coeffs)
        out["bp"] = is_bp_decomposition(w, J)
    sys.stdout.write(dumps(out))
    return EXIT_OK


def _pattern_variants(w: Element):
    names = [PatternId.P3412, PatternId.P4231]
    if not isinstance(w, Permutation):
        names += list(SIGNED_VARIANTS)
    for pid in names:
        occs = (find_classic(w, CLASSIC[pid]) if pid in CLASSIC
                else find_signed(w, pid))
        yield pid, occs


def cmd_patterns(args) -> int:
    ctx = _context(args)
    w = parse_element(ctx, args.w)
    occurrences = {
        pid.value: [{"positions": list(o.positions), "values": list(o.values)}
                    for o in occs]
        for pid, occs in _pattern_variants(w)
    }
    out = {"type": ctx.type, "rank": ctx.rank, "w": _one_line(w),
           "patterns": pattern_stats(w), "occurrences": occurrences}
    sys.stdout.write(dumps(out))
    return EXIT_OK


def _save_cache(tab: KLTable):
    path = cache_path(tab.context)
    if path is not None:
        save_table(tab, path)


def cmd_verify(args) -> int:
    ctx = _context(args)
    _check_cap(ctx, args.slow)
    tab = _kl(ctx)
    report = run_suite(ctx, args.suite, slow=args.slow, kl=tab)
    _save_cache(tab)
    sys.stdout.write(dumps(report.to_json(timing=args.timing)))
    print(f"{ctx} {args.suite}: {report.checked} elements, "
          f"{len(report.failures)} failures, {report.elapsed:.2f}s",
          file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_scan(args) -> int:
    ctx = _context(args)
    _check_cap(ctx, args.slow)
    tab = _kl(ctx)
    t = tab.table
    rows = scan_records(ctx, (t.element(k) for k in range(t.size)))
    _save_cache(tab)
    text = write_scan(ctx, rows, args.format, Path(args.out) if args.out else None)
    if not args.out:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_cache(args) -> int:
    ctx = _context(args)
    path = Path(args.out) if args.out else cache_path(ctx)
    if path is None:
        raise UsageError("set KLH_CACHE_DIR or pass --out")
    if args.action == "build":
        _check_cap(ctx, args.slow)
        tab = kl_table(ctx)
        for k in range(tab.table.size):
            tab.p_column(k)
        save_table(tab, path)
        entries = sum(len(c) for c in tab.p_columns.values())
        sys.stdout.write(dumps({"type": ctx.type, "rank": ctx.rank,
                                "path": str(path), "entries": entries}))
        return EXIT_OK
    if args.action == "info":
        if not path.exists():
            raise UsageError(f"no cache at {path}")
        try:
            entries = load_entries(path, ctx)
        except CacheError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        columns = len({w for _, w, _ in entries})
        sys.stdout.write(dumps({"type": ctx.type, "rank": ctx.rank,
                                "path": str(path), "entries": len(entries),
                                "columns": columns, "valid": True}))
        return EXIT_OK
    # clear
    removed = path.exists()
    if removed:
        path.unlink()
    sys.stdout.write(dumps({"path": str(path), "removed": removed}))
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--type", required=True, choices=["A", "D"])
    group.add_argument("--rank", required=True, type=int)

    parser = argparse.ArgumentParser(
        prog="klh", description="Kazhdan-Lusztig polynomials and h(w) "
        "for Weyl groups of types A and D.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("h", parents=[group], help="h(w) by one or all methods")
    p.add_argument("--w", required=True)
    p.add_argument("--method", default="all",
                   choices=["kl", "be", "formula", "bound", "all"])
    p.set_defaults(func=cmd_h)

    p = sub.add_parser("kl", parents=[group], help="R_{y,w} and P_{y,w}")
    p.add_argument("--y", required=True)
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_kl)

    p = sub.add_parser("poincare", parents=[group],
                       help="rank sizes of [e, w], optionally factored")
    p.add_argument("--w", required=True)
    p.add_argument("--parabolic", metavar="J",
                   help="comma-separated labels of a parabolic subgroup")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("patterns", parents=[group], help="pattern occurrences")
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("verify", parents=[group], help="exhaustive sweeps")
    p.add_argument("--suite", default="all", choices=[*SUITES, "all"])
    p.add_argument("--slow", action="store_true")
    p.add_argument("--timing", action="store_true",
                   help="include elapsed time in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[group], help="one row per element")
    p.add_argument("--format", default="json", choices=["json", "csv"])
    p.add_argument("--out")
    p.add_argument("--slow", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("cache", parents=[group], help="persistent P-table cache")
    p.add_argument("action", choices=["build", "info", "clear"])
    p.add_argument("--out", help="cache file (default: under KLH_CACHE_DIR)")
    p.add_argument("--slow", action="store_true")
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError, TypeError, GroupTooLarge,
            IntervalTooLarge) as exc:
        # RankCapExceeded and NotTopHeavy are ValueErrors too
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
