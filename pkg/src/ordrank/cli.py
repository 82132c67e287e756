"""Command-line front end.

Exit codes: 0 success, 1 a verification did not come out as expected,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import corresp, dsl, efengine, linorder, oag, spines
from .hahn import DEFAULT_TERMS, Indeterminate, compare, invert_with_certificate, residue, sign, v_nat
from .oag import ZeroElement

CLI_MAX_RANK = 6


class UsageError(Exception):
    pass


def _emit(args, record: dict, lines: list[str]) -> None:
    if args.format == "record":
        print(json.dumps(record, indent=2, sort_keys=True, default=str))
    else:
        print("\n".join(lines))


def _engine(k: int) -> efengine.EFEngine:
    if k > CLI_MAX_RANK:
        raise UsageError(f"--k {k} exceeds the supported maximum {CLI_MAX_RANK}")
    return efengine.EFEngine(max_rank=CLI_MAX_RANK)


def cmd_ef(args) -> int:
    a, b = dsl.parse_order(args.left), dsl.parse_order(args.right)
    eng = _engine(args.k)
    eq = eng.equiv(a, b, args.k)
    rec = {"verb": "ef", "left": dsl.format_order(a), "right": dsl.format_order(b), "k": args.k,
           "equivalent": eq,
           "split_types": [len(eng.split_types(a, args.k)), len(eng.split_types(b, args.k))]}
    _emit(args, rec, [f"equivalent: {str(eq).lower()}",
                      f"k: {args.k}",
                      f"split types: {rec['split_types'][0]} / {rec['split_types'][1]}"])
    return 0


def cmd_cutdef(args) -> int:
    a, b = dsl.parse_order(args.left), dsl.parse_order(args.right)
    v = _engine(args.k).minimal_separating_rank(a, b, args.k)
    rec = {"verb": "cutdef", "left": dsl.format_order(a), "right": dsl.format_order(b), **v.as_record()}
    lines = [f"status: {v.status}", f"k: {v.k}",
             f"realized pointed types: left {len(v.left_types)}, right {len(v.right_types)}"]
    if not v.definable:
        lines.append("note: evidence only, not a proof of non-definability")
    _emit(args, rec, lines)
    return 0


def cmd_coaug(args) -> int:
    a, b, x = (dsl.parse_order(s) for s in (args.left, args.right, args.augment))
    v = efengine.coaugment_verdict(a, b, x, args.k, engine=_engine(args.k))
    rec = {"verb": "coaug", "left": dsl.format_order(a), "right": dsl.format_order(b), **v.as_record()}
    _emit(args, rec, [f"status: {v.status}", f"k: {v.k}", f"X: {dsl.format_order(x)}",
                      "note: evidence only, bounded-rank equivalence"])
    return 0


def _finite(s: str):
    t = dsl.parse_order(s)
    try:
        linorder.enumerate_finite(t)
    except linorder.NotFinite as exc:
        raise UsageError(str(exc)) from None
    return t


def cmd_rank(args, definable: bool = False) -> int:
    t = _finite(args.term)
    r = linorder.drk_finite(t) if definable else linorder.rank(t)
    rec = {"verb": "drk" if definable else "rank", "term": dsl.format_order(t),
           "segments": [sorted(s.elements) for s in r],
           "no_dense_part": linorder.check_no_dense_part(r)}
    _emit(args, rec, [repr(s) for s in r] + [f"no dense part: {str(rec['no_dense_part']).lower()}"])
    return 0


def cmd_spine(args) -> int:
    G = dsl.parse_group(args.group)
    sp = spines.build_spine(G, args.n)
    rows = sp.as_rows()
    rec = {"verb": "spine", "group": dsl.format_group(G), "n": args.n, "points": rows,
           "constant_colours": sp.constant_colours()}
    lines = [f"{'point':<16} {'A':<5} {'F':<5} {'D':<5} alpha"]
    for r in rows:
        alpha = ", ".join(f"a[{k}]={v}" for k, v in r["alpha"].items()) or "-"
        lines.append(f"{r['point']:<16} {str(r['A']):<5} {str(r['F']):<5} {str(r['D']):<5} {alpha}")
    lines.append(f"constant colours: {str(sp.constant_colours()).lower()}")
    _emit(args, rec, lines)
    return 0


def cmd_group(args) -> int:
    G = dsl.parse_group(args.group)
    n = args.n
    rec = {
        "verb": "group", "group": dsl.format_group(G), "n": n,
        "archimedean_spine": [repr(C) for C in oag.arch_spine(G)],
        "rank": [repr(C) for C in oag.rank(G)],
        "n_divisible_part": repr(oag.convex_ndivisible_part(G, n)),
        "divisibility_density": oag.check_divisibility_density(G, n),
        "n_regular": spines.is_n_regular(G, n),
    }
    lines = [f"group: {rec['group']}",
             f"archimedean spine: {', '.join(rec['archimedean_spine'])}",
             f"rank: {', '.join(rec['rank'])}",
             f"largest proper {n}-divisible convex subgroup: {rec['n_divisible_part']}",
             f"divisibility density (n={n}): {str(rec['divisibility_density']).lower()}",
             f"{n}-regular: {str(rec['n_regular']).lower()}"]
    if args.element:
        g = dsl.parse_element(G, args.element)
        info = {"element": dsl.format_element(g), "in_nG": oag.in_nG(g, n),
                "A_n": repr(spines.A_n(g, n)), "F_n": repr(spines.F_n(g, n))}
        if not g.is_zero:
            info["A"] = repr(oag.arch_class(g))
            info["B"] = repr(oag.smallest_convex(g))
        rec["element"] = info
        lines += [f"{k}: {v}" for k, v in info.items()]
    _emit(args, rec, lines)
    return 0


def cmd_hahn(args) -> int:
    G = dsl.parse_group(args.group)
    x = dsl.parse_series(G, args.series)
    rec = {"verb": "hahn", "group": dsl.format_group(G), "series": dsl.format_series(x)}
    lines = [f"series: {rec['series']}"]
    try:
        rec["v_nat"] = dsl.format_element(v_nat(x))
        rec["sign"] = sign(x)
        lines += [f"v_nat: {rec['v_nat']}", f"sign: {rec['sign']}"]
        if v_nat(x).sign() >= 0:
            rec["residue"] = str(residue(x))
            lines.append(f"residue: {rec['residue']}")
    except ZeroElement:
        rec["v_nat"] = None
        lines.append("v_nat: undefined (zero series)")
    except Indeterminate as exc:
        rec["indeterminate"] = str(exc)
        lines.append(f"indeterminate: {exc}")
    if args.invert:
        y, cert = invert_with_certificate(x, args.max_terms)
        rec["inverse"] = dsl.format_series(y)
        rec["certificate"] = {
            "last_exponent": dsl.format_element(cert.last_exponent),
            "remainder_valuation": None if cert.remainder_valuation is None
            else dsl.format_element(cert.remainder_valuation)}
        lines.append(f"inverse: {rec['inverse']}")
    if args.compare:
        y = dsl.parse_series(G, args.compare)
        rec["compare"] = compare(x, y)
        lines.append(f"compare: {rec['compare']}")
    _emit(args, rec, lines)
    return 0


def cmd_verify(args) -> int:
    if args.catalog:
        groups = oag.all_groups(args.catalog, oag.CATALOG_BASES)
    elif args.group:
        groups = [dsl.parse_group(args.group)]
    else:
        raise UsageError("verify needs a GROUP or --catalog SIZE")
    reports = [corresp.verify_rank_correspondence(G, seed=args.seed) for G in groups]
    ok = all(r.passed for r in reports)
    rec = {"verb": "verify", "seed": args.seed, "passed": ok, "count": len(reports),
           "reports": [r.as_record() for r in reports]}
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.group}" + ("" if r.passed else f"  ({r.counterexample})")
             for r in reports]
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} passed")
    _emit(args, rec, lines)
    return 0 if ok else 1


def cmd_gallery(args) -> int:
    names = corresp.gallery_names() if args.name == "all" else [args.name]
    try:
        reports = [corresp.gallery(n, seed=args.seed) for n in names]
    except corresp.UnknownExample as exc:
        raise UsageError(exc.args[0]) from None
    rec = {"verb": "gallery", "seed": args.seed, "reports": [r.as_record() for r in reports],
           "ok": all(r.ok for r in reports)}
    lines = []
    for r in reports:
        lines.append(f"== {r.name}: {r.title}")
        for c in r.claims:
            mark = "ok" if c.ok else "UNEXPECTED"
            lines.append(f"  [{c.label}] {c.text} ... {mark}")
    _emit(args, rec, lines)
    return 0 if rec["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "record"), default="text")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="ordrank", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("ef", parents=[common], help="rank-k equivalence of two order terms")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--k", type=int, default=efengine.DEFAULT_MAX_RANK)
    s.set_defaults(func=cmd_ef)

    s = sub.add_parser("cutdef", parents=[common], help="parameter-free definability of the middle cut")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--k", type=int, default=efengine.DEFAULT_MAX_RANK)
    s.set_defaults(func=cmd_cutdef)

    s = sub.add_parser("coaug", parents=[common], help="bounded-rank co-augmentation test")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("augment")
    s.add_argument("--k", type=int, default=efengine.DEFAULT_MAX_RANK)
    s.set_defaults(func=cmd_coaug)

    for verb, definable in (("rank", False), ("drk", True)):
        s = sub.add_parser(verb, parents=[common], help=f"{verb} of a finite order")
        s.add_argument("term")
        s.set_defaults(func=lambda a, d=definable: cmd_rank(a, d))

    s = sub.add_parser("spine", parents=[common], help="coloured n-spine of a group")
    s.add_argument("group")
    s.add_argument("--n", type=int, default=2)
    s.set_defaults(func=cmd_spine)

    s = sub.add_parser("group", parents=[common], help="structure of a lexicographic sum")
    s.add_argument("group")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--element")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("hahn", parents=[common], help="Hahn series arithmetic")
    s.add_argument("series")
    s.add_argument("--group", required=True)
    s.add_argument("--invert", action="store_true")
    s.add_argument("--compare")
    s.add_argument("--max-terms", type=int, default=DEFAULT_TERMS)
    s.set_defaults(func=cmd_hahn)

    s = sub.add_parser("verify", parents=[common], help="rank correspondence for K = Q((G))")
    s.add_argument("group", nargs="?")
    s.add_argument("--catalog", type=int, metavar="SIZE")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gallery", parents=[common], help="worked examples")
    s.add_argument("name", help="one of: all, " + ", ".join(corresp.gallery_names()))
    s.set_defaults(func=cmd_gallery)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "n", 2) < 2:
        print("error: --n must be at least 2", file=sys.stderr)
        return 2
    if getattr(args, "k", 0) < 0:
        print("error: --k must be nonnegative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, dsl.ParseError, efengine.BoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
