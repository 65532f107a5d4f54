"""``skein-f`` command line: evaluate, compare and tabulate colored-link invariants."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog as catalog_mod
from . import reference, selftest
from .catalog import Catalog, CatalogError
from .coloring import Coloration, PartitionType
from .diagram import Diagram, PDError, parse_pd
from .invariants import compare_pair, conjecture_residual, f_multiset
from .ratfun import RatFun
from .skein import Evaluator

EXIT_OK, EXIT_DIFFERENT, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _catalog(args) -> Catalog:
    return catalog_mod.load(args.catalog)


def _resolve(token: str, cat: Catalog, loops: int = 0) -> tuple[str, Diagram]:
    """A catalog id, or an inline PD code."""
    if token in cat:
        return token, cat.diagram(token)
    if token.lstrip().startswith(("PD", "[", "{")):
        return token, parse_pd(token, free_loops=loops)
    raise UsageError(f"unknown link id {token!r}")


def _links(args, cat: Catalog, want: int) -> list[tuple[str, Diagram]]:
    tokens = list(args.ids or []) + list(args.link or [])
    out = [_resolve(t, cat) for t in tokens]
    out += [(pd, parse_pd(pd, free_loops=args.loops)) for pd in args.pd or []]
    if len(out) != want:
        raise UsageError(f"expected {want} link(s), got {len(out)}")
    return out


def _types(items: list[str] | None, n: int) -> list[PartitionType]:
    if not items:
        return [PartitionType((1,) * n)]
    return [PartitionType.parse(s) for s in items]


def cmd_eval(args) -> int:
    cat = _catalog(args)
    (name, d), = _links(args, cat, 1)
    col = Coloration.parse(args.colors) if args.colors else Coloration.monochrome(d.n_components)
    if col.n != d.n_components:
        raise UsageError(f"coloration has {col.n} entries, link has {d.n_components} components")
    value = Evaluator()(d, col)
    if args.json:
        sys.stdout.write(_dump({"link": name, "colors": list(col.block_of), "value": value.to_json()}))
    else:
        print(value)
    return EXIT_OK


def cmd_multiset(args) -> int:
    cat = _catalog(args)
    (name, d), = _links(args, cat, 1)
    p = PartitionType.parse(args.type) if args.type else PartitionType((1,) * d.n_components)
    m = f_multiset(d, p, Evaluator(), args.threads)
    if args.json:
        sys.stdout.write(_dump({"link": name, **m.to_json()}))
    else:
        for v in m.values:
            print(v)
    return EXIT_OK


def cmd_compare(args) -> int:
    cat = _catalog(args)
    (n1, d1), (n2, d2) = _links(args, cat, 2)
    report = compare_pair(d1, d2, _types(args.types, d1.n_components), (n1, n2), Evaluator(), args.threads)
    if args.json:
        sys.stdout.write(_dump(report.to_json()))
    else:
        for v in report.per_type:
            print(f"F_{v.p}\t{'equal' if v.equal else 'distinguished'}")
        for c, (a, b) in sorted(report.sigma.items()):
            print(f"sigma^{c}\t{'equal' if a == b else 'different'}")
        if report.conjecture is not None:
            print(f"residual\t{report.conjecture.residual}")
        print("distinguished" if report.distinguished else "equal on all requested types")
    if args.plot:
        from .plotting import plot_values, safe_name

        for v in report.per_type:
            items = [(f"{n1} #{k + 1}", x) for k, x in enumerate(v.values_1.values)]
            items += [(f"{n2} #{k + 1}", x) for k, x in enumerate(v.values_2.values)]
            plot_values(items, Path(args.plot) / safe_name(f"{n1}_vs_{n2}_{v.p}.png"), f"type {v.p}")
    return EXIT_DIFFERENT if report.distinguished else EXIT_OK


def cmd_conjecture(args) -> int:
    cat = _catalog(args)
    (n1, d1), (n2, d2) = _links(args, cat, 2)
    check = conjecture_residual(d1, d2, Evaluator(), args.threads)
    if args.json:
        sys.stdout.write(_dump({"links": [n1, n2], **check.to_json()}))
    else:
        print(f"sigma^1 equal\t{'yes' if check.precondition_met else 'no'}")
        print(f"residual\t{check.residual}")
    return EXIT_OK


# -- table -----------------------------------------------------------------

SET_SECTIONS = {"K": "equal_f3", "H": "equal_f3", "G": "equal_f3", "Q": "equal_f3",
                "R": "sum_pair", "S": "sum_pair"}
SET_LINKS = {"K": "L11n358{0,1}", "H": "L11n418{0,0}", "G": "L11a467{0,1}", "Q": "L11a527{0,0}",
             "R": selftest.R_ID, "S": selftest.S_ID}
TABLE_COLUMNS = ("section", "key", "link", "coloring", "match", "published", "computed")


def table_rows(cat: Catalog, threads: int = 1) -> list[dict]:
    ev = Evaluator()
    rows = []

    def row(section, key, link, coloring, published, computed):
        match = "missing" if computed is None else ("yes" if computed == published else "no")
        rows.append({"section": section, "key": key, "link": link, "coloring": coloring, "match": match,
                     "published": published, "computed": computed})

    simple = list(selftest.SIMPLE_ROWS) + [("L4", "Hopf+", "0,0"), ("L40", "trefoil", "0")]
    for key, link, col in sorted(simple, key=lambda r: int(r[0][1:])):
        value = ev(cat.diagram(link), Coloration.parse(col)) if link in cat else None
        row("simple", key, link, col, reference.value("simple", key), value)
    for key in reference.keys("three_colored"):
        value = f_multiset(cat.diagram(key), selftest.P111, ev, threads).values[0] if key in cat else None
        row("three_colored", key, key, "0,1,2", reference.value("three_colored", key), value)
    for letter, section in SET_SECTIONS.items():
        link = SET_LINKS[letter]
        top = {"H": "K", "Q": "G"}.get(letter, letter)
        present = link in cat
        value = f_multiset(cat.diagram(link), selftest.P111, ev, threads).values[0] if present else None
        row(section, letter, link, "0,1,2", reference.value(section, top), value)
        pool = list(f_multiset(cat.diagram(link), selftest.P21, ev, threads).values) if present else []
        for s in "ABC":
            want = reference.value(section, letter + s)
            got = None
            if present:
                got = want if want in pool else pool[0] if pool else RatFun()
                if want in pool:
                    pool.remove(want)
            row(section, letter + s, link, "type 2,1", want, got)
    return rows


def cmd_table(args) -> int:
    rows = table_rows(_catalog(args), args.threads)
    if args.json:
        out = [{**r, "published": str(r["published"]),
                "computed": None if r["computed"] is None else str(r["computed"])} for r in rows]
        sys.stdout.write(_dump(out))
    else:
        print("\t".join(TABLE_COLUMNS))
        for r in rows:
            computed = "" if r["computed"] is None else str(r["computed"])
            print("\t".join([r["section"], r["key"], r["link"], r["coloring"], r["match"],
                             str(r["published"]), computed]))
    if args.plot:
        from .plotting import plot_table_row

        for r in rows:
            if r["computed"] is not None:
                plot_table_row(args.plot, f"{r['section']}_{r['key']}", r["published"], r["computed"])
    return EXIT_OK if all(r["match"] == "yes" for r in rows) else EXIT_DIFFERENT


def cmd_selftest(args) -> int:
    try:
        cat = _catalog(args)
    except CatalogError as exc:
        results = [selftest.Result(0, "catalog loads", False, str(exc))]
    else:
        numbers = [int(x) for x in args.only.split(",")] if args.only else None
        results = selftest.run(cat, args.threads, numbers)
    sys.stdout.write(selftest.render_json(results) if args.json else selftest.render(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_DIFFERENT


def cmd_ingest(args) -> int:
    cat = catalog_mod.ingest(args.file)
    if args.json:
        sys.stdout.write(_dump({"entries": [e.to_json() for e in cat]}))
    else:
        sys.stdout.write(cat.to_csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", metavar="PATH", help="extra catalog file (CSV, JSON or raw PD lines)")
    common.add_argument("--threads", type=int, default=1, metavar="N")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    links = argparse.ArgumentParser(add_help=False)
    links.add_argument("ids", nargs="*", help="catalog ids or inline PD codes")
    links.add_argument("--link", action="append", help="catalog id (repeatable)")
    links.add_argument("--pd", action="append", help="PD code (repeatable)")
    links.add_argument("--loops", type=int, default=0, help="extra free loops for --pd")

    parser = argparse.ArgumentParser(prog="skein-f", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common, links], help="F of one colored link")
    p.add_argument("--colors", help="block index per component, e.g. 0,0,1")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("multiset", parents=[common, links], help="F values over all colorations of a type")
    p.add_argument("--type", help="partition type, e.g. 2,1")
    p.set_defaults(func=cmd_multiset)

    p = sub.add_parser("compare", parents=[common, links], help="compare two links type by type")
    p.add_argument("--types", nargs="+", help="partition types, e.g. 1,1,1 2,1")
    p.add_argument("--plot", metavar="DIR", help="write support plots to DIR")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("conjecture", parents=[common, links], help="sigma residual for two 3-component links")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("table", parents=[common], help="published values next to computed ones (TSV)")
    p.add_argument("--plot", metavar="DIR", help="write one support plot per row to DIR")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    p.add_argument("--only", help="comma list of criterion numbers")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("ingest", parents=[common], help="validate and normalize a catalog file")
    p.add_argument("file")
    p.set_defaults(func=cmd_ingest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CatalogError, PDError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"skein-f: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
