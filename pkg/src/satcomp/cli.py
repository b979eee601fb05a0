"""Command-line interface.

Exit codes: 0 success (whatever the verdict), 2 parse error, 3 invalid
index, 4 usage error, 5 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .corpus import corpus as load_corpus
from .diagram import standard_diagram
from .dsl import ParseError, parse
from .families import family_f, family_fcirc, family_ftilde, hasse
from .index import InvalidIndexError, validate
from .rationality import CrossCheckFailure, classify
from .report import (
    emit_dot,
    emit_report,
    render_satake,
    report_to_dict,
    type_label,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_USAGE = 4
EXIT_CROSSCHECK = 5

_CHECK = "✓"
_CROSS = "✗"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        doc = parse(fh.read())
    return doc, doc.to_index()


def _mark(flag: bool) -> str:
    return _CHECK if flag else _CROSS


def _print_verdict_line(report, index):
    from .report import cycles_text
    c = report.casselman
    line = (f"geometrically rational: {str(c.rational).lower()} "
            f"(Casselman: cond1 {_mark(c.cond1)} cond2 {_mark(c.cond2)})")
    print(line)
    if c.witness is not None:
        element = cycles_text(c.witness.element, index.diagram)
        image = " ".join(index.diagram.ordered(c.witness.image))
        print(f"  witness: condition {c.witness.condition} fails under "
              f"{element} (image {{{image}}})")


def _cmd_validate(args) -> int:
    doc, index = _load(args.file)
    diags = validate(index)
    for d in diags:
        print(f"{d.severity}: {d.code}: {d.message}")
    if any(d.severity == "error" for d in diags):
        return EXIT_INVALID
    print(f'index "{doc.name}" is valid')
    return EXIT_OK


def _classified(args):
    doc, index = _load(args.file)
    report = classify(index, doc.delta, doc.delta_mu, name=doc.name,
                      include_families=getattr(args, "families", False))
    return doc, index, report


def _cmd_analyze(args) -> int:
    doc, index, report = _classified(args)
    if args.json:
        sys.stdout.write(emit_report(report, index))
        return EXIT_OK
    print(f'index "{report.name}"')
    print()
    sys.stdout.write(render_satake(index, report.delta))
    print()
    for s in report.component_summaries:
        print(f"component {s.ctype}: {' '.join(s.nodes)} (real rank {s.rrank})")
    print(f"rational rank: {report.q_rank}")
    d = index.diagram
    print(f"delta: {' '.join(d.ordered(report.delta)) or '-'}")
    print("r-delta fibers: "
          + (" ".join("{" + " ".join(d.ordered(kr.fiber)) + "}"
                      for kr in report.r_delta) or "-"))
    print("q-delta fibers: "
          + (" ".join("{" + " ".join(d.ordered(kr.fiber)) + "}"
                      for kr in report.q_delta) or "-"))
    print(f"kappa0: {' '.join(d.ordered(report.casselman.kappa0)) or '-'}")
    print(f"omega0: {' '.join(d.ordered(report.casselman.omega0)) or '-'}")
    print(f"zeta0:  {' '.join(d.ordered(report.casselman.zeta0)) or '-'}")
    print(f"equal rank: group={str(report.equal_rank_group).lower()} "
          f"compactification={str(report.equal_rank_compactification).lower()}")
    print(f"boundary components: {len(report.boundary.components)}")
    if report.families:
        print()
        for fam in report.families:
            members = ", ".join(
                type_label(d, m) for m in fam.sorted_members(d)) or "-"
            print(f"{fam.kind}[{' '.join(d.ordered(fam.component))}]: {members}")
    for diag in report.diagnostics:
        print(f"{diag.severity}: {diag.message}")
    return EXIT_OK


def _cmd_rationality(args) -> int:
    doc, index, report = _classified(args)
    if args.json:
        payload = report_to_dict(report, index)["casselman"]
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    _print_verdict_line(report, index)
    return EXIT_OK


def _cmd_classify(args) -> int:
    doc, index, report = _classified(args)
    if args.json:
        sys.stdout.write(emit_report(report, index))
        return EXIT_OK
    print(f'index "{report.name}"')
    for r in report.routes:
        state = "applicable" if r.applicable else "n/a"
        verdict = "-" if r.rational is None else str(r.rational).lower()
        check = "" if r.cross_check is None else f" cross-check {_mark(r.cross_check)}"
        print(f"  {r.route:<22} {state:<10} rational={verdict}{check}")
    print(f"route of record: {report.route}")
    _print_verdict_line(report, index)
    for diag in report.diagnostics:
        print(f"{diag.severity}: {diag.message}")
    return EXIT_OK


def _cmd_families(args) -> int:
    try:
        diagram = standard_diagram(args.type, args.rank)
    except ValueError as exc:
        print(f"satcomp families: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    comp = frozenset(diagram.nodes)
    ftilde = family_ftilde(diagram, comp)
    f = family_f(diagram, comp)
    fcirc = family_fcirc(diagram, comp)
    if args.dot:
        sys.stdout.write(emit_dot(hasse(ftilde, diagram), diagram,
                                  solid=f.members, name="Ftilde"))
        return EXIT_OK
    for fam in (ftilde, f, fcirc):
        members = ", ".join(
            type_label(diagram, m) for m in fam.sorted_members(diagram)) or "-"
        print(f"{fam.kind}: {members}")
    hd = hasse(ftilde, diagram)
    for lo, hi in hd.covers:
        print(f"cover: {type_label(diagram, lo)} < {type_label(diagram, hi)}")
    return EXIT_OK


def _cmd_boundary(args) -> int:
    doc, index, report = _classified(args)
    poset = report.boundary
    if args.dot:
        sys.stdout.write(emit_dot(poset, index.diagram, name="boundary"))
        return EXIT_OK
    d = index.diagram
    for bc in poset.components:
        theta = " ".join("{" + " ".join(d.ordered(kr.fiber)) + "}"
                         for kr in sorted(
                             bc.theta,
                             key=lambda kr: sorted(d.position(n) for n in kr.fiber)))
        print(f"theta: {theta or '-'}")
        print(f"  hermitian:  {' '.join(d.ordered(bc.hermitian_c)) or '-'}")
        print(f"  centralizer: {' '.join(d.ordered(bc.centralizer_c)) or '-'}")
        print(f"  normalizer: {' '.join(d.ordered(bc.normalizer_type)) or '-'}")
    return EXIT_OK


def _cmd_corpus(args) -> int:
    rows = []
    all_match = True
    for doc in load_corpus():
        report = classify(doc.to_index(), doc.delta, doc.delta_mu, name=doc.name)
        expected = doc.expected
        match = (expected is None
                 or (expected.rational == report.rational
                     and (expected.route is None or expected.route == report.route)))
        all_match &= match
        rows.append({
            "name": doc.name,
            "rational": report.rational,
            "route": report.route,
            "expected_rational": expected.rational if expected else None,
            "expected_route": expected.route if expected else None,
            "match": match,
        })
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            status = "ok" if row["match"] else "MISMATCH"
            print(f"{row['name']:<14} rational={str(row['rational']).lower():<5} "
                  f"route={row['route']:<22} [{status}]")
        matched = sum(1 for r in rows if r["match"])
        print(f"{matched}/{len(rows)} matched")
    return EXIT_OK if all_match else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="satcomp",
                     description="Index combinatorics and geometric "
                                 "rationality of Satake compactifications.")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized tooling (current "
                             "subcommands are deterministic)")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("validate", help="check index invariants")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("analyze", help="structural report for an index file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--families", action="store_true")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("rationality", help="direct geometric-rationality test")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_rationality)

    p = sub.add_parser("classify", help="route through the classification "
                                        "theorems with cross-checks")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--families", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("families", help="subset families of a standard diagram")
    p.add_argument("--type", required=True,
                   choices=["A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2"])
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_families)

    p = sub.add_parser("boundary", help="boundary-component poset")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("corpus", help="run the bundled corpus against its "
                                      "expected verdicts")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"satcomp: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"satcomp: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidIndexError as exc:
        for d in exc.diagnostics:
            print(f"satcomp: {d.severity}: {d.code}: {d.message}", file=sys.stderr)
        return EXIT_INVALID
    except CrossCheckFailure as exc:
        print(f"satcomp: cross-check failure: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK


if __name__ == "__main__":
    sys.exit(main())
