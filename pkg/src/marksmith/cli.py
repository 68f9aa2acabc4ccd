"""Command-line front end.

Examples::

    marksmith tom S3
    marksmith tom-product S3 S3 --method both
    marksmith sections S3 --cim pk --format json
    marksmith morphisms A5 --type C3 --cim
    marksmith classes S3 S3
    marksmith dbr --beta 22
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from marksmith.groups import BoundExceeded, GroupError, direct_product

FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- rendering ----------------------------------------------------------------


def render_table(headers: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(headers, r)) for r in rows], indent=1) + "\n"
    cells = [[str(x) for x in r] for r in rows]
    if fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        w.writerows(cells)
        return buf.getvalue()
    widths = [max([len(h)] + [len(r[k]) for r in cells]) for k, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def render_matrix(m, fmt: str) -> str:
    if fmt == "json":
        return m.to_json() + "\n"
    if fmt == "csv":
        return m.to_csv()
    return m.to_text()


def render_report(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if fmt == "csv":
        return "".join(f"{k},{json.dumps(v)}\n" for k, v in obj.items())
    return "".join(f"{k}: {v}\n" for k, v in obj.items())


# -- subcommands ------------------------------------------------------------------


def _group(text: str):
    from marksmith.catalogue import parse_group

    try:
        return parse_group(text)
    except GroupError as e:
        raise UsageError(str(e)) from None


def cmd_tom(args) -> tuple[int, str]:
    from marksmith.marks import brute_force_tom, tom_single

    G = _group(args.group)
    m = brute_force_tom(G, args.threads) if args.method == "oracle" else tom_single(G)
    return 0, render_matrix(m, args.format)


def cmd_tom_product(args) -> tuple[int, str]:
    from marksmith.marks import oracle_tom_product, tom_product

    prod = direct_product(_group(args.group1), _group(args.group2))[0]
    if args.method == "oracle":
        return 0, render_matrix(oracle_tom_product(prod, args.threads), args.format)
    m = tom_product(prod)
    if args.method == "factored":
        return 0, render_matrix(m, args.format)
    o = oracle_tom_product(prod, args.threads)
    if o != m:
        diff = [(r, c) for r in m.rows for c in m.cols if m.entry(r, c) != o.entry(r, c)]
        msg = "".join(f"mismatch at {r},{c}: factored {m.entry(r, c)} oracle {o.entry(r, c)}\n" for r, c in diff)
        return 1, render_matrix(m, args.format) + msg
    return 0, render_matrix(m, args.format)


def cmd_sections(args) -> tuple[int, str]:
    from marksmith.sections import cim_sections, section_classes

    G = _group(args.group)
    if args.cim:
        return 0, render_matrix(cim_sections(G, args.cim), args.format)
    rows = [(c.label, c.order, c.size, c.isotype.name) for c in section_classes(G)]
    return 0, render_table(["section", "quotient_order", "class_size", "type"], rows, args.format)


def _find_type(G, name: str):
    from marksmith.sections import section_types

    types = section_types(G)
    for t in types:
        if t.name == name:
            return t
    raise UsageError(f"no section of {G.name} has quotient type {name}; "
                     f"available: {', '.join(t.name for t in types)}")


def cmd_morphisms(args) -> tuple[int, str]:
    from marksmith.morphisms import cim_mor, collapsed_cim_mor, morphism_classes

    G = _group(args.group)
    t = _find_type(G, args.type)
    if args.collapse:
        return 0, render_matrix(collapsed_cim_mor(G, t), args.format)
    if args.cim:
        return 0, render_matrix(cim_mor(G, t), args.format)
    rows = [(mc.label, mc.theta.section.label(), mc.automizer.order, len(mc.automizer.O))
            for mc in morphism_classes(G, t)]
    return 0, render_table(["class", "section", "automizer_order", "out_automizer_order"], rows, args.format)


def cmd_classes(args) -> tuple[int, str]:
    from marksmith.product import normalizer_index, product_classes
    from marksmith.sections import section_classes

    G1, G2 = _group(args.group1), _group(args.group2)
    prod = direct_product(G1, G2)[0]
    sc1, sc2 = section_classes(G1), section_classes(G2)
    rows = []
    for c in product_classes(prod):
        rows.append((c.label, c.order, sc1[c.section1].label, sc2[c.section2].label, c.U.name,
                     c.dc_index + 1, str(normalizer_index(c))))
    headers = ["class", "order", "left_section", "right_section", "type", "double_coset", "normalizer_index"]
    return 0, render_table(headers, rows, args.format)


def cmd_dbr(args) -> tuple[int, str]:
    from marksmith import doubleburnside as dbmod

    db = dbmod.s3()
    if args.mprime:
        return 0, render_matrix(db.mprime(), args.format)
    if args.beta is not None:
        if not 1 <= args.beta <= db.n:
            raise UsageError(f"--beta expects an index between 1 and {db.n}")
        return 0, render_matrix(db.beta_of_b(args.beta - 1), args.format)
    if args.constants:
        return 0, db.structure_constants_json() + "\n"
    if args.check_hom:
        bad = db.homomorphism_failures()
        rep = {
            "pairs_checked": db.n * db.n,
            "failures": [[i + 1, k + 1] for i, k in bad],
            "rank": db.ghost_rank(),
            "injective": db.ghost_rank() == db.n,
            "associativity_defect": db.associativity_defect(),
        }
        ok = not bad and rep["injective"] and not rep["associativity_defect"]
        return (0 if ok else 1), render_report(rep, args.format)
    if args.radical:
        rep = db.radical_analysis()
        ok = rep["is_two_sided_ideal"] and rep["nilpotency_degree"] is not None
        return (0 if ok else 1), render_report(rep, args.format)
    raise UsageError("dbr needs one of --mprime, --beta, --check-hom, --radical, --constants")


# -- driver -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", help="write the output to this file instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker threads for brute-force counting")

    p = _Parser(prog="marksmith", description="Tables of marks and related computations for small groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("tom", parents=[common], help="table of marks of a group")
    s.add_argument("group")
    s.add_argument("--method", choices=("classes", "oracle"), default="classes")
    s.set_defaults(func=cmd_tom)

    s = sub.add_parser("tom-product", parents=[common], help="table of marks of a direct product")
    s.add_argument("group1")
    s.add_argument("group2")
    s.add_argument("--method", choices=("factored", "oracle", "both"), default="factored")
    s.set_defaults(func=cmd_tom_product)

    s = sub.add_parser("sections", parents=[common], help="section classes and their incidence matrices")
    s.add_argument("group")
    s.add_argument("--cim", choices=("full", "p", "k", "pk", "prime", "geq_p"))
    s.set_defaults(func=cmd_sections)

    s = sub.add_parser("morphisms", parents=[common], help="classes of U-morphisms")
    s.add_argument("group")
    s.add_argument("--type", required=True, help="quotient type, e.g. C3")
    s.add_argument("--cim", action="store_true", help="print the class incidence matrix")
    s.add_argument("--collapse", action="store_true", help="collapse the matrix over Out(U)")
    s.set_defaults(func=cmd_morphisms)

    s = sub.add_parser("classes", parents=[common], help="subgroup classes of a direct product by Goursat data")
    s.add_argument("group1")
    s.add_argument("group2")
    s.set_defaults(func=cmd_classes)

    s = sub.add_parser("dbr", parents=[common], help="double Burnside algebra of S3")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--mprime", action="store_true", help="the base change to the c-basis")
    g.add_argument("--beta", type=int, metavar="I", help="ghost image of b_I (1-based)")
    g.add_argument("--check-hom", action="store_true", help="verify the ghost map on all basis pairs")
    g.add_argument("--radical", action="store_true", help="check the nilpotent ideal")
    g.add_argument("--constants", action="store_true", help="dump the structure constants as JSON")
    s.set_defaults(func=cmd_dbr)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Execute one invocation and return ``(exit code, output)``."""
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        code, out = args.func(args)
    except UsageError as e:
        return 2, f"error: {e}\n"
    except BoundExceeded as e:
        return 3, f"error: {e}\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
        return code, ""
    return code, out


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(argv)
    stream = sys.stderr if code == 2 or code == 3 else sys.stdout
    stream.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
