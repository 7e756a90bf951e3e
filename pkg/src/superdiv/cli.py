"""Command-line front end: ``superdiv <command> ...``.

Exit status: 0 success, 1 verification or identification failure,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import (
    GRADING_BY_NAME,
    Presentation,
    PresentationError,
    Series,
    emit_table,
    parse_presentation,
    verify_superdivision,
)
from .catalog import ClassId, catalog, lookup
from .classify import (
    Classification,
    ClassResult,
    CatalogError,
    UnknownClassError,
    classify,
    enumerate_presentations,
    fusion_table,
    identify,
    projection_triple,
    square_signs,
)
from .words import WordError, all_grades, grade_label, parse_word, word_to_matrix


class UsageError(Exception):
    pass


def _sector_lines(p: Presentation) -> list[str]:
    return [f"  {grade_label(g) or '0'}: {' '.join(map(str, ws))}" for g, ws in p.sectors.items()]


def _class_block(c: ClassResult) -> list[str]:
    p = c.representative
    name = str(c.class_id) if c.class_id else "unknown"
    count = f"{c.member_count} presentation{'s' if c.member_count != 1 else ''}"
    lines = [f"[{name}] {p.series.value} series, {count}"]
    lines += _sector_lines(p)
    nonzero = all_grades(p.grading)[1:]
    signs = ", ".join(f"{grade_label(g)} {square_signs(p, g)}" for g in nonzero)
    lines.append(f"  square signs: {signs}")
    if p.grading == 2:
        lines.append(f"  projections: {projection_triple(p)}")
    if c.notes:
        lines.append(f"  note: {c.notes}")
    return lines


def _family(grading: int) -> list[Classification]:
    return [classify(enumerate_presentations(grading, s)) for s in Series]


def _print_families(families: list[Classification], grading: int, out) -> int:
    counts = ", ".join(f"{s.value} {len(f.classes)}" for s, f in zip(Series, families))
    total = sum(len(f.classes) for f in families)
    kind = "Z2" if grading == 1 else "Z2xZ2"
    print(f"{kind}-graded superdivision algebras: {total} classes ({counts})", file=out)
    for fam in families:
        for c in fam.classes:
            print(file=out)
            print("\n".join(_class_block(c)), file=out)
    return 1 if any(f.unknown for f in families) else 0


def cmd_tenfold(args, out) -> int:
    families = _family(1)
    if args.format == "json":
        doc = {
            "division_algebras": [
                {"class_id": str(e.class_id), "representative": e.presentation.to_dict(), "notes": e.notes}
                for e in catalog(0)
            ],
            "z2": [c.to_dict() for f in families for c in f.classes],
        }
        print(json.dumps(doc, indent=1), file=out)
        return 1 if any(f.unknown for f in families) else 0
    print("Division algebras: 3 classes", file=out)
    for e in catalog(0):
        print(file=out)
        print(f"[{e.class_id}] {e.notes}", file=out)
        print("\n".join(_sector_lines(e.presentation)), file=out)
    print(file=out)
    return _print_families(families, 1, out)


def cmd_thirteen(args, out) -> int:
    families = _family(2)
    if args.format == "json":
        print(json.dumps([c.to_dict() for f in families for c in f.classes], indent=1), file=out)
        return 1 if any(f.unknown for f in families) else 0
    return _print_families(families, 2, out)


def cmd_classify(args, out) -> int:
    grading = GRADING_BY_NAME[args.grading]
    if grading == 0:
        raise UsageError("classify takes --grading z2 or z2z2")
    fam = classify(enumerate_presentations(grading, args.series))
    if args.format == "json":
        print(json.dumps([c.to_dict() for c in fam.classes], indent=1), file=out)
    else:
        print(f"{len(fam.classes)} classes", file=out)
        for c in fam.classes:
            print(file=out)
            print("\n".join(_class_block(c)), file=out)
    return 1 if fam.unknown else 0


def _read_presentation(path: str) -> Presentation:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_presentation(text)
    except (PresentationError, WordError) as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_verify(args, out) -> int:
    p = _read_presentation(args.file)
    rep = verify_superdivision(p)
    print(rep.format(), file=out)
    if rep.ok:
        print("superdivision: pass", file=out)
        return 0
    name, detail = rep.failure
    print(f"{args.file}: {name}: {detail}", file=sys.stderr)
    return 1


def cmd_identify(args, out) -> int:
    p = _read_presentation(args.file)
    rep = verify_superdivision(p)
    if not rep.ok:
        name, detail = rep.failure
        print(f"{args.file}: {name}: {detail}", file=sys.stderr)
        print("unknown", file=out)
        return 1
    try:
        print(identify(p), file=out)
        return 0
    except (UnknownClassError, CatalogError) as e:
        print(str(e), file=sys.stderr)
        print("unknown", file=out)
        return 1


def cmd_table(args, out) -> int:
    try:
        entry = lookup(args.class_id)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    out.write(emit_table(entry.presentation, args.format, title=str(entry.class_id)))
    return 0


def cmd_fusion(args, out) -> int:
    ft = fusion_table(args.series)
    if args.format == "json":
        print(json.dumps(ft.to_json(), indent=1), file=out)
    else:
        print(f"{ft.series.value} series: S01 x S10 -> S11, (*) marks cells realized by "
              f"inequivalent algebras with equal projections", file=out)
        out.write(ft.format())
    return 0


def cmd_matrix(args, out) -> int:
    try:
        w = parse_word(args.word)
    except WordError as e:
        raise UsageError(str(e)) from None
    for row in word_to_matrix(w):
        print(" ".join(str(int(x)) for x in row), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superdiv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    series = [s.value for s in Series]

    p = sub.add_parser("tenfold", help="classify the division and Z2-graded superdivision algebras")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_tenfold)

    p = sub.add_parser("thirteen", help="classify the Z2xZ2-graded superdivision algebras")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_thirteen)

    p = sub.add_parser("classify", help="classify one family")
    p.add_argument("--grading", required=True, choices=["z2", "z2z2", "1", "2"])
    p.add_argument("--series", required=True, choices=series)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="check the superdivision axioms for a presentation file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identify", help="name the class of a presentation file")
    p.add_argument("file")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("table", help="multiplication table of a catalog class, e.g. D2_C4")
    p.add_argument("class_id")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("fusion", help="S01 x S10 -> S11 table")
    p.add_argument("--series", choices=series, default="complex")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("matrix", help="dense signed matrix of a word (use '--' before a negative word)")
    p.add_argument("word")
    p.set_defaults(func=cmd_matrix)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"superdiv: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
