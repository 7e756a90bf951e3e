"""Named representatives of the 3 + 7 + 13 classes.

Each row of words is filed under the sector its leading letters select,
so rows may be listed in any order. Quaternionic Z2xZ2 entries are
labelled by their subalgebra projection triple: H1 (1/1/1), H2 (2/2/2),
H3 (1/1/2), H4 (1/2/2).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .algebra import Presentation, Series, format_presentation
from .words import parse_word, word_grade


@dataclass(frozen=True, order=True)
class ClassId:
    grading: int
    series: Series
    index: int

    def __str__(self) -> str:
        return f"D{self.grading}_{self.series.letter}{self.index}"

    @property
    def short(self) -> str:
        """Underlined-number shorthand used for projection triples."""
        return str(self.index)

    @classmethod
    def parse(cls, text: str) -> ClassId:
        m = re.fullmatch(r"D\^?\[?([012])\]?_?([RCH]);?([1-5])?", text.strip())
        if m is None:
            raise KeyError(f"cannot parse class id {text!r}")
        grading, series = int(m.group(1)), Series.from_letter(m.group(2))
        if m.group(3) is None:
            if grading != 0:
                raise KeyError(f"class id {text!r} needs an index")
            index = _D0_INDEX[series]
        else:
            index = int(m.group(3))
        cid = cls(grading, series, index)
        if cid not in _valid_ids():
            raise KeyError(f"no class {cid}")
        return cid


# R, C, H are D0 with index 1, 2, 3
_D0_INDEX = {Series.REAL: 1, Series.COMPLEX: 2, Series.QUATERNIONIC: 3}
_COUNTS = {
    1: {Series.REAL: 2, Series.COMPLEX: 3, Series.QUATERNIONIC: 2},
    2: {Series.REAL: 4, Series.COMPLEX: 5, Series.QUATERNIONIC: 4},
}


@lru_cache(maxsize=None)
def _valid_ids() -> frozenset[ClassId]:
    ids = {ClassId(0, s, i) for s, i in _D0_INDEX.items()}
    for grading, counts in _COUNTS.items():
        for s, n in counts.items():
            ids.update(ClassId(grading, s, i) for i in range(1, n + 1))
    return frozenset(ids)


@dataclass(frozen=True)
class CatalogEntry:
    class_id: ClassId
    presentation: Presentation
    notes: str = ""
    # None where no claim is recorded
    commutative: bool | None = None


def _entry(grading, series, index, rows, notes="", commutative=None) -> CatalogEntry:
    words = [[parse_word(w) for w in row.split()] for row in rows]
    if grading == 0:
        sectors = {(): tuple(words[0])}
    else:
        sectors = {}
        for row in words:
            g = word_grade(row[0], grading)
            if g in sectors:
                raise ValueError(f"catalog row {row} collides in sector {g}")
            sectors[g] = tuple(row)
        sectors = dict(sorted(sectors.items()))
    return CatalogEntry(ClassId(grading, Series(series), index), Presentation(grading, Series(series), sectors),
                        notes, commutative)


R, C, H = "real", "complex", "quaternionic"

_ENTRIES = (
    _entry(0, R, 1, ["I"], "real numbers", True),
    _entry(0, C, 2, ["I A"], "complex numbers", True),
    _entry(0, H, 3, ["II IA AY AX"], "quaternions", False),

    _entry(1, R, 1, ["I", "A"], "Z2-graded complex numbers", True),
    _entry(1, R, 2, ["I", "Y"], "Z2-graded split-complex numbers", True),
    _entry(1, C, 1, ["II IA", "AX AY"], "Z2-grading of the quaternions, graded Cl(0,3)", False),
    _entry(1, C, 2, ["II IA", "YX YY"], "Z2-grading of the split-quaternions, graded Cl(2,1)", False),
    _entry(1, C, 3, ["II IA", "AI AA"], "Z2-grading of an algebra of commuting matrices", True),
    _entry(1, H, 1, ["III IIA IAY IAX", "AII AIA AAY AAX"]),
    _entry(1, H, 2, ["III IIA IAY IAX", "YII YIA YAY YAX"]),

    _entry(2, R, 1, ["II", "IA", "AX", "AY"], "Z2xZ2 gradation of the quaternions", False),
    _entry(2, R, 2, ["II", "IA", "YX", "YY"], "Z2xZ2 gradation of the split-quaternions", False),
    _entry(2, R, 3, ["II", "IA", "AI", "AA"], "commutative", True),
    _entry(2, R, 4, ["II", "IY", "YI", "YY"], "commutative", True),

    _entry(2, C, 1, ["III IIA", "IAX IAY", "AIX AIY", "AAI AAA"]),
    _entry(2, C, 2, ["III IIA", "AIX AIY", "IYX IYY", "AYI AYA"]),
    _entry(2, C, 3, ["III IIA", "YIX YIY", "IYX IYY", "YYI YYA"]),
    _entry(2, C, 4, ["III IIA", "YII YIA", "XYI XYA", "AYI AYA"],
           "cross-sector generators anticommute"),
    _entry(2, C, 5, ["III IIA", "YII YIA", "IYI IYA", "YYI YYA"],
           "cross-sector generators commute"),

    _entry(2, H, 1, ["IIII IIIA IIAX IIAY", "IAII IAIA IAAX IAAY", "AXII AXIA AXAX AXAY",
                     "AYII AYIA AYAX AYAY"]),
    _entry(2, H, 2, ["IIII IIIA IIAX IIAY", "IYII IYIA IYAX IYAY", "YIII YIIA YIAX YIAY",
                     "YYII YYIA YYAX YYAY"]),
    _entry(2, H, 3, ["IIII IIIA IIAX IIAY", "IAII IAIA IAAX IAAY", "AIII AIIA AIAX AIAY",
                     "AAII AAIA AAAX AAAY"]),
    _entry(2, H, 4, ["IIII IIIA IIAX IIAY", "IAII IAIA IAAX IAAY", "YXII YXIA YXAX YXAY",
                     "YYII YYIA YYAX YYAY"]),
)

_BY_ID = {e.class_id: e for e in _ENTRIES}


def catalog(grading: int | None = None, series=None) -> list[CatalogEntry]:
    out = list(_ENTRIES)
    if grading is not None:
        out = [e for e in out if e.class_id.grading == grading]
    if series is not None:
        out = [e for e in out if e.class_id.series == Series(series)]
    return out


def lookup(class_id) -> CatalogEntry:
    if isinstance(class_id, str):
        class_id = ClassId.parse(class_id)
    try:
        return _BY_ID[class_id]
    except KeyError:
        raise KeyError(f"no catalog entry {class_id}") from None


def export_catalog(directory) -> list[Path]:
    """Write one ``D<grading>_<series><index>.sdiv`` file per entry."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for e in _ENTRIES:
        path = directory / f"{e.class_id}.sdiv"
        header = [str(e.class_id)] + ([e.notes] if e.notes else [])
        path.write_text(format_presentation(e.presentation, header))
        paths.append(path)
    return paths
