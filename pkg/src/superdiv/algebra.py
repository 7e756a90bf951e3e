"""Graded algebras presented by signed words, and the superdivision axioms."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .words import (
    Grade,
    SignedWord,
    WordError,
    all_grades,
    commutes,
    grade_add,
    grade_label,
    parse_grade,
    parse_word,
    word_grade,
    word_inverse,
    word_mul,
    word_square_sign,
    word_to_matrix,
)

DET_SEED = 20210304
DET_BATCH = 64
COEFF_RANGE = 9

SECTOR_PREFIX = {
    0: {(): "e"},
    1: {(0,): "e", (1,): "f"},
    2: {(0, 0): "e", (0, 1): "f", (1, 0): "g", (1, 1): "h"},
}
GRADING_NAMES = {0: "none", 1: "z2", 2: "z2z2"}
GRADING_BY_NAME = {"none": 0, "z2": 1, "z2z2": 2, "0": 0, "1": 1, "2": 2}


class Series(str, Enum):
    REAL = "real"
    COMPLEX = "complex"
    QUATERNIONIC = "quaternionic"

    @property
    def dim(self) -> int:
        return {"real": 1, "complex": 2, "quaternionic": 4}[self.value]

    @property
    def letter(self) -> str:
        return {"real": "R", "complex": "C", "quaternionic": "H"}[self.value]

    @classmethod
    def from_letter(cls, c: str) -> Series:
        return {"R": cls.REAL, "C": cls.COMPLEX, "H": cls.QUATERNIONIC}[c.upper()]


class PresentationError(ValueError):
    pass


class ClosureError(ValueError):
    """A product of two generators is not +- a generator."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True, eq=False)
class Presentation:
    """A graded family of word lists, one list per sector.

    ``sectors`` maps a grade tuple to its words; the unit must be the first
    word of the all-zero sector. Construction only checks what is needed to
    index the data; the axioms are checked by :func:`verify_superdivision`.
    """

    grading: int
    series: Series
    sectors: Mapping[Grade, tuple[SignedWord, ...]]

    def __post_init__(self):
        if self.grading not in (0, 1, 2):
            raise PresentationError(f"grading must be 0, 1 or 2, got {self.grading}")
        object.__setattr__(self, "series", Series(self.series))
        valid = set(all_grades(self.grading))
        clean = {}
        for g in all_grades(self.grading):
            if g in self.sectors:
                clean[g] = tuple(self.sectors[g])
        extra = set(self.sectors) - valid
        if extra:
            raise PresentationError(f"sector labels {sorted(extra)} do not fit grading {self.grading}")
        lengths = {len(w) for ws in clean.values() for w in ws}
        if len(lengths) > 1:
            raise PresentationError(f"words of different lengths: {sorted(lengths)}")
        if not lengths:
            raise PresentationError("presentation has no words")
        object.__setattr__(self, "sectors", clean)

    @classmethod
    def from_strings(cls, grading: int, series, sectors: Mapping) -> Presentation:
        """Build from ``{"01": ["IA", ...], ...}`` or ``{"01": "IA IY", ...}`` style data."""
        conv = {}
        for label, words in sectors.items():
            if isinstance(words, str):
                words = words.split()
            if grading == 0:
                g = ()
            else:
                g = parse_grade(label) if isinstance(label, str) else tuple(label)
            conv[g] = tuple(parse_word(w) if isinstance(w, str) else w for w in words)
        return cls(grading, Series(series), conv)

    @property
    def word_length(self) -> int:
        return len(next(iter(self.generators)))

    @property
    def generators(self) -> list[SignedWord]:
        return [w for ws in self.sectors.values() for w in ws]

    @property
    def grades(self) -> list[Grade]:
        return [g for g, ws in self.sectors.items() for _ in ws]

    @property
    def labels(self) -> list[str]:
        prefix = SECTOR_PREFIX[self.grading]
        return [f"{prefix[g]}{j}" for g, ws in self.sectors.items() for j in range(len(ws))]

    def sector_of(self) -> list[tuple[Grade, int]]:
        return [(g, j) for g, ws in self.sectors.items() for j in range(len(ws))]

    def unsigned_key(self) -> frozenset[str]:
        return frozenset(w.letters for w in self.generators)

    def to_dict(self) -> dict:
        return {
            "grading": GRADING_NAMES[self.grading],
            "series": self.series.value,
            "sectors": {grade_label(g) or "0": [str(w) for w in ws] for g, ws in self.sectors.items()},
        }

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.grading, self.series, self.sectors) == (other.grading, other.series, other.sectors)

    def __hash__(self):
        return hash((self.grading, self.series, tuple(self.sectors.items())))

    def __repr__(self):
        body = "; ".join(f"{grade_label(g) or '0'}: {' '.join(map(str, ws))}" for g, ws in self.sectors.items())
        return f"Presentation({GRADING_NAMES[self.grading]}, {self.series.value}, {{{body}}})"


@dataclass(frozen=True)
class HomogeneousElement:
    """``sum_J coefficients[J] * (J-th word of sector grade)``."""

    grade: Grade
    coefficients: tuple[int, ...]

    def matrix(self, p: Presentation) -> np.ndarray:
        words = p.sectors[self.grade]
        if len(words) != len(self.coefficients):
            raise ValueError("coefficient count does not match sector dimension")
        return sum(c * word_to_matrix(w) for c, w in zip(self.coefficients, words))


@dataclass(frozen=True)
class StructureConstants:
    """``table[a][b] = (s, c)`` means generator a times generator b is ``s * generator c``."""

    signs: tuple[tuple[int, ...], ...]
    index: tuple[tuple[int, ...], ...]
    grades: tuple[Grade, ...]
    unit: int = 0

    @property
    def size(self) -> int:
        return len(self.grades)

    def entry(self, a: int, b: int) -> tuple[int, int]:
        return self.signs[a][b], self.index[a][b]

    def square_sign(self, a: int) -> int:
        return self.signs[a][a]

    def commute(self, a: int, b: int) -> bool:
        return self.signs[a][b] == self.signs[b][a]

    def to_json_table(self) -> list[list[dict]]:
        return [[{"sign": s, "index": i} for s, i in zip(srow, irow)]
                for srow, irow in zip(self.signs, self.index)]


def structure_constants(p: Presentation) -> StructureConstants:
    gens = p.generators
    lookup: dict[str, tuple[int, int]] = {}
    for i, w in enumerate(gens):
        if w.letters in lookup:
            raise PresentationError(f"word {w.letters} appears twice (up to sign)")
        lookup[w.letters] = (w.sign, i)
    signs, index = [], []
    for a, u in enumerate(gens):
        srow, irow = [], []
        for b, v in enumerate(gens):
            w = word_mul(u, v)
            hit = lookup.get(w.letters)
            if hit is None:
                raise ClosureError(f"{u} * {v} = {w} is not +- a generator", (a, b))
            s, c = hit
            srow.append(w.sign * s)
            irow.append(c)
        signs.append(tuple(srow))
        index.append(tuple(irow))
    return StructureConstants(tuple(signs), tuple(index), tuple(p.grades), 0)


# -- verification ------------------------------------------------------------

@dataclass
class Report:
    """Outcome of a verification: ordered list of (check, passed, detail)."""

    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    @property
    def failure(self) -> tuple[str, str] | None:
        for name, passed, detail in self.checks:
            if not passed:
                return name, detail
        return None

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append((name, passed, detail))
        return passed

    def extend(self, other: Report) -> bool:
        self.checks.extend(other.checks)
        return other.ok

    def format(self) -> str:
        return "\n".join(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {d}" if d else "")
                         for name, ok, d in self.checks)


def verify_grading(p: Presentation) -> Report:
    rep = Report()
    expected = all_grades(p.grading)
    missing = [grade_label(g) for g in expected if not p.sectors.get(g)]
    if not rep.add("sector-count", not missing,
                   f"missing or empty sectors {missing}" if missing else f"{len(expected)} sectors"):
        return rep
    for g, ws in p.sectors.items():
        for j, w in enumerate(ws):
            try:
                wg = word_grade(w, p.grading)
            except WordError as e:
                rep.add("placement", False, str(e))
                return rep
            if wg != g:
                rep.add("placement", False,
                        f"{w} declared in sector {grade_label(g)} but has pattern {grade_label(wg)}")
                return rep
    rep.add("placement", True)
    gens, grades = p.generators, p.grades
    for a, u in enumerate(gens):
        for b, v in enumerate(gens):
            got = word_grade(word_mul(u, v), p.grading)
            if got != grade_add(grades[a], grades[b]):
                rep.add("grading", False, f"{u} * {v} lands in {grade_label(got)}")
                return rep
    rep.add("grading", True)
    return rep


def _division_sector(words: Sequence[SignedWord]) -> tuple[bool, str]:
    d = len(words)
    if d == 1:
        return True, ""
    u_inv = word_inverse(words[0])
    ratios = [word_mul(u_inv, v) for v in words[1:]]
    e0 = SignedWord.identity(len(words[0]))
    if d == 2:
        r = ratios[0]
        if word_square_sign(r) != -1:
            return False, f"ratio {r} squares to +1"
        return True, ""
    if d == 4:
        for r in ratios:
            if word_mul(r, r) != -e0:
                return False, f"ratio {r} does not square to -1"
        for i in range(3):
            for j in range(i + 1, 3):
                if commutes(ratios[i], ratios[j]):
                    return False, f"ratios {ratios[i]} and {ratios[j]} commute"
        r12 = word_mul(ratios[0], ratios[1])
        if r12.letters != ratios[2].letters:
            return False, f"ratio product {r12} is not +-{ratios[2]}"
        return True, ""
    return False, f"sector dimension {d} is not 1, 2 or 4"


def division_exact(words: Sequence[SignedWord]) -> bool:
    """Exact criterion: every nonzero combination of ``words`` is invertible.

    Dimension 1 is automatic. Dimension 2 needs the ratio ``u^-1 v`` to square
    to -1. Dimension 4 needs the three ratios to be imaginary quaternion units
    (square -1, pairwise anticommuting, ``r1 r2 = +-r3``).
    """
    return _division_sector(words)[0]


@lru_cache(maxsize=None)
def coefficient_batch(dim: int, size: int = DET_BATCH, seed: int = DET_SEED) -> np.ndarray:
    rng = np.random.default_rng(seed)
    out = rng.integers(-COEFF_RANGE, COEFF_RANGE + 1, size=(size, dim))
    while True:
        zero = ~out.any(axis=1)
        if not zero.any():
            break
        out[zero] = rng.integers(-COEFF_RANGE, COEFF_RANGE + 1, size=(int(zero.sum()), dim))
    out.setflags(write=False)
    return out


@lru_cache(maxsize=4096)
def _det_oracle_cached(words: tuple[SignedWord, ...]) -> tuple[bool, tuple[int, ...] | None]:
    coeffs = coefficient_batch(len(words))
    mats = np.stack([word_to_matrix(w) for w in words])
    combos = np.einsum("bk,kij->bij", coeffs, mats)
    nz = _kernels.det_nonzero(combos)
    if nz.all():
        return True, None
    return False, tuple(int(c) for c in coeffs[int(np.argmin(nz))])


def division_oracle(words: Sequence[SignedWord]) -> tuple[bool, tuple[int, ...] | None]:
    """Determinant cross-check on the fixed-seed coefficient batch.

    Returns ``(all_nonsingular, witness_coefficients)``.
    """
    return _det_oracle_cached(tuple(words))


def verify_division(p: Presentation) -> Report:
    rep = Report()
    for g, ws in p.sectors.items():
        ok, why = _division_sector(ws)
        if not rep.add(f"division[{grade_label(g) or '0'}]", ok, why):
            return rep
    return rep


def verify_superdivision(p: Presentation, oracle: bool = True) -> Report:
    rep = Report()
    gens = p.generators
    e0 = SignedWord.identity(p.word_length)
    zero = all_grades(p.grading)[0]
    first = p.sectors.get(zero, ())
    if not rep.add("unit", bool(first) and first[0] == e0,
                   "" if first and first[0] == e0 else f"first word of the 0 sector must be {e0}"):
        return rep
    seen: dict[str, SignedWord] = {}
    for w in gens:
        if w.letters in seen:
            rep.add("distinct", False, f"{w} repeats {seen[w.letters]}")
            return rep
        seen[w.letters] = w
    rep.add("distinct", True)
    if not rep.extend(verify_grading(p)):
        return rep
    dim = p.series.dim
    bad = [grade_label(g) for g, ws in p.sectors.items() if len(ws) != dim]
    if not rep.add("dimension", not bad,
                   f"sectors {bad} do not have dimension {dim} ({p.series.value})" if bad else ""):
        return rep
    try:
        structure_constants(p)
    except ClosureError as e:
        rep.add("closure", False, str(e))
        return rep
    rep.add("closure", True)
    if not rep.extend(verify_division(p)):
        return rep
    if oracle:
        for g, ws in p.sectors.items():
            ok, witness = division_oracle(ws)
            if not rep.add(f"determinant[{grade_label(g) or '0'}]", ok,
                           "" if ok else f"singular combination {witness}"):
                return rep
    return rep


# -- Clifford and Schur ------------------------------------------------------

@dataclass(frozen=True)
class CliffordSignature:
    p: int
    q: int

    @property
    def eta(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q


def verify_clifford(words: Sequence[SignedWord], sig: CliffordSignature) -> bool:
    """Check ``g_I g_J + g_J g_I = 2 eta_IJ`` in the word algebra."""
    if sig.p + sig.q != len(words):
        raise ValueError(f"signature ({sig.p},{sig.q}) does not match {len(words)} words")
    if len({len(w) for w in words}) > 1:
        raise WordError("words of different lengths")
    eta = sig.eta
    e0 = SignedWord.identity(len(words[0]))
    for i, u in enumerate(words):
        if word_mul(u, u) != (e0 if eta[i] > 0 else -e0):
            return False
        for v in words[i + 1:]:
            if commutes(u, v):
                return False
    return True


def schur_commutant_check(reps: Sequence[SignedWord], basis: Sequence[SignedWord]) -> bool:
    """Does every combination of ``basis`` commute with every word in ``reps``?

    Quantifying over all real coefficients reduces to checking basis words
    one by one, since words either commute or anticommute.
    """
    lengths = {len(w) for w in list(reps) + list(basis)}
    if len(lengths) > 1:
        raise WordError("words of different lengths")
    return all(commutes(b, r) for b in basis for r in reps)


# -- presentation files ------------------------------------------------------

def parse_presentation(text: str) -> Presentation:
    grading = series = None
    sectors: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise PresentationError(f"line {lineno}: expected 'key: value'")
        key, value = key.strip(), value.strip()
        if key == "grading":
            if value not in GRADING_BY_NAME:
                raise PresentationError(f"line {lineno}: unknown grading {value!r}")
            grading = GRADING_BY_NAME[value]
        elif key == "series":
            try:
                series = Series(value)
            except ValueError:
                raise PresentationError(f"line {lineno}: unknown series {value!r}") from None
        elif key.startswith("sector"):
            parts = key.split()
            if len(parts) != 2:
                raise PresentationError(f"line {lineno}: expected 'sector <label>:'")
            label = parts[1]
            try:
                g = parse_grade(label)
            except ValueError as e:
                raise PresentationError(f"line {lineno}: {e}") from None
            if g in sectors:
                raise PresentationError(f"line {lineno}: sector {label} given twice")
            try:
                sectors[g] = tuple(parse_word(t) for t in value.split())
            except WordError as e:
                raise PresentationError(f"line {lineno}: {e}") from None
        else:
            raise PresentationError(f"line {lineno}: unknown key {key!r}")
    if grading is None or series is None:
        raise PresentationError("missing 'grading:' or 'series:' header")
    if grading == 0:
        if set(sectors) - {(0,)}:
            raise PresentationError("grading none takes a single 'sector 0:' line")
        sectors = {(): sectors.get((0,), ())}
    for g in sectors:
        if len(g) != grading and grading:
            raise PresentationError(f"sector label {grade_label(g)} does not fit grading {GRADING_NAMES[grading]}")
    return Presentation(grading, series, sectors)


def format_presentation(p: Presentation, header: Iterable[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"grading: {GRADING_NAMES[p.grading]}")
    lines.append(f"series: {p.series.value}")
    for g, ws in p.sectors.items():
        lines.append(f"sector {grade_label(g) or '0'}: " + " ".join(str(w) for w in ws))
    return "\n".join(lines) + "\n"


def presentation_from_dict(d: Mapping) -> Presentation:
    return Presentation.from_strings(GRADING_BY_NAME[str(d["grading"])], d["series"], d["sectors"])


# -- table emission ----------------------------------------------------------

def _signed(label: str, s: int) -> str:
    return ("-" if s < 0 else "+") + label


def emit_table(p: Presentation, fmt: str = "text", title: str | None = None) -> str:
    rep = verify_superdivision(p)
    if not rep.ok:
        name, detail = rep.failure
        raise PresentationError(f"verification failed at {name}: {detail}")
    sc = structure_constants(p)
    labels = p.labels
    gens = p.generators
    if fmt == "json":
        doc = {
            "grading": GRADING_NAMES[p.grading],
            "series": p.series.value,
            "generators": [str(w) for w in gens],
            "labels": labels,
            "grades": [grade_label(g) or "0" for g in sc.grades],
            "unit": sc.unit,
            "table": sc.to_json_table(),
        }
        if title:
            doc = {"class_id": title, **doc}
        return json.dumps(doc, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["*"] + labels)
        for a in range(sc.size):
            writer.writerow([labels[a]] + [_signed(labels[c], s) for s, c in zip(sc.signs[a], sc.index[a])])
        return buf.getvalue()
    if fmt == "text":
        out = []
        if title:
            out.append(f"# {title}")
        out.append(f"# grading {GRADING_NAMES[p.grading]}, series {p.series.value}, {sc.size} generators")
        for lab, w, g in zip(labels, gens, sc.grades):
            out.append(f"{lab} = {w}  [{grade_label(g) or '0'}]")
        width = max(len(x) for x in labels) + 1
        out.append(" " * (width + 1) + " ".join(f"{x:>{width}}" for x in labels))
        for a in range(sc.size):
            cells = " ".join(f"{_signed(labels[c], s):>{width}}" for s, c in zip(sc.signs[a], sc.index[a]))
            out.append(f"{labels[a]:>{width}} {cells}")
        for a in range(sc.size):
            for b in range(sc.size):
                s, c = sc.entry(a, b)
                out.append(f"{labels[a]}*{labels[b]} = {'-' if s < 0 else ''}{labels[c]}")
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def table_from_json(doc: Mapping) -> StructureConstants:
    table = doc["table"]
    signs = tuple(tuple(int(cell["sign"]) for cell in row) for row in table)
    index = tuple(tuple(int(cell["index"]) for cell in row) for row in table)
    grades = tuple(() if g == "0" and doc["grading"] == "none" else parse_grade(g) for g in doc["grades"])
    return StructureConstants(signs, index, grades, int(doc.get("unit", 0)))
