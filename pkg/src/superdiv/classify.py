"""Enumeration and classification of alphabetic superdivision presentations.

Two presentations are equivalent when their structure constants agree after
some combination of sign flips of non-unit generators, permutations of the
generators inside each sector, and (Z2xZ2 only) a permutation of the three
nonzero sectors. :func:`equivalent` searches for such a map by backtracking;
every assignment is propagated through the multiplication table, so in
practice only the images of a handful of generators are ever guessed.
"""
from __future__ import annotations

import itertools
import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    Presentation,
    Series,
    StructureConstants,
    division_exact,
    division_oracle,
    structure_constants,
    verify_superdivision,
)
from .catalog import ClassId, catalog
from .words import (
    Grade,
    SignedWord,
    all_grades,
    grade_label,
    matrix_to_word,
    word_mul,
    word_square_sign,
    word_to_matrix,
    words_with_grade,
    LETTER_ORDER,
)

NONZERO = [(0, 1), (1, 0), (1, 1)]
EXTRA_LETTERS = {Series.REAL: 0, Series.COMPLEX: 1, Series.QUATERNIONIC: 2}
_QUAT_TAIL = ("II", "IA", "AX", "AY")


class UnknownClassError(LookupError):
    pass


class CatalogError(RuntimeError):
    pass


@lru_cache(maxsize=8192)
def _sc(p: Presentation) -> StructureConstants:
    return structure_constants(p)


# -- sector permutations -----------------------------------------------------

def sector_permutations(grading: int) -> list[dict[Grade, Grade]]:
    """Allowed sector maps; identity first."""
    if grading < 2:
        g = all_grades(grading)
        return [{x: x for x in g}]
    out = []
    for images in itertools.permutations(NONZERO):
        perm = {(0, 0): (0, 0)}
        perm.update(zip(NONZERO, images))
        out.append(perm)
    return out


@lru_cache(maxsize=None)
def _prefix_conjugation(images: tuple[Grade, Grade]) -> dict[str, tuple[int, str]]:
    """Conjugation of two-letter words by the index-bit map sending 01, 10 to ``images``.

    Returns ``letters -> (sign, letters)`` for all 16 two-letter words.
    """
    (a1, a2), (b1, b2) = images
    # index bits (i1, i2) -> i1 * (10 image) + i2 * (01 image)
    perm = np.zeros((4, 4), dtype=np.int64)
    for i1 in (0, 1):
        for i2 in (0, 1):
            j1 = (i1 * b1 + i2 * a1) % 2
            j2 = (i1 * b2 + i2 * a2) % 2
            perm[2 * j1 + j2, 2 * i1 + i2] = 1
    out = {}
    for x in "IXYA":
        for y in "IXYA":
            m = perm @ word_to_matrix(SignedWord(1, x + y)) @ perm.T
            w = matrix_to_word(m)
            assert w is not None
            out[x + y] = (w.sign, w.letters)
    return out


def permute_word_sectors(w: SignedWord, perm: dict[Grade, Grade]) -> SignedWord:
    """Apply to a word the similarity transformation realizing ``perm`` on grades."""
    table = _prefix_conjugation((perm[(0, 1)], perm[(1, 0)]))
    s, head = table[w.letters[:2]]
    return SignedWord(s * w.sign, head + w.letters[2:])


def permute_sectors(p: Presentation, perm: dict[Grade, Grade]) -> Presentation:
    if p.grading != 2:
        return p
    sectors = {perm[g]: tuple(permute_word_sectors(w, perm) for w in ws) for g, ws in p.sectors.items()}
    return Presentation(2, p.series, dict(sorted(sectors.items())))


def swap_slots(w: SignedWord, i: int = 0, j: int = 1) -> SignedWord:
    s = list(w.letters)
    s[i], s[j] = s[j], s[i]
    return SignedWord(w.sign, "".join(s))


# -- certificates and the equivalence search ---------------------------------

@dataclass(frozen=True)
class EquivalenceCertificate:
    """``P`` generator ``a`` maps to ``mapping[a][0] * Q generator mapping[a][1]``."""

    sector_perm: dict
    mapping: tuple[tuple[int, int], ...]

    def inverse(self) -> EquivalenceCertificate:
        inv = [None] * len(self.mapping)
        for a, (s, b) in enumerate(self.mapping):
            inv[b] = (s, a)
        return EquivalenceCertificate({v: k for k, v in self.sector_perm.items()}, tuple(inv))

    def apply(self, sp: StructureConstants) -> StructureConstants:
        """Rewrite the table of P in Q's indexing."""
        n = sp.size
        signs = [[0] * n for _ in range(n)]
        index = [[0] * n for _ in range(n)]
        grades = [None] * n
        for a in range(n):
            sa, ma = self.mapping[a]
            grades[ma] = self.sector_perm[sp.grades[a]]
            for b in range(n):
                sb, mb = self.mapping[b]
                s, c = sp.entry(a, b)
                sc_, mc = self.mapping[c]
                # phi(a) phi(b) = sa sb h_ma h_mb must equal s * sc * h_mc
                signs[ma][mb] = s * sc_ * sa * sb
                index[ma][mb] = mc
        unit_sign, unit = self.mapping[sp.unit]
        return StructureConstants(tuple(map(tuple, signs)), tuple(map(tuple, index)), tuple(grades),
                                  unit if unit_sign == 1 else -1)

    def replays(self, sp: StructureConstants, sq: StructureConstants) -> bool:
        if sp.size != sq.size or sorted(b for _, b in self.mapping) != list(range(sq.size)):
            return False
        return self.apply(sp) == sq

    def to_dict(self) -> dict:
        return {
            "sector_perm": {grade_label(k) or "0": grade_label(v) or "0" for k, v in self.sector_perm.items()},
            "mapping": [{"sign": s, "index": b} for s, b in self.mapping],
        }


def _anti_counts(sc: StructureConstants, grades: Sequence[Grade]) -> list[dict[Grade, int]]:
    out = []
    for a in range(sc.size):
        counts = dict.fromkeys(grades, 0)
        for b in range(sc.size):
            if not sc.commute(a, b):
                counts[sc.grades[b]] += 1
        out.append(counts)
    return out


def _search(sp: StructureConstants, sq: StructureConstants, perm: dict[Grade, Grade]):
    n = sp.size
    grades = list(perm)
    ap, aq = _anti_counts(sp, grades), _anti_counts(sq, grades)
    prof_p = [(sp.square_sign(a), tuple(ap[a][g] for g in grades)) for a in range(n)]
    prof_q = [(sq.square_sign(b), tuple(aq[b][perm[g]] for g in grades)) for b in range(n)]
    # sector-level multiset check before any branching
    for g in grades:
        lhs = sorted(prof_p[a] for a in range(n) if sp.grades[a] == g)
        rhs = sorted(prof_q[b] for b in range(n) if sq.grades[b] == perm[g])
        if lhs != rhs:
            return None
    cand = [frozenset(b for b in range(n) if sq.grades[b] == perm[sp.grades[a]] and prof_q[b] == prof_p[a])
            for a in range(n)]

    def assign(a, b, s, img, sgn, used, done):
        stack = [(a, b, s)]
        while stack:
            a, b, s = stack.pop()
            if img[a] >= 0:
                if img[a] != b or sgn[a] != s:
                    return False
                continue
            if used[b] or b not in cand[a]:
                return False
            img[a], sgn[a], used[b] = b, s, True
            done.append(a)
            for x in done:
                for u, v in ((a, x), (x, a)) if x != a else ((a, a),):
                    s_uv, c = sp.signs[u][v], sp.index[u][v]
                    t = sq.signs[img[u]][img[v]]
                    d = sq.index[img[u]][img[v]]
                    stack.append((c, d, s_uv * sgn[u] * sgn[v] * t))
        return True

    def rec(img, sgn, used, done):
        try:
            a = img.index(-1)
        except ValueError:
            return img, sgn
        for b in sorted(cand[a]):
            if used[b]:
                continue
            for s in (1, -1):
                state = (img[:], sgn[:], used[:], done[:])
                if assign(a, b, s, *state):
                    found = rec(*state)
                    if found:
                        return found
        return None

    img, sgn, used, done = [-1] * n, [0] * n, [False] * n, []
    if sp.grades[sp.unit] != sq.grades[sq.unit] or not assign(sp.unit, sq.unit, 1, img, sgn, used, done):
        return None
    found = rec(img, sgn, used, done)
    if found is None:
        return None
    img, sgn = found
    return EquivalenceCertificate(dict(perm), tuple(zip(sgn, img)))


def equivalent_tables(sp: StructureConstants, sq: StructureConstants, grading: int,
                      sector_perm: dict | None = None) -> EquivalenceCertificate | None:
    if sp.size != sq.size:
        return None
    perms = [sector_perm] if sector_perm is not None else sector_permutations(grading)
    for perm in perms:
        cert = _search(sp, sq, perm)
        if cert is not None:
            return cert
    return None


def equivalent(p: Presentation, q: Presentation, sector_perm: dict | None = None) -> EquivalenceCertificate | None:
    """Certificate mapping P onto Q, or None if they are inequivalent."""
    if p.grading != q.grading or p.series != q.series:
        return None
    if sorted(len(ws) for ws in p.sectors.values()) != sorted(len(ws) for ws in q.sectors.values()):
        return None
    return equivalent_tables(_sc(p), _sc(q), p.grading, sector_perm)


# -- identification ----------------------------------------------------------

def identify_with_certificate(p: Presentation) -> tuple[ClassId, EquivalenceCertificate]:
    matches = []
    for entry in catalog(p.grading, p.series):
        cert = equivalent(p, entry.presentation)
        if cert is not None:
            matches.append((entry.class_id, cert))
    if not matches:
        raise UnknownClassError(f"no catalog class matches {p!r}")
    if len(matches) > 1:
        raise CatalogError(f"{p!r} matches several catalog classes: {[str(m[0]) for m in matches]}")
    return matches[0]


def identify(p: Presentation) -> ClassId:
    return identify_with_certificate(p)[0]


def projection_presentations(p: Presentation) -> dict[Grade, Presentation]:
    """Z2-graded subalgebras 00+01, 00+10, 00+11, keyed by the nonzero sector.

    The words are relabelled so the grade sits in the first letter: for the
    01 sector the first two tensor slots are swapped, which is a similarity
    transformation and leaves the structure constants unchanged.
    """
    if p.grading != 2:
        raise ValueError("projections are defined for Z2xZ2-graded presentations")
    out = {}
    for g in NONZERO:
        even, odd = p.sectors[(0, 0)], p.sectors[g]
        if g == (0, 1):
            even = tuple(swap_slots(w) for w in even)
            odd = tuple(swap_slots(w) for w in odd)
        out[g] = Presentation(1, p.series, {(0,): even, (1,): odd})
    return out


@lru_cache(maxsize=4096)
def projection_classes(p: Presentation) -> dict[Grade, ClassId]:
    return {g: identify(s) for g, s in projection_presentations(p).items()}


def subalgebra_projections(p: Presentation) -> tuple[ClassId, ...]:
    return tuple(sorted(projection_classes(p).values()))


def projection_triple(p: Presentation) -> str:
    return "(" + "/".join(c.short for c in subalgebra_projections(p)) + ")"


# -- fingerprints ------------------------------------------------------------

def sign_string(signs: Iterable[int]) -> str:
    """Multiset of signs as a string, '+' first."""
    return "".join(sorted(("+" if s > 0 else "-" for s in signs), key=lambda c: c != "+"))


def square_signs(p: Presentation, grade: Grade) -> str:
    """Square signs of a sector in generator order."""
    return "".join("+" if word_square_sign(w) > 0 else "-" for w in p.sectors[grade])


@dataclass(frozen=True)
class Fingerprint:
    series: Series
    grading: int
    unit_sector_signs: str
    sector_signs: tuple[str, ...]
    projections: tuple[str, ...] = ()
    commutation: tuple[tuple[str, str, str], ...] = ()

    def to_dict(self) -> dict:
        return {
            "series": self.series.value,
            "grading": self.grading,
            "unit_sector_signs": self.unit_sector_signs,
            "sector_signs": list(self.sector_signs),
            "projections": list(self.projections),
            "commutation": [list(c) for c in self.commutation],
        }


def commutation_pattern(p: Presentation, g1: Grade, g2: Grade) -> str:
    sc = _sc(p)
    idx1 = [a for a in range(sc.size) if sc.grades[a] == g1]
    idx2 = [b for b in range(sc.size) if sc.grades[b] == g2]
    flags = {sc.commute(a, b) for a in idx1 for b in idx2}
    if flags == {True}:
        return "commute"
    if flags == {False}:
        return "anticommute"
    return "mixed"


def fingerprint(p: Presentation) -> Fingerprint:
    zero = all_grades(p.grading)[0]
    unit_signs = sign_string(word_square_sign(w) for w in p.sectors[zero][1:])
    nonzero = all_grades(p.grading)[1:]
    per = {g: sign_string(word_square_sign(w) for w in p.sectors[g]) for g in nonzero}
    if p.grading < 2:
        return Fingerprint(p.series, p.grading, unit_signs, tuple(sorted(per.values())))
    pairs = []
    for g1, g2 in itertools.combinations(nonzero, 2):
        a, b = sorted((per[g1], per[g2]))
        pairs.append((a, b, commutation_pattern(p, g1, g2)))
    return Fingerprint(
        p.series, p.grading, unit_signs, tuple(sorted(per.values())),
        tuple(str(c) for c in subalgebra_projections(p)), tuple(sorted(pairs)),
    )


# -- enumeration -------------------------------------------------------------

def canonical_unit_sector(grading: int, series: Series) -> tuple[SignedWord, ...]:
    tails = {Series.REAL: ("",), Series.COMPLEX: ("I", "A"), Series.QUATERNIONIC: _QUAT_TAIL}
    return tuple(SignedWord(1, "I" * grading + t) for t in tails[Series(series)])


def _word_sort(ws: Iterable[SignedWord]) -> tuple[SignedWord, ...]:
    return tuple(sorted(ws, key=lambda w: [LETTER_ORDER[c] for c in w.letters]))


def sector_closure(seed: SignedWord, unit_sector: Sequence[SignedWord], limit: int = 64) -> tuple[SignedWord, ...]:
    """Unsigned closure of ``seed`` under left and right multiplication by the unit sector."""
    found = {seed.letters}
    frontier = [seed.unsigned]
    while frontier:
        nxt = []
        for w in frontier:
            for e in unit_sector:
                for x in (word_mul(e, w), word_mul(w, e)):
                    if x.letters not in found:
                        found.add(x.letters)
                        nxt.append(x.unsigned)
        if len(found) > limit:
            break
        frontier = nxt
    return _word_sort(SignedWord(1, s) for s in found)


def candidate_sectors(grading: int, series: Series, grade: Grade) -> list[tuple[SignedWord, ...]]:
    """Distinct seed closures for one sector, in enumeration order."""
    series = Series(series)
    n = grading + EXTRA_LETTERS[series]
    unit = canonical_unit_sector(grading, series)
    out, seen = [], set()
    for letters in words_with_grade(n, grade):
        sec = sector_closure(SignedWord(1, letters), unit)
        key = frozenset(w.letters for w in sec)
        if key not in seen:
            seen.add(key)
            out.append(sec)
    return out


def enumerate_presentations(grading: int, series, check: bool = True) -> list[Presentation]:
    """All alphabetic presentations with canonical unit sector and minimal word length."""
    series = Series(series)
    if grading not in (1, 2):
        raise ValueError("enumeration covers gradings 1 and 2")
    unit = canonical_unit_sector(grading, series)
    out, seen = [], set()
    if grading == 1:
        combos = (({(0,): unit, (1,): odd}) for odd in candidate_sectors(1, series, (1,)))
    else:
        def combos_2():
            for f in candidate_sectors(2, series, (0, 1)):
                for g in candidate_sectors(2, series, (1, 0)):
                    h = _word_sort({word_mul(x, y).unsigned for x in f for y in g})
                    yield {(0, 0): unit, (0, 1): f, (1, 0): g, (1, 1): h}
        combos = combos_2()
    for sectors in combos:
        p = Presentation(grading, series, sectors)
        key = p.unsigned_key()
        if key in seen:
            continue
        seen.add(key)
        if not check or verify_superdivision(p).ok:
            out.append(p)
    return out


# -- classification ----------------------------------------------------------

@dataclass
class ClassResult:
    class_id: ClassId | None
    representative: Presentation
    members: list[Presentation]
    fingerprint: Fingerprint
    certificates: list[EquivalenceCertificate]
    catalog_certificate: EquivalenceCertificate | None = None
    notes: str = ""

    @property
    def member_count(self) -> int:
        return len(self.members)

    @property
    def projections(self) -> tuple[ClassId, ...]:
        return subalgebra_projections(self.representative) if self.representative.grading == 2 else ()

    def to_dict(self) -> dict:
        return {
            "class_id": str(self.class_id) if self.class_id else None,
            "representative": self.representative.to_dict(),
            "member_count": self.member_count,
            "fingerprint": self.fingerprint.to_dict(),
            "projections": [str(c) for c in self.projections],
        }


@dataclass
class Classification:
    classes: list[ClassResult]
    # fingerprint buckets that split into several classes, with the failed searches
    splits: list[tuple[Fingerprint, list[tuple[int, int]]]] = field(default_factory=list)

    @property
    def unknown(self) -> list[ClassResult]:
        return [c for c in self.classes if c.class_id is None]


def classify(presentations: Sequence[Presentation]) -> Classification:
    """Partition by fingerprint, then refine each bucket by explicit equivalence."""
    buckets: dict[Fingerprint, list[int]] = defaultdict(list)
    fps = [fingerprint(p) for p in presentations]
    for i, fp in enumerate(fps):
        buckets[fp].append(i)
    raw: list[tuple[Fingerprint, list[int], list[EquivalenceCertificate]]] = []
    splits = []
    for fp, idx in buckets.items():
        reps: list[tuple[list[int], list[EquivalenceCertificate]]] = []
        failed = []
        for i in idx:
            for members, certs in reps:
                cert = equivalent(presentations[i], presentations[members[0]])
                if cert is not None:
                    members.append(i)
                    certs.append(cert)
                    break
                failed.append((i, members[0]))
            else:
                reps.append(([i], [EquivalenceCertificate(
                    {g: g for g in all_grades(presentations[i].grading)},
                    tuple((1, a) for a in range(len(presentations[i].generators))))]))
        if len(reps) > 1:
            splits.append((fp, failed))
        for members, certs in reps:
            raw.append((fp, members, certs))
    raw.sort(key=lambda r: r[1][0])
    classes = []
    for fp, members, certs in raw:
        first = presentations[members[0]]
        entries = {e.class_id: e for e in catalog(first.grading, first.series)}
        try:
            cid, cert = identify_with_certificate(first)
        except UnknownClassError:
            classes.append(ClassResult(None, first, [presentations[i] for i in members], fp, certs))
            continue
        entry = entries[cid]
        classes.append(ClassResult(cid, entry.presentation, [presentations[i] for i in members], fp, certs,
                                   cert, entry.notes))
    classes.sort(key=lambda c: (c.class_id is None, c.class_id or ClassId(9, Series.REAL, 0)))
    return Classification(classes, splits)


# -- random transformations --------------------------------------------------

def random_transformation(p: Presentation, rng: random.Random) -> Presentation:
    """Random sign flips, within-sector permutations and sector permutation."""
    perm = rng.choice(sector_permutations(p.grading))
    q = permute_sectors(p, perm)
    zero = all_grades(q.grading)[0]
    sectors = {}
    for g, ws in q.sectors.items():
        ws = list(ws)
        head = [ws.pop(0)] if g == zero else []
        rng.shuffle(ws)
        ws = [w if rng.random() < 0.5 else -w for w in ws]
        sectors[g] = tuple(head + ws)
    return Presentation(q.grading, q.series, sectors)


# -- fusion table ------------------------------------------------------------

@dataclass
class FusionTable:
    series: Series
    # (S01 index, S10 index) -> S11 indices
    cells: dict[tuple[int, int], set[int]]
    # (S01, S10, S11) -> Z2xZ2 classes realizing that combination
    realizers: dict[tuple[int, int, int], set[ClassId]]

    def multiclass(self, a: int, b: int) -> bool:
        return any(len(self.realizers.get((a, b, c), ())) > 1 for c in self.cells.get((a, b), ()))

    @property
    def size(self) -> int:
        return {Series.REAL: 2, Series.COMPLEX: 3, Series.QUATERNIONIC: 2}[self.series]

    def is_symmetric(self) -> bool:
        return all(self.cells.get((a, b)) == self.cells.get((b, a))
                   for a in range(1, self.size + 1) for b in range(1, self.size + 1))

    def to_json(self) -> list[list[dict]]:
        s = self.series.letter
        return [[{"outputs": [f"D1_{s}{c}" for c in sorted(self.cells.get((a, b), ()))],
                  "multiclass": self.multiclass(a, b)}
                 for b in range(1, self.size + 1)] for a in range(1, self.size + 1)]

    def format(self) -> str:
        lines = []
        for a in range(1, self.size + 1):
            cells = []
            for b in range(1, self.size + 1):
                outs = sorted(self.cells.get((a, b), ()))
                arrow = "=>" if len(outs) > 1 or self.multiclass(a, b) else "->"
                star = "(*)" if self.multiclass(a, b) else ""
                cells.append(f"{a} x {b} {arrow} {'/'.join(map(str, outs)) or '-'}{star}")
            lines.append("    ".join(f"{c:<16}" for c in cells).rstrip())
        return "\n".join(lines) + "\n"


def fusion_table(series=Series.COMPLEX, classification: Classification | None = None) -> FusionTable:
    series = Series(series)
    if classification is None:
        classification = classify(enumerate_presentations(2, series))
    cells: dict = defaultdict(set)
    realizers: dict = defaultdict(set)
    for cls in classification.classes:
        for p in cls.members:
            pc = projection_classes(p)
            a, b, c = pc[(0, 1)].index, pc[(1, 0)].index, pc[(1, 1)].index
            cells[a, b].add(c)
            realizers[a, b, c].add(cls.class_id)
    return FusionTable(series, dict(cells), dict(realizers))


# -- division cross-validation -----------------------------------------------

def division_candidates(series, grading: int = 1) -> list[tuple[SignedWord, ...]]:
    """Sector candidates met during enumeration, plus raw same-grade word pairs.

    The raw pairs (complex series) include singular spans, so the exact
    criterion and the determinant oracle are compared on both outcomes.
    """
    series = Series(series)
    out = []
    for g in all_grades(grading)[1:]:
        out.extend(candidate_sectors(grading, series, g))
    out.append(canonical_unit_sector(grading, series))
    if series == Series.COMPLEX:
        n = grading + 1
        for g in all_grades(grading):
            words = [SignedWord(1, s) for s in words_with_grade(n, g)]
            out.extend(itertools.combinations(words, 2))
    return out


def division_agreement(sectors: Iterable[Sequence[SignedWord]]) -> list[tuple[tuple, bool, bool]]:
    """``(sector, exact, oracle)`` for every sector where the two disagree."""
    bad = []
    for ws in sectors:
        exact = division_exact(ws)
        oracle = division_oracle(ws)[0]
        if exact != oracle:
            bad.append((tuple(ws), exact, oracle))
    return bad
