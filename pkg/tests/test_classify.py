import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from superdiv.algebra import (
    Presentation,
    division_exact,
    division_oracle,
    structure_constants,
    verify_superdivision,
)
from superdiv.catalog import ClassId, catalog, lookup
from superdiv.classify import (
    EquivalenceCertificate,
    UnknownClassError,
    _sc,
    classify,
    commutation_pattern,
    division_agreement,
    division_candidates,
    enumerate_presentations,
    equivalent,
    fingerprint,
    fusion_table,
    identify,
    identify_with_certificate,
    permute_sectors,
    permute_word_sectors,
    projection_triple,
    random_transformation,
    sector_permutations,
    subalgebra_projections,
    swap_slots,
)
from superdiv.words import SignedWord, all_words, parse_word, word_grade, word_to_matrix

SWAP_01_10 = {(0, 0): (0, 0), (0, 1): (1, 0), (1, 0): (0, 1), (1, 1): (1, 1)}
SWAP_01_11 = {(0, 0): (0, 0), (0, 1): (1, 1), (1, 0): (1, 0), (1, 1): (0, 1)}


def cid(text):
    return ClassId.parse(text)


def test_enumerate_real_z2():
    ps = enumerate_presentations(1, "real")
    assert sorted(str(p.sectors[(1,)][0]) for p in ps) == ["A", "Y"]


def test_enumerate_real_z2z2():
    ps = enumerate_presentations(2, "real")
    assert len(ps) == 16
    pairs = {(str(p.sectors[(0, 1)][0]), str(p.sectors[(1, 0)][0])) for p in ps}
    assert pairs == {(a, b) for a in ["IA", "IY", "XA", "XY"] for b in ["AI", "AX", "YI", "YX"]}


@pytest.mark.parametrize("grading,series,count", [
    (1, "complex", 4), (1, "quaternionic", 8),
    (2, "complex", 64), (2, "quaternionic", 256),
])
def test_enumerate_sizes(grading, series, count):
    ps = enumerate_presentations(grading, series)
    assert len(ps) == count
    assert len({p.unsigned_key for p in ps}) == count
    assert all(verify_superdivision(p, oracle=False).ok for p in ps)


@pytest.mark.parametrize("series,count", [("real", 4), ("complex", 5), ("quaternionic", 4)])
def test_classify_counts(series, count):
    fam = classify(enumerate_presentations(2, series))
    assert len(fam.classes) == count
    assert not fam.unknown
    assert [c.class_id.index for c in fam.classes] == list(range(1, count + 1))


def test_classify_reports_unknown():
    # a closed table with no catalog match must be reported, not dropped
    split = Presentation.from_strings(1, "complex", {"0": "II IX", "1": "AI AX"})
    assert not verify_superdivision(split).ok
    with pytest.raises(UnknownClassError):
        identify(split)
    good = Presentation.from_strings(1, "complex", {"0": "II IA", "1": "AX AY"})
    fam = classify([good, split])
    assert [c.class_id for c in fam.classes] == [cid("D1_C1"), None]
    assert len(fam.unknown) == 1 and fam.unknown[0].members == [split]


def test_equivalent_sector_swap():
    r1 = lookup("D2_R1").presentation
    swapped = permute_sectors(r1, SWAP_01_10)
    assert verify_superdivision(swapped).ok
    cert = equivalent(r1, swapped, sector_perm=SWAP_01_10)
    assert cert is not None and cert.sector_perm == SWAP_01_10
    assert cert.replays(structure_constants(r1), structure_constants(swapped))


def test_equivalent_examples():
    ya = Presentation.from_strings(1, "complex", {"0": "II IA", "1": "YI YA"})
    assert equivalent(ya, lookup("D1_C3").presentation) is not None
    assert equivalent(lookup("D2_C4").presentation, lookup("D2_C5").presentation) is None
    # different series or grading are never equivalent
    assert equivalent(lookup("D1_R1").presentation, lookup("D2_R1").presentation) is None


def test_fingerprint_examples():
    assert fingerprint(lookup("D2_R2").presentation).sector_signs == ("+", "+", "-")
    for name, pat in [("D2_C4", "anticommute"), ("D2_C5", "commute")]:
        fp = fingerprint(lookup(name).presentation)
        assert {c for _, _, c in fp.commutation} == {pat}
    assert fingerprint(lookup("D2_H1").presentation).projections == ("D1_H1",) * 3


def test_commutation_pattern_matches_matrices():
    p = lookup("D2_C4").presentation
    f = word_to_matrix(p.sectors[(0, 1)][0])
    g = word_to_matrix(p.sectors[(1, 0)][1])
    assert np.array_equal(f @ g, -(g @ f))
    assert commutation_pattern(p, (0, 1), (1, 0)) == "anticommute"


@pytest.mark.parametrize("name,triple", [("D2_R3", "(1/1/2)"), ("D2_C2", "(1/2/3)"), ("D2_H4", "(1/2/2)")])
def test_projection_examples(name, triple):
    p = lookup(name).presentation
    assert projection_triple(p) == triple
    assert [c.grading for c in subalgebra_projections(p)] == [1, 1, 1]


def test_identify_examples():
    assert identify(Presentation.from_strings(1, "real", {"0": "I", "1": "Y"})) == cid("D1_R2")
    r4 = Presentation.from_strings(2, "real", {"00": "II", "01": "IY", "10": "YI", "11": "YY"})
    assert identify(r4) == cid("D2_R4")
    c1 = permute_sectors(lookup("D2_C1").presentation, SWAP_01_11)
    assert verify_superdivision(c1).ok
    assert identify(c1) == cid("D2_C1")


def test_sector_permutations():
    perms = sector_permutations(2)
    assert len(perms) == 6
    assert perms[0] == {g: g for g in perms[0]}
    assert sector_permutations(1) == [{(0,): (0,), (1,): (1,)}]


@pytest.mark.parametrize("perm_index", range(6))
def test_word_sector_permutation_is_conjugation(perm_index):
    perm = sector_permutations(2)[perm_index]
    for n in (2, 3):
        for s in all_words(n):
            w = SignedWord(1, s)
            image = permute_word_sectors(w, perm)
            assert word_grade(image, 2) == perm[word_grade(w, 2)]
            # conjugation keeps products: the square sign is unchanged
            assert (image * image).sign == (w * w).sign


def test_swap_slots():
    assert swap_slots(parse_word("-AXY")) == parse_word("-XAY")


def test_certificate_inverse():
    c1 = lookup("D2_C1").presentation
    q = random_transformation(c1, random.Random(3))
    cert = equivalent(c1, q)
    assert cert is not None
    assert cert.inverse().replays(_sc(q), _sc(c1))
    assert cert.to_dict()["sector_perm"]["00"] == "00"


def test_certificate_rejects_wrong_target():
    r1, r2 = lookup("D2_R1").presentation, lookup("D2_R2").presentation
    ident = EquivalenceCertificate({g: g for g in r1.sectors}, tuple((1, a) for a in range(4)))
    assert ident.replays(_sc(r1), _sc(r1))
    assert not ident.replays(_sc(r1), _sc(r2))


ENTRIES = [e for e in catalog() if e.class_id.grading]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ENTRIES), st.integers(0, 2 ** 32))
def test_equivalence_reflexive_symmetric(entry, seed):
    rng = random.Random(seed)
    p = random_transformation(entry.presentation, rng)
    q = random_transformation(entry.presentation, rng)
    pq, qp = equivalent(p, q), equivalent(q, p)
    assert pq is not None and qp is not None
    assert pq.replays(_sc(p), _sc(q)) and qp.replays(_sc(q), _sc(p))
    assert equivalent(p, p) is not None


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: str(e.class_id))
def test_identify_with_certificate_replays(entry):
    rng = random.Random(str(entry.class_id))
    q = random_transformation(entry.presentation, rng)
    found, cert = identify_with_certificate(q)
    assert found == entry.class_id
    assert cert.replays(_sc(q), _sc(entry.presentation))


def test_fingerprint_invariant_under_transformations():
    rng = random.Random(7)
    for e in ENTRIES:
        base = fingerprint(e.presentation)
        for _ in range(5):
            assert fingerprint(random_transformation(e.presentation, rng)) == base


def test_fingerprints_separate_catalog_entries():
    fps = [fingerprint(e.presentation) for e in ENTRIES]
    assert len(set(fps)) == len(fps)


def test_fusion_table():
    ft = fusion_table("complex")
    assert ft.cells[1, 2] == {3}
    assert ft.cells[1, 3] == {1, 2}
    assert ft.cells[3, 3] == {3} and ft.multiclass(3, 3)
    assert not ft.multiclass(1, 3)
    assert ft.is_symmetric()
    assert ft.realizers[3, 3, 3] == {cid("D2_C4"), cid("D2_C5")}
    doc = ft.to_json()
    assert doc[2][2] == {"outputs": ["D1_C3"], "multiclass": True}
    assert "(*)" in ft.format()


def test_division_candidates_cover_both_outcomes():
    cands = division_candidates("complex", 1)
    outcomes = {division_exact(c) for c in cands}
    assert outcomes == {True, False}
    assert division_agreement(cands) == []


def test_division_exact_against_dense_determinants():
    # independent check on a few spans: exact criterion vs a float determinant
    # over a coefficient grid
    for ws in [("AI", "AA"), ("II", "IX"), ("YI", "YA"), ("IA", "AX")]:
        words = [parse_word(w) for w in ws]
        m0, m1 = (word_to_matrix(w) for w in words)
        singular = any(abs(np.linalg.det(a * m0 + b * m1)) < 1e-9
                       for a in range(-3, 4) for b in range(-3, 4) if a or b)
        assert division_exact(words) == (not singular) == division_oracle(words)[0]
