import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from superdiv.words import (
    LETTERS,
    LETTER_MATRICES,
    SignedWord,
    WordError,
    all_words,
    commutation,
    commutes,
    format_word,
    grade_add,
    letter_mul,
    matrix_to_word,
    parse_word,
    structural_predicates,
    word_grade,
    word_inverse,
    word_mul,
    word_square_sign,
    word_to_matrix,
)

W = parse_word

# hand-written 4x4 matrices of the imaginary quaternion units IA, AY, AX
Q1 = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
Q2 = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
Q3 = [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]

# letter table, row acting on the left of the column
REFERENCE_TABLE = {
    "I": ["I", "X", "Y", "A"],
    "X": ["X", "I", "A", "Y"],
    "Y": ["Y", "-A", "I", "-X"],
    "A": ["A", "-Y", "X", "-I"],
}


def words_of(n):
    return st.builds(
        lambda sign, letters: SignedWord(sign, "".join(letters)),
        st.sampled_from([1, -1]),
        st.lists(st.sampled_from(LETTERS), min_size=n, max_size=n),
    )


def pairs(max_len=4):
    return st.integers(1, max_len).flatmap(lambda n: st.tuples(words_of(n), words_of(n)))


@pytest.mark.parametrize("a", LETTERS)
@pytest.mark.parametrize("j,b", list(enumerate(LETTERS)))
def test_letter_table_matches_reference(a, j, b):
    ref = REFERENCE_TABLE[a][j]
    sign, letter = letter_mul(a, b)
    assert (sign, letter) == ((-1, ref[1]) if ref.startswith("-") else (1, ref))


@pytest.mark.parametrize("a", LETTERS)
@pytest.mark.parametrize("b", LETTERS)
def test_letter_table_matches_matrices(a, b):
    sign, c = letter_mul(a, b)
    assert np.array_equal(LETTER_MATRICES[a] @ LETTER_MATRICES[b], sign * LETTER_MATRICES[c])


def test_letter_mul_examples():
    assert letter_mul("Y", "A") == (-1, "X")
    assert letter_mul("I", "X") == (1, "X")
    assert letter_mul("A", "A") == (-1, "I")


def test_word_mul_examples():
    assert W("IA") * W("AY") == W("AX")
    assert W("AX") * W("AY") == W("-IA")
    for w in map(W, ["XYA", "-AAI", "III"]):
        assert W("III") * w == w


def test_word_mul_examples_against_reference_matrices():
    q1, q2, q3 = (np.array(q) for q in (Q1, Q2, Q3))
    assert np.array_equal(q1 @ q2, q3)
    assert np.array_equal(q3 @ q2, -q1)


def test_word_mul_length_mismatch():
    with pytest.raises(WordError):
        word_mul(W("IA"), W("A"))


@pytest.mark.parametrize("text,sign", [("AX", -1), ("AA", 1), ("II", 1)])
def test_square_sign_examples(text, sign):
    w = W(text)
    assert word_square_sign(w) == sign
    assert word_mul(w, w) == SignedWord(sign, "I" * len(w))


@pytest.mark.parametrize("text,inverse", [("AX", "-AX"), ("YY", "YY"), ("I", "I")])
def test_inverse_examples(text, inverse):
    w = W(text)
    assert word_inverse(w) == W(inverse)
    assert w * word_inverse(w) == SignedWord.identity(len(w))


def test_grade_examples():
    assert word_grade(W("A"), 1) == (1,)
    assert word_grade(W("AY"), 2) == (1, 1)
    assert word_grade(W("AYI"), 2) == (1, 1)
    assert word_grade(W("IAX"), 2) == (0, 1)
    assert word_grade(W("IAX"), 0) == ()


def test_grade_errors():
    with pytest.raises(WordError):
        word_grade(W("A"), 2)
    with pytest.raises(WordError):
        word_grade(W("AAA"), 3)


@pytest.mark.parametrize("text,expected", [("IA", Q1), ("AY", Q2), ("AX", Q3)])
def test_matrices_match_reference_quaternions(text, expected):
    assert np.array_equal(word_to_matrix(W(text)), np.array(expected))


def test_matrix_identity():
    assert np.array_equal(word_to_matrix(W("I")), np.eye(2, dtype=int))


def test_commutation_examples():
    assert commutation(W("IA"), W("AX")) == "anticommute"
    assert commutation(W("YI"), W("IY")) == "commute"
    for w in map(W, ["A", "AX", "-YAX"]):
        assert commutation(w, w) == "commute"
    m1, m3 = word_to_matrix(W("IA")), word_to_matrix(W("AX"))
    assert np.array_equal(m1 @ m3, -(m3 @ m1))


@pytest.mark.parametrize("text,expected", [
    ("IAX", (True, False)),
    ("AY", (False, False)),
    ("II", (True, True)),
])
def test_structural_predicates_examples(text, expected):
    p = structural_predicates(W(text))
    assert (p["block_diagonal"], p["symmetric"]) == expected


@pytest.mark.parametrize("text,expected", [("-AX", (-1, "AX")), ("IAY", (1, "IAY"))])
def test_parse(text, expected):
    w = parse_word(text)
    assert (w.sign, w.letters) == expected
    assert format_word(w) == text


@pytest.mark.parametrize("bad", ["IBX", "", "-", "ia", "--A", "A-"])
def test_parse_errors(bad):
    with pytest.raises(WordError):
        parse_word(bad)


def test_signed_word_rejects_bad_sign():
    with pytest.raises(WordError):
        SignedWord(2, "I")


def test_matrix_to_word_roundtrip_length_two():
    for s in all_words(2):
        w = SignedWord(-1, s)
        assert matrix_to_word(word_to_matrix(w)) == w
    assert matrix_to_word(np.zeros((4, 4), dtype=int)) is None


# -- properties --------------------------------------------------------------

@given(pairs())
def test_homomorphism(uv):
    u, v = uv
    assert np.array_equal(word_to_matrix(u * v), word_to_matrix(u) @ word_to_matrix(v))


def test_associativity_exhaustive_length_two():
    ws = [SignedWord(1, s) for s in all_words(2)]
    for u, v, w in itertools.product(ws, repeat=3):
        assert (u * v) * w == u * (v * w)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_square_law(n):
    for s in all_words(n):
        w = SignedWord(1, s)
        assert w * w == SignedWord(word_square_sign(w), "I" * n)


@given(pairs())
def test_commutation_dichotomy(uv):
    u, v = uv
    uv_, vu = u * v, v * u
    assert uv_.letters == vu.letters
    assert (uv_ == vu) == commutes(u, v)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(words_of(n), words_of(n))), st.sampled_from([1, 2]))
def test_grading_additive(uv, depth):
    u, v = uv
    assert word_grade(u * v, depth) == grade_add(word_grade(u, depth), word_grade(v, depth))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_predicates_agree_with_matrices(n):
    half = 2 ** (n - 1)
    for s in all_words(n):
        w = SignedWord(1, s)
        m = word_to_matrix(w)
        pred = structural_predicates(w)
        assert pred["symmetric"] == np.array_equal(m, m.T)
        off_zero = not m[:half, half:].any() and not m[half:, :half].any()
        assert pred["block_diagonal"] == off_zero
        # every word matrix is a signed permutation matrix
        assert (np.abs(m).sum(axis=0) == 1).all() and (np.abs(m).sum(axis=1) == 1).all()
