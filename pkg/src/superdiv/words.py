"""Signed words over the four-letter alphabet I, X, Y, A.

A word ``l1 l2 ... ln`` stands for the real ``2**n x 2**n`` matrix
``M(l1) (x) M(l2) (x) ... (x) M(ln)`` with the leftmost letter as the
outermost Kronecker factor::

    I = [[1, 0], [0, 1]]     X = [[1, 0], [0, -1]]
    Y = [[0, 1], [1, 0]]     A = [[0, 1], [-1, 0]]

Products are computed letterwise, so every word is a signed permutation
matrix and the whole word calculus stays in exact integer arithmetic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Literal, Sequence

import numpy as np

Letter = Literal["I", "X", "Y", "A"]
LETTERS: tuple[str, ...] = ("I", "X", "Y", "A")
# I < X < Y < A, used for every deterministic ordering in the package
LETTER_ORDER = {c: i for i, c in enumerate(LETTERS)}

Grade = tuple[int, ...]

LETTER_MATRICES = {
    "I": np.array([[1, 0], [0, 1]], dtype=np.int64),
    "X": np.array([[1, 0], [0, -1]], dtype=np.int64),
    "Y": np.array([[0, 1], [1, 0]], dtype=np.int64),
    "A": np.array([[0, 1], [-1, 0]], dtype=np.int64),
}

# row letter acting on the left of the column letter
_MUL_ROWS = {
    "I": ((1, "I"), (1, "X"), (1, "Y"), (1, "A")),
    "X": ((1, "X"), (1, "I"), (1, "A"), (1, "Y")),
    "Y": ((1, "Y"), (-1, "A"), (1, "I"), (-1, "X")),
    "A": ((1, "A"), (-1, "Y"), (1, "X"), (-1, "I")),
}
LETTER_TABLE: dict[tuple[str, str], tuple[int, str]] = {
    (r, c): _MUL_ROWS[r][j] for r in LETTERS for j, c in enumerate(LETTERS)
}

_WORD_RE = re.compile(r"^(-?)([IXYA]+)$")
MAX_GRADING = 2


class WordError(ValueError):
    pass


def letter_mul(a: str, b: str) -> tuple[int, str]:
    """Product of two letters as ``(sign, letter)``."""
    try:
        return LETTER_TABLE[a, b]
    except KeyError:
        raise WordError(f"not a letter pair: {a!r}, {b!r}") from None


@dataclass(frozen=True, order=False)
class SignedWord:
    """``sign * letters`` with ``sign`` in {+1, -1}."""

    sign: int
    letters: str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise WordError(f"sign must be +1 or -1, got {self.sign!r}")
        if not self.letters or any(c not in LETTER_ORDER for c in self.letters):
            raise WordError(f"invalid word letters {self.letters!r}")

    @classmethod
    def parse(cls, text: str) -> SignedWord:
        return parse_word(text)

    @classmethod
    def identity(cls, n: int) -> SignedWord:
        return cls(1, "I" * n)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"SignedWord({format_word(self)!r})"

    def __mul__(self, other: SignedWord) -> SignedWord:
        return word_mul(self, other)

    def __neg__(self) -> SignedWord:
        return SignedWord(-self.sign, self.letters)

    @property
    def unsigned(self) -> SignedWord:
        return SignedWord(1, self.letters)

    def is_identity(self) -> bool:
        return self.sign == 1 and set(self.letters) == {"I"}

    def sort_key(self) -> tuple:
        return (tuple(LETTER_ORDER[c] for c in self.letters), -self.sign)


def parse_word(text: str) -> SignedWord:
    """Parse ``"-AYI"``-style text; a leading ``+`` is tolerated."""
    text = text.strip()
    if text.startswith("+"):
        text = text[1:]
    m = _WORD_RE.match(text)
    if m is None:
        raise WordError(f"cannot parse word {text!r}: expected optional '-' then letters from IXYA")
    return SignedWord(-1 if m.group(1) else 1, m.group(2))


def format_word(w: SignedWord) -> str:
    return ("-" if w.sign < 0 else "") + w.letters


def word_mul(u: SignedWord, v: SignedWord) -> SignedWord:
    if len(u.letters) != len(v.letters):
        raise WordError(f"length mismatch: {u} ({len(u)}) vs {v} ({len(v)})")
    sign = u.sign * v.sign
    out = []
    for a, b in zip(u.letters, v.letters):
        s, c = LETTER_TABLE[a, b]
        sign *= s
        out.append(c)
    return SignedWord(sign, "".join(out))


def word_square_sign(w: SignedWord) -> int:
    # A is the only letter squaring to -I
    return -1 if w.letters.count("A") % 2 else 1


def word_inverse(w: SignedWord) -> SignedWord:
    return w if word_square_sign(w) == 1 else -w


def word_grade(w: SignedWord, grading: int) -> Grade:
    """Grade read off the first ``grading`` letters: 0 for I/X, 1 for Y/A."""
    if not 0 <= grading <= MAX_GRADING:
        raise WordError(f"grading depth must be 0, 1 or 2, got {grading}")
    if len(w.letters) < grading:
        raise WordError(f"word {w} is shorter than grading depth {grading}")
    return tuple(0 if c in "IX" else 1 for c in w.letters[:grading])


def grade_add(a: Grade, b: Grade) -> Grade:
    if len(a) != len(b):
        raise ValueError(f"grade depth mismatch: {a} vs {b}")
    return tuple((x + y) % 2 for x, y in zip(a, b))


def grade_label(g: Grade) -> str:
    return "".join(str(b) for b in g)


def parse_grade(label: str) -> Grade:
    if not label or any(c not in "01" for c in label):
        raise ValueError(f"bad sector label {label!r}")
    return tuple(int(c) for c in label)


def all_grades(grading: int) -> list[Grade]:
    """Grades in canonical order: (), or 0, 1, or 00, 01, 10, 11."""
    if grading == 0:
        return [()]
    if grading == 1:
        return [(0,), (1,)]
    if grading == 2:
        return [(0, 0), (0, 1), (1, 0), (1, 1)]
    raise ValueError(f"unsupported grading {grading}")


def commutes(u: SignedWord, v: SignedWord) -> bool:
    """True if ``uv = vu``; otherwise ``uv = -vu``."""
    if len(u.letters) != len(v.letters):
        raise WordError(f"length mismatch: {u} vs {v}")
    # distinct non-identity letters anticommute, everything else commutes
    flips = sum(1 for a, b in zip(u.letters, v.letters) if a != b and a != "I" and b != "I")
    return flips % 2 == 0


def commutation(u: SignedWord, v: SignedWord) -> str:
    return "commute" if commutes(u, v) else "anticommute"


def structural_predicates(w: SignedWord) -> dict[str, bool]:
    return {
        "block_diagonal": w.letters[0] in "IX",
        "symmetric": word_square_sign(w) == 1,
    }


def word_to_matrix(w: SignedWord) -> np.ndarray:
    m = reduce(np.kron, (LETTER_MATRICES[c] for c in w.letters))
    return w.sign * m


def matrix_to_word(m: np.ndarray) -> SignedWord | None:
    """Inverse of :func:`word_to_matrix`, or None if ``m`` is not a signed word.

    Brute force over all ``4**n`` words; meant for small n only.
    """
    n = m.shape[0].bit_length() - 1
    if m.shape != (2**n, 2**n):
        return None
    for letters in all_words(n):
        w = SignedWord(1, letters)
        wm = word_to_matrix(w)
        if np.array_equal(wm, m):
            return w
        if np.array_equal(-wm, m):
            return -w
    return None


def all_words(n: int) -> list[str]:
    """All ``4**n`` unsigned letter strings of length n, in I<X<Y<A order."""
    out = [""]
    for _ in range(n):
        out = [s + c for s in out for c in LETTERS]
    return out


def words_with_grade(n: int, grade: Grade) -> list[str]:
    d = len(grade)
    return [s for s in all_words(n) if tuple(0 if c in "IX" else 1 for c in s[:d]) == grade]


def unsigned_key(words: Sequence[SignedWord]) -> frozenset[str]:
    return frozenset(w.letters for w in words)
