"""Batch kernels: letterwise word products and exact determinant tests.

Each kernel has a numba implementation and a pure-numpy one. The numba
path is used when numba imports and ``SUPERDIV_DISABLE_NUMBA`` is unset
(or ``0``); both paths are importable directly for testing and
benchmarking.

Words are encoded as ``uint8`` letter codes, I=0, X=1, Y=2, A=3.
"""
from __future__ import annotations

import os

import numpy as np

# letter product tables indexed [left, right]
PROD_LETTER = np.array(
    [[0, 1, 2, 3],
     [1, 0, 3, 2],
     [2, 3, 0, 1],
     [3, 2, 1, 0]], dtype=np.uint8)
PROD_SIGN = np.array(
    [[1, 1, 1, 1],
     [1, 1, 1, 1],
     [1, -1, 1, -1],
     [1, -1, 1, -1]], dtype=np.int8)

# |det| of every matrix fed to det_nonzero must stay below the product of
# these primes (checked with the Hadamard bound)
PRIMES = (2147483647, 2147483629, 2147483587)

_disabled = os.environ.get("SUPERDIV_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("numba disabled by SUPERDIV_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def encode(letters: str) -> np.ndarray:
    return np.frombuffer(letters.translate(_ENCODE).encode(), dtype=np.uint8) - ord("0")


_ENCODE = str.maketrans("IXYA", "0123")
_DECODE = "IXYA"


def decode(codes) -> str:
    return "".join(_DECODE[int(c)] for c in codes)


# -- word products -----------------------------------------------------------

def batch_word_mul_numpy(a: np.ndarray, b: np.ndarray, sa: np.ndarray, sb: np.ndarray):
    """Row-wise products of two (N, L) code arrays with signs ``sa``, ``sb``."""
    codes = PROD_LETTER[a, b]
    signs = np.prod(PROD_SIGN[a, b], axis=1, dtype=np.int8) * sa * sb
    return codes, signs.astype(np.int8)


def _batch_word_mul_loop(a, b, sa, sb, prod_letter, prod_sign):
    n, length = a.shape
    codes = np.empty((n, length), dtype=np.uint8)
    signs = np.empty(n, dtype=np.int8)
    for i in range(n):
        s = sa[i] * sb[i]
        for k in range(length):
            x = a[i, k]
            y = b[i, k]
            codes[i, k] = prod_letter[x, y]
            s *= prod_sign[x, y]
        signs[i] = s
    return codes, signs


# -- exact determinant non-vanishing -----------------------------------------

def _inv_mod_numpy(x: np.ndarray, p: int) -> np.ndarray:
    # Fermat inverse, vectorized square-and-multiply
    result = np.ones_like(x)
    base = x % p
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def det_mod_zero_numpy(mats: np.ndarray, p: int) -> np.ndarray:
    """Boolean array: True where det(mats[k]) == 0 (mod p)."""
    m = np.array(mats, dtype=np.int64) % p
    batch, n, _ = m.shape
    singular = np.zeros(batch, dtype=bool)
    rows = np.arange(batch)
    for col in range(n):
        nz = m[:, col:, col] != 0
        has = nz.any(axis=1)
        singular |= ~has
        piv = col + np.argmax(nz, axis=1)
        # swap pivot row into place
        top = m[rows, col].copy()
        m[rows, col] = m[rows, piv]
        m[rows, piv] = top
        pv = m[:, col, col]
        inv = _inv_mod_numpy(np.where(has, pv, 1), p)
        factors = m[:, col + 1:, col] * inv[:, None] % p
        m[:, col + 1:, :] = (m[:, col + 1:, :] - factors[:, :, None] * m[:, None, col, :]) % p
    return singular


def _det_mod_zero_loop(mats, p):
    batch, n, _ = mats.shape
    out = np.zeros(batch, dtype=np.bool_)
    m = np.empty((n, n), dtype=np.int64)
    for k in range(batch):
        for i in range(n):
            for j in range(n):
                m[i, j] = mats[k, i, j] % p
        for col in range(n):
            piv = -1
            for r in range(col, n):
                if m[r, col] != 0:
                    piv = r
                    break
            if piv < 0:
                out[k] = True
                break
            if piv != col:
                for j in range(n):
                    t = m[col, j]
                    m[col, j] = m[piv, j]
                    m[piv, j] = t
            # modular inverse via Fermat
            inv = 1
            base = m[col, col]
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = inv * base % p
                base = base * base % p
                e >>= 1
            for r in range(col + 1, n):
                f = m[r, col] * inv % p
                if f != 0:
                    for j in range(col, n):
                        m[r, j] = (m[r, j] - f * m[col, j]) % p
    return out


def hadamard_bound_sq(mats: np.ndarray) -> list[int]:
    sq = np.asarray(mats, dtype=object) ** 2
    out = []
    for mat in sq:
        b = 1
        for row in mat:
            b *= int(sum(row))
        out.append(b)
    return out


def _det_nonzero(mats: np.ndarray, zero_mod) -> np.ndarray:
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError(f"expected a (B, n, n) batch, got shape {mats.shape}")
    modulus = 1
    for p in PRIMES:
        modulus *= p
    if any(b >= modulus * modulus for b in hadamard_bound_sq(mats)):
        raise OverflowError("determinant bound exceeds the CRT modulus")
    nonzero = np.zeros(mats.shape[0], dtype=bool)
    for p in PRIMES:
        nonzero |= ~zero_mod(mats, p)
    return nonzero


def det_nonzero_numpy(mats: np.ndarray) -> np.ndarray:
    return _det_nonzero(mats, det_mod_zero_numpy)


if HAVE_NUMBA:
    _batch_word_mul_jit = njit(cache=True)(_batch_word_mul_loop)
    _det_mod_zero_jit = njit(cache=True)(_det_mod_zero_loop)

    def batch_word_mul_numba(a, b, sa, sb):
        return _batch_word_mul_jit(
            np.ascontiguousarray(a, dtype=np.uint8), np.ascontiguousarray(b, dtype=np.uint8),
            np.ascontiguousarray(sa, dtype=np.int8), np.ascontiguousarray(sb, dtype=np.int8),
            PROD_LETTER, PROD_SIGN)

    def det_nonzero_numba(mats):
        return _det_nonzero(mats, _det_mod_zero_jit)

    batch_word_mul = batch_word_mul_numba
    det_nonzero = det_nonzero_numba
    BACKEND = "numba"
else:
    batch_word_mul = batch_word_mul_numpy
    det_nonzero = det_nonzero_numpy
    BACKEND = "numpy"


def warmup() -> None:
    """Trigger JIT compilation so later calls are not charged for it."""
    a = np.zeros((1, 1), dtype=np.uint8)
    s = np.ones(1, dtype=np.int8)
    batch_word_mul(a, a, s, s)
    det_nonzero(np.eye(2, dtype=np.int64)[None])
