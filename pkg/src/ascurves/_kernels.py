"""Hot loops for field-wide enumeration.

Every kernel has a numba implementation and a pure-numpy one. The numba path
is used when numba imports and ``ASCURVES_DISABLE_NUMBA`` is unset (or "0").
Both paths are exported under explicit names so tests and the benchmark can
exercise them side by side.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("ASCURVES_DISABLE_NUMBA", "").strip().lower()

try:
    if _FLAG in ("", "0", "false", "no"):
        import numba
    else:
        numba = None
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None

HAVE_NUMBA = numba is not None

# Rows of outer digits processed per numpy chunk.
_CHUNK = 1 << 15


def _digits(codes: np.ndarray, p: int, width: int) -> np.ndarray:
    powers = p ** np.arange(width, dtype=np.int64)
    return (codes[:, None] // powers[None, :]) % p


# ---------------------------------------------------------------- batch_mul


def batch_mul_numpy(x: np.ndarray, y: np.ndarray, red: np.ndarray, p: int) -> np.ndarray:
    """Row-wise product of field elements given as (B, N) coefficient rows.

    ``red[k]`` holds the reduction of z**k modulo the field modulus for
    k in [0, 2N-1).
    """
    b, n = x.shape
    conv = np.zeros((b, 2 * n - 1), dtype=np.int64)
    for i in range(n):
        conv[:, i : i + n] += x[:, i : i + 1] * y
    conv %= p
    return (conv @ red) % p


def _batch_mul_nb_impl(x, y, red, p):
    b, n = x.shape
    out = np.zeros((b, n), dtype=np.int64)
    conv = np.zeros(2 * n - 1, dtype=np.int64)
    for r in range(b):
        for k in range(2 * n - 1):
            conv[k] = 0
        for i in range(n):
            xi = x[r, i]
            if xi != 0:
                for j in range(n):
                    conv[i + j] += xi * y[r, j]
        for k in range(2 * n - 1):
            c = conv[k] % p
            if c != 0:
                for j in range(n):
                    out[r, j] += c * red[k, j]
        for j in range(n):
            out[r, j] %= p
    return out


# ---------------------------------------------------------- count_form_zeros


def count_form_zeros_numpy(forms: np.ndarray, p: int, lo: int, hi: int) -> int:
    """Count vectors where every quadratic form in ``forms`` vanishes mod p.

    ``forms`` has shape (t, N, N) and is upper triangular: the l-th form is
    sum_{i<=j} forms[l, i, j] x_i x_j. The enumeration is split as
    x = (x_0, rest); ``lo``/``hi`` bound the integer code of ``rest``, so
    the full space is [0, p**(N-1)).
    """
    t, n, _ = forms.shape
    total = 0
    a00 = forms[:, 0, 0]
    x0 = np.arange(p, dtype=np.int64)
    for start in range(lo, hi, _CHUNK):
        stop = min(hi, start + _CHUNK)
        rest = _digits(np.arange(start, stop, dtype=np.int64), p, n - 1)
        ok = np.ones((stop - start, p), dtype=bool)
        for l in range(t):
            lin = (rest @ forms[l, 0, 1:]) % p
            tail = forms[l, 1:, 1:]
            const = (((rest @ tail) % p) * rest).sum(axis=1) % p
            vals = a00[l] * x0[None, :] ** 2 + lin[:, None] * x0[None, :] + const[:, None]
            ok &= vals % p == 0
        total += int(ok.sum())
    return total


def _count_form_zeros_nb_impl(forms, p, lo, hi):
    t, n, _ = forms.shape
    m = n - 1
    digits = np.zeros(max(m, 1), dtype=np.int64)
    v = lo
    for i in range(m):
        digits[i] = v % p
        v //= p
    lin = np.zeros(t, dtype=np.int64)
    const = np.zeros(t, dtype=np.int64)
    count = 0
    for _outer in range(lo, hi):
        for l in range(t):
            s = 0
            for j in range(1, n):
                s += forms[l, 0, j] * digits[j - 1]
            lin[l] = s % p
            c = 0
            for i in range(1, n):
                xi = digits[i - 1]
                if xi != 0:
                    r = 0
                    for j in range(i, n):
                        r += forms[l, i, j] * digits[j - 1]
                    c += xi * (r % p)
            const[l] = c % p
        for x0 in range(p):
            hit = True
            for l in range(t):
                if (forms[l, 0, 0] * x0 * x0 + lin[l] * x0 + const[l]) % p != 0:
                    hit = False
                    break
            if hit:
                count += 1
        i = 0
        while i < m:
            digits[i] += 1
            if digits[i] < p:
                break
            digits[i] = 0
            i += 1
    return count


if HAVE_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)
    batch_mul_numba = _jit(_batch_mul_nb_impl)
    _count_nb = _jit(_count_form_zeros_nb_impl)

    def count_form_zeros_numba(forms: np.ndarray, p: int, lo: int, hi: int) -> int:
        return int(_count_nb(np.ascontiguousarray(forms, dtype=np.int64), p, lo, hi))

    def batch_mul(x, y, red, p):
        return batch_mul_numba(
            np.ascontiguousarray(x, dtype=np.int64),
            np.ascontiguousarray(y, dtype=np.int64),
            np.ascontiguousarray(red, dtype=np.int64),
            p,
        )

    count_form_zeros = count_form_zeros_numba
else:
    batch_mul_numba = None
    count_form_zeros_numba = None
    batch_mul = batch_mul_numpy
    count_form_zeros = count_form_zeros_numpy


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
