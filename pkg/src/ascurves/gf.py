"""The field tower F_p ⊂ F_q ⊂ F_{q^n}, realised as one extension of F_p.

An extension of degree N = t*n is built from the first monic irreducible
polynomial of degree N over F_p, scanning candidates in ascending order of
the base-p integer formed by their lower coefficients. Elements are tuples of
N residues (little endian in the root z of the modulus); the canonical
integer encoding is sum(c_i * p**i).

F_q is never represented separately: it is the fixed field of the
q-Frobenius, which is precomputed as an N x N matrix over F_p.
"""

from __future__ import annotations

import functools
import json
from collections.abc import Iterator

import numpy as np

from . import _kernels, _linalg
from .errors import ContextMismatchError, EnumerationLimitError, FieldError

DEFAULT_ENUM_CEILING = 1 << 26
_enum_ceiling = DEFAULT_ENUM_CEILING


def get_enum_ceiling() -> int:
    return _enum_ceiling


def set_enum_ceiling(limit: int) -> None:
    """Change the process-wide cap on full-field enumerations."""
    global _enum_ceiling
    if limit < 1:
        raise ValueError("enumeration ceiling must be positive")
    _enum_ceiling = int(limit)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p**t with p prime; raise FieldError otherwise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    t, r = 0, q
    while r % p == 0:
        r //= p
        t += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, t


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ------------------------------------------------------------------
# Minimal F_p[x] helpers on little-endian int lists, used only by the
# modulus search (the general polynomial type lives in upoly).


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    for k in range(len(a) - 1, df - 1, -1):
        c = a[k] * inv % p
        if c:
            for i in range(df + 1):
                a[k - df + i] = (a[k - df + i] - c * f[i]) % p
    return _trim(a[:df])


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _pmod(prod, f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result, base = [1], _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim([c % p for c in out])


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    # x^(p^d) == x mod f
    h = x
    for _ in range(d):
        h = _ppowmod(h, p, f, p)
    if _psub(h, x, p):
        return False
    for r in _prime_factors(d):
        h = x
        for _ in range(d // r):
            h = _ppowmod(h, p, f, p)
        g = _pgcd(f, _psub(h, x, p), p)
        if len(g) > 1:
            return False
    return True


def first_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """First monic irreducible of the given degree in ascending scan order."""
    for code in range(p**degree):
        low = [(code // p**i) % p for i in range(degree)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {degree} over F_{p}")


# ------------------------------------------------------------------


class FieldCtx:
    """Immutable description of F_q ⊂ F_{q^n} with q = p**t.

    Use :func:`field_create` rather than the constructor so equal parameters
    share one context object.
    """

    def __init__(self, p: int, t: int, n: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p) or p == 2:
            raise FieldError(f"characteristic must be an odd prime, got {p}")
        if t < 1 or n < 1:
            raise FieldError("t and n must be positive")
        self.p, self.t, self.n = int(p), int(t), int(n)
        self.q = self.p**self.t
        self.degree = self.t * self.n
        self.order = self.p**self.degree
        if modulus is None:
            modulus = first_irreducible(self.p, self.degree)
        modulus = tuple(int(c) % self.p for c in modulus)
        if len(modulus) != self.degree + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree t*n")
        if not is_irreducible(list(modulus), self.p):
            raise FieldError("modulus is reducible")
        self.modulus = modulus
        n_ = self.degree
        # red[k] = z**k mod modulus, k < 2N-1
        red = np.zeros((2 * n_ - 1, n_), dtype=np.int64)
        for k in range(n_):
            red[k, k] = 1
        for k in range(n_, 2 * n_ - 1):
            prev = np.roll(red[k - 1], 1)
            top = red[k - 1, n_ - 1]
            prev[0] = 0
            red[k] = (prev - top * np.array(modulus[:n_], dtype=np.int64)) % self.p
        self.reduction = red
        self._red_rows = [tuple(int(v) for v in row) for row in red]
        self.frobenius_q_matrix = self._build_frobenius()
        pows = [np.eye(n_, dtype=np.int64)]
        for _ in range(1, self.n):
            pows.append((self.frobenius_q_matrix @ pows[-1]) % self.p)
        self._frob_pows = pows
        self._frob_rows = [[tuple(int(v) for v in row) for row in m] for m in pows]
        self.trace_matrix = sum(pows[1:], pows[0].copy()) % self.p
        self._trace_rows = [tuple(int(v) for v in row) for row in self.trace_matrix]
        self.base_pivots = self._base_pivots()

    # -- construction helpers

    def _build_frobenius(self) -> np.ndarray:
        n_ = self.degree
        zq = self._pow_tuple(self._basis_tuple(1) if n_ > 1 else (0,), self.q)
        cols = [self.one_tuple()]
        for _ in range(1, n_):
            cols.append(self._mul_tuple(cols[-1], zq))
        return np.array(cols, dtype=np.int64).T.copy()

    def _base_pivots(self) -> tuple[int, ...]:
        basis = self.subfield_basis(1)
        _, piv = _linalg.rref(basis, self.p)
        if len(piv) != self.t:
            raise AssertionError("fixed field of Frobenius has wrong dimension")
        return tuple(piv)

    # -- raw tuple arithmetic

    def _basis_tuple(self, i: int) -> tuple[int, ...]:
        v = [0] * self.degree
        v[i] = 1
        return tuple(v)

    def one_tuple(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.degree - 1)

    def _mul_tuple(self, a, b) -> tuple[int, ...]:
        n_, p = self.degree, self.p
        prod = [0] * (2 * n_ - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        res = prod[:n_]
        for k in range(n_, 2 * n_ - 1):
            c = prod[k] % p
            if c:
                row = self._red_rows[k]
                for j in range(n_):
                    res[j] += c * row[j]
        return tuple(v % p for v in res)

    def _pow_tuple(self, a, e: int) -> tuple[int, ...]:
        result, base = self.one_tuple(), a
        while e:
            if e & 1:
                result = self._mul_tuple(result, base)
            base = self._mul_tuple(base, base)
            e >>= 1
        return result

    def _frob_tuple(self, a, j: int) -> tuple[int, ...]:
        rows = self._frob_rows[j % self.n]
        p = self.p
        return tuple(sum(r * c for r, c in zip(row, a)) % p for row in rows)

    # -- public element constructors

    def __call__(self, code: int) -> Element:
        return self.from_int(code)

    def from_int(self, code: int) -> Element:
        """Element with the given canonical integer encoding."""
        code = int(code)
        if not 0 <= code < self.order:
            raise FieldError(f"encoding {code} outside [0, {self.order})")
        coeffs = []
        for _ in range(self.degree):
            code, r = divmod(code, self.p)
            coeffs.append(r)
        return Element(self, tuple(coeffs))

    def from_coeffs(self, coeffs) -> Element:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.degree:
            raise FieldError("too many coefficients")
        return Element(self, coeffs + (0,) * (self.degree - len(coeffs)))

    def const(self, c: int) -> Element:
        """The prime-field element c·1."""
        return Element(self, (int(c) % self.p,) + (0,) * (self.degree - 1))

    def zero(self) -> Element:
        return self.const(0)

    def one(self) -> Element:
        return self.const(1)

    def gen(self) -> Element:
        """The root z of the modulus."""
        return self.from_coeffs([0, 1]) if self.degree > 1 else self.from_coeffs([(-self.modulus[0]) % self.p])

    # -- vectorised helpers on (B, N) int64 arrays

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        powers = self.p ** np.arange(self.degree, dtype=np.int64)
        return (np.asarray(vecs, dtype=np.int64) @ powers).astype(np.int64)

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        powers = self.p ** np.arange(self.degree, dtype=np.int64)
        return (codes[:, None] // powers[None, :]) % self.p

    def vmul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return _kernels.batch_mul(x, y, self.reduction, self.p)

    def vfrob(self, x: np.ndarray, j: int = 1) -> np.ndarray:
        return (np.asarray(x, dtype=np.int64) @ self._frob_pows[j % self.n].T) % self.p

    def frobenius_matrix(self, j: int = 1) -> np.ndarray:
        """Matrix of x -> x^(q^j) acting on coefficient columns."""
        return self._frob_pows[j % self.n].copy()

    def mul_matrix(self, a: Element) -> np.ndarray:
        """Matrix of x -> a*x acting on coefficient columns."""
        self.check(a)
        eye = np.eye(self.degree, dtype=np.int64)
        rows = self.vmul(np.tile(np.array(a.coeffs, dtype=np.int64), (self.degree, 1)), eye)
        return rows.T.copy()

    def vtrace(self, x: np.ndarray) -> np.ndarray:
        return (np.asarray(x, dtype=np.int64) @ self.trace_matrix.T) % self.p

    def base_coords(self, x: np.ndarray) -> np.ndarray:
        """Coordinates that determine an element of F_q uniquely (shape (B, t))."""
        return np.asarray(x)[:, list(self.base_pivots)]

    # -- enumeration

    def check_enumerable(self, limit: int | None = None, size: int | None = None) -> None:
        limit = get_enum_ceiling() if limit is None else limit
        size = self.order if size is None else size
        if size > limit:
            raise EnumerationLimitError(
                f"enumerating {size} elements of F_{self.p}^{self.degree} exceeds the ceiling {limit}"
            )

    def all_vectors(self, limit: int | None = None) -> np.ndarray:
        self.check_enumerable(limit)
        return self.decode(np.arange(self.order, dtype=np.int64))

    def elements(self, limit: int | None = None) -> Iterator[Element]:
        self.check_enumerable(limit)
        for code in range(self.order):
            yield self.from_int(code)

    def subfield_basis(self, d: int) -> np.ndarray:
        """F_p-basis (rows) of F_{q^d} inside this field."""
        if d < 1 or self.n % d:
            raise FieldError(f"{d} does not divide n={self.n}")
        m = (self.frobenius_matrix(d) - np.eye(self.degree, dtype=np.int64)) % self.p
        return _linalg.nullspace(m, self.p)

    def subfield_codes(self, d: int) -> np.ndarray:
        """Sorted encodings of all elements of F_{q^d}."""
        basis = self.subfield_basis(d)
        k = basis.shape[0]
        combos = (np.arange(self.p**k, dtype=np.int64)[:, None] // self.p ** np.arange(k)) % self.p
        return np.sort(self.encode((combos @ basis) % self.p))

    # -- bookkeeping

    def check(self, x: Element) -> None:
        if not isinstance(x, Element):
            raise TypeError(f"expected Element, got {type(x).__name__}")
        if x.ctx is not self and x.ctx.key != self.key:
            raise ContextMismatchError(f"element of {x.ctx} used in {self}")

    @property
    def key(self) -> tuple:
        return (self.p, self.t, self.n, self.modulus)

    def to_dict(self) -> dict:
        return {"p": self.p, "t": self.t, "n": self.n, "modulus": list(self.modulus)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> FieldCtx:
        ctx = field_create(d["p"], d.get("t", 1), d["n"])
        if "modulus" in d and tuple(d["modulus"]) != ctx.modulus:
            return cls(d["p"], d.get("t", 1), d["n"], tuple(d["modulus"]))
        return ctx

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, t={self.t}, n={self.n})"


@functools.lru_cache(maxsize=None)
def field_create(p: int, t: int = 1, n: int = 1) -> FieldCtx:
    """Deterministic context for F_{p^t} ⊂ F_{p^(tn)}."""
    return FieldCtx(p, t, n)


class Element:
    """One element of F_{q^n}. Integers act as prime-field constants."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other) -> tuple[int, ...]:
        if isinstance(other, Element):
            self.ctx.check(other)
            return other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.ctx.const(int(other)).coeffs
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        p = self.ctx.p
        return Element(self.ctx, tuple((x + y) % p for x, y in zip(self.coeffs, b)))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        p = self.ctx.p
        return Element(self.ctx, tuple((x - y) % p for x, y in zip(self.coeffs, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.ctx.p
        return Element(self.ctx, tuple((-x) % p for x in self.coeffs))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Element(self.ctx, self.ctx._mul_tuple(self.coeffs, b))

    __rmul__ = __mul__

    def inverse(self) -> Element:
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return Element(self.ctx, self.ctx._pow_tuple(self.coeffs, self.ctx.order - 2))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * Element(self.ctx, b).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return self.ctx.one()
        return Element(self.ctx, self.ctx._pow_tuple(self.coeffs, e))

    def frobenius(self, j: int = 1) -> Element:
        """x^(q^j), via the precomputed Frobenius matrix."""
        return Element(self.ctx, self.ctx._frob_tuple(self.coeffs, j))

    def trace(self) -> Element:
        p = self.ctx.p
        rows = self.ctx._trace_rows
        return Element(self.ctx, tuple(sum(r * c for r, c in zip(row, self.coeffs)) % p for row in rows))

    def in_subfield(self, d: int) -> bool:
        if d < 1 or self.ctx.n % d:
            raise FieldError(f"{d} does not divide n={self.ctx.n}")
        return self.frobenius(d) == self

    def __int__(self):
        p = self.ctx.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    __index__ = __int__

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ctx.key == other.ctx.key and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.coeffs == self.ctx.const(int(other)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.coeffs))

    def __repr__(self):
        return f"Element({int(self)} in F_{self.ctx.p}^{self.ctx.degree})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(reversed(terms)) or "0"


# ------------------------------------------------------------------
# Functional surface mirroring the operations table.


def arith(op: str, x: Element, y=None, ctx: FieldCtx | None = None) -> Element:
    """Apply one of add|sub|mul|neg|inv|pow."""
    if ctx is not None:
        ctx.check(x)
        if isinstance(y, Element):
            ctx.check(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown operation {op!r}")


def frobenius(x: Element, j: int = 1, ctx: FieldCtx | None = None) -> Element:
    if ctx is not None:
        ctx.check(x)
    return x.frobenius(j)


def trace(x: Element, ctx: FieldCtx | None = None) -> Element:
    if ctx is not None:
        ctx.check(x)
    return x.trace()


def is_in_subfield(x: Element, d: int, ctx: FieldCtx | None = None) -> bool:
    if ctx is not None:
        ctx.check(x)
    return x.in_subfield(d)


def enumerate_field(ctx: FieldCtx, limit: int | None = None) -> Iterator[Element]:
    """Every element once, in ascending canonical encoding."""
    return ctx.elements(limit)
