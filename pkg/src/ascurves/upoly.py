"""Ordinary univariate polynomials over a field context.

Coefficients are :class:`~ascurves.gf.Element` values of one context; a
polynomial over F_p uses the prime context ``field_create(p)``. The zero
polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

import functools
import re
from math import gcd

from .errors import FieldError, HypothesisError
from .gf import Element, FieldCtx, field_create


class UPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, coeffs, ctx: FieldCtx):
        cs = []
        for c in coeffs:
            if isinstance(c, Element):
                ctx.check(c)
                cs.append(c)
            else:
                cs.append(ctx.const(int(c)))
        while cs and not cs[-1]:
            cs.pop()
        self.ctx = ctx
        self.coeffs: tuple[Element, ...] = tuple(cs)

    @classmethod
    def from_ints(cls, values, p_or_ctx) -> UPoly:
        """Integer coefficients, little endian. Integers are prime-field constants."""
        ctx = p_or_ctx if isinstance(p_or_ctx, FieldCtx) else field_create(p_or_ctx)
        return cls([ctx.const(v) for v in values], ctx)

    @classmethod
    def monomial(cls, deg: int, ctx: FieldCtx, coeff=1) -> UPoly:
        return cls([0] * deg + [coeff], ctx)

    @classmethod
    def parse(cls, text: str, p_or_ctx) -> UPoly:
        """Parse e.g. ``"x^4+2x^2+1"`` or ``"1-x+x^2"``.

        Numeric coefficients are canonical encodings in the context (which for a
        prime field is just the residue).
        """
        ctx = p_or_ctx if isinstance(p_or_ctx, FieldCtx) else field_create(p_or_ctx)
        s = text.replace(" ", "").replace("**", "^").replace("*", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        acc: dict[int, Element] = {}
        for term in terms:
            m = re.fullmatch(r"([+-])(\d*)(x(?:\^(\d+))?)?", term)
            if not m or (not m.group(2) and not m.group(3)):
                raise ValueError(f"cannot parse term {term!r} in {text!r}")
            sign, num, xpart, exp = m.groups()
            c = ctx.from_int(int(num)) if num else ctx.one()
            if sign == "-":
                c = -c
            deg = (int(exp) if exp else 1) if xpart else 0
            acc[deg] = acc.get(deg, ctx.zero()) + c
        top = max(acc)
        return cls([acc.get(i, ctx.zero()) for i in range(top + 1)], ctx)

    # -- basic accessors

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Element:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ctx.zero()

    def lc(self) -> Element:
        if not self.coeffs:
            raise FieldError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> UPoly:
        inv = self.lc().inverse()
        return UPoly([c * inv for c in self.coeffs], self.ctx)

    def ints(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    # -- arithmetic

    def _other(self, other) -> UPoly:
        if isinstance(other, UPoly):
            if other.ctx.key != self.ctx.key:
                raise FieldError("polynomials over different fields")
            return other
        return UPoly([other], self.ctx)

    def __add__(self, other):
        o = self._other(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly([self[i] + o[i] for i in range(n)], self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.ctx)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        if self.is_zero() or o.is_zero():
            return UPoly([], self.ctx)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UPoly(out, self.ctx)

    __rmul__ = __mul__

    def scale(self, c) -> UPoly:
        return self * c

    def __divmod__(self, other):
        g = self._other(other)
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = g.degree
        inv = g.lc().inverse()
        quo = [self.ctx.zero()] * max(len(rem) - dg, 0)
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k] * inv
            if c:
                quo[k - dg] = c
                for i, gi in enumerate(g.coeffs):
                    rem[k - dg + i] = rem[k - dg + i] - c * gi
        return UPoly(quo, self.ctx), UPoly(rem[:dg], self.ctx)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.ctx.key == other.ctx.key and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == UPoly([other], self.ctx)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.coeffs))

    def __repr__(self):
        return f"UPoly({self!s} over F_{self.ctx.p}^{self.ctx.degree})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = int(self.coeffs[i])
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms)

    def to_json(self) -> list[int]:
        return self.ints()


def poly_arith(op: str, f: UPoly, g: UPoly):
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "divrem":
        return divmod(f, g)
    if op == "scale":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def poly_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def x_pow_minus_one(k: int, ctx: FieldCtx) -> UPoly:
    return UPoly([-1] + [0] * (k - 1) + [1], ctx)


def euler_phi(d: int) -> int:
    return sum(1 for s in range(1, d + 1) if gcd(s, d) == 1)


def divisors(d: int) -> list[int]:
    return [e for e in range(1, d + 1) if d % e == 0]


@functools.lru_cache(maxsize=None)
def _cyclotomic_ints(d: int, p: int) -> tuple[int, ...]:
    ctx = field_create(p)
    num = x_pow_minus_one(d, ctx)
    for e in divisors(d)[:-1]:
        num, rem = divmod(num, UPoly.from_ints(_cyclotomic_ints(e, p), ctx))
        if not rem.is_zero():
            raise AssertionError(f"Phi_{e} does not divide x^{d}-1 mod {p}")
    return tuple(num.ints())


def cyclotomic(d: int, p: int) -> UPoly:
    """Phi_d mod p by exact division of x^d - 1 by the lower cyclotomics."""
    if d < 1:
        raise ValueError("d must be positive")
    if d % p == 0:
        raise HypothesisError(f"characteristic {p} divides d={d}")
    return UPoly.from_ints(_cyclotomic_ints(d, p), p)


def check_symmetric_divisor(f: UPoly, k: int) -> bool:
    """f | x^k - 1 and a_{r-i} = a_{r+i} for i = 1..r, where deg f = 2r."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree % 2 or f.degree < 2:
        raise ValueError(f"degree {f.degree} is not of the form 2r with r >= 1")
    r = f.degree // 2
    if any(f[r - i] != f[r + i] for i in range(1, r + 1)):
        return False
    return (x_pow_minus_one(k, f.ctx) % f).is_zero()


FAMILY_KINDS = ("i", "ii", "iii", "iv", "v", "vi")


def _v_modulus(r: int) -> int:
    return 6 if r % 3 in (0, 1) else 2


def family_polynomial(kind: str, r: int, s: int = 1, p: int = 3) -> tuple[UPoly, int]:
    """Symmetric divisor of x^k - 1 from the six standard families, with its least k.

    Kinds iii and iv are f(x^s) for the kind i/ii polynomial in 2r/s + 1 terms,
    so they divide x^(2r+s) - 1 and x^(2(2r+s)) - 1 respectively.
    """
    if r < 1:
        raise HypothesisError("r must be >= 1")
    if kind == "i":
        return UPoly.from_ints([1] * (2 * r + 1), p), 2 * r + 1
    if kind == "ii":
        return UPoly.from_ints([(-1) ** i for i in range(2 * r + 1)], p), 2 * (2 * r + 1)
    if kind in ("iii", "iv"):
        if s < 1 or r % s:
            raise HypothesisError(f"s={s} must divide r={r}")
        sign = 1 if kind == "iii" else -1
        vals = [0] * (2 * r + 1)
        for i in range(2 * r // s + 1):
            vals[i * s] = sign**i
        k = 2 * r + s
        return UPoly.from_ints(vals, p), (k if kind == "iii" else 2 * k)
    if kind in ("v", "vi"):
        if r < 2:
            raise HypothesisError("kinds v and vi need r >= 2")
        sign = 1 if kind == "v" else -1
        vals = [1] + [0] + [sign**i for i in range(2, 2 * r - 1)] + [0, 1]
        return UPoly.from_ints(vals, p), _v_modulus(r) * (2 * r - 1)
    raise ValueError(f"unknown family kind {kind!r}")


def family_polynomial_stated_k(kind: str, r: int, s: int = 1) -> int:
    """The divisibility modulus exactly as printed for each family (kinds iii/iv
    differ from :func:`family_polynomial` when s > 1)."""
    if kind == "i":
        return 2 * r + 1
    if kind == "ii":
        return 2 * (2 * r + 1)
    if kind == "iii":
        return s * (2 * r + 1)
    if kind == "iv":
        return 2 * s * (2 * r + 1)
    if kind in ("v", "vi"):
        return _v_modulus(r) * (2 * r - 1)
    raise ValueError(f"unknown family kind {kind!r}")
