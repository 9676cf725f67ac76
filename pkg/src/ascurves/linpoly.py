"""q-linearized polynomials  S(x) = s_0 x + s_1 x^q + ... + s_m x^(q^m)  over F_{q^n}."""

from __future__ import annotations

import numpy as np

from .errors import FieldError
from .gf import Element, FieldCtx
from .upoly import UPoly


class LinPoly:
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
    def from_pairs(cls, pairs, ctx: FieldCtx) -> LinPoly:
        """Build from (index, canonical encoding) pairs; repeated indices add."""
        pairs = list(pairs)
        top = max((i for i, _ in pairs), default=-1)
        cs = [ctx.zero()] * (top + 1)
        for i, enc in pairs:
            if i < 0:
                raise ValueError("negative q-power index")
            cs[i] = cs[i] + (enc if isinstance(enc, Element) else ctx.from_int(enc))
        return cls(cs, ctx)

    @classmethod
    def parse(cls, text: str, ctx: FieldCtx) -> LinPoly:
        """Parse ``"enc@i,enc@j,..."``, e.g. ``"1@0,2@2"`` for x + 2x^(q^2)."""
        pairs = []
        text = text.strip()
        if text in ("", "0"):
            return cls([], ctx)
        for tok in text.split(","):
            try:
                enc, idx = tok.strip().split("@")
                pairs.append((int(idx), int(enc)))
            except ValueError as exc:
                raise ValueError(f"bad coefficient token {tok!r} (expected enc@index)") from exc
        return cls.from_pairs(pairs, ctx)

    @property
    def top(self) -> int:
        """Top q-power index m; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Element:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ctx.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def to_pairs(self) -> list[tuple[int, int]]:
        return [(i, int(c)) for i, c in enumerate(self.coeffs) if c]

    def to_text(self) -> str:
        return ",".join(f"{enc}@{i}" for i, enc in self.to_pairs()) or "0"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "x" if i == 0 else f"x^(q^{i})"
                parts.append(mono if c == 1 else f"[{int(c)}]{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LinPoly({self.to_text()} over F_{self.ctx.p}^{self.ctx.degree})"

    def __eq__(self, other):
        if not isinstance(other, LinPoly):
            return NotImplemented
        return self.ctx.key == other.ctx.key and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.key, self.coeffs))

    # -- algebra

    def __add__(self, other: LinPoly) -> LinPoly:
        if other.ctx.key != self.ctx.key:
            raise FieldError("linearized polynomials over different fields")
        n = max(len(self.coeffs), len(other.coeffs))
        return LinPoly([self[i] + other[i] for i in range(n)], self.ctx)

    def __sub__(self, other: LinPoly) -> LinPoly:
        return self + other.scale(-1)

    def scale(self, a) -> LinPoly:
        return LinPoly([c * a for c in self.coeffs], self.ctx)

    def power_q(self, j: int) -> LinPoly:
        """The polynomial S(x)^(q^j) = sum s_i^(q^j) x^(q^(i+j))."""
        return LinPoly([self.ctx.zero()] * j + [c.frobenius(j) for c in self.coeffs], self.ctx)

    def compose(self, inner: LinPoly) -> LinPoly:
        """S(L(x)) as a linearized polynomial."""
        out: list[Element] = [self.ctx.zero()] * max(self.top + inner.top + 1, 0)
        for i, s in enumerate(self.coeffs):
            if not s:
                continue
            for j, l in enumerate(inner.coeffs):
                if l:
                    out[i + j] = out[i + j] + s * l.frobenius(i)
        return LinPoly(out, self.ctx)

    # -- evaluation

    def __call__(self, x: Element) -> Element:
        return lin_evaluate(self, x)

    def matrix(self) -> np.ndarray:
        """The F_p-linear map x -> S(x) on coefficient columns."""
        ctx = self.ctx
        acc = np.zeros((ctx.degree, ctx.degree), dtype=np.int64)
        for i, s in enumerate(self.coeffs):
            if s:
                acc = (acc + ctx.mul_matrix(s) @ ctx.frobenius_matrix(i)) % ctx.p
        return acc

    def evaluate_rows(self, x: np.ndarray) -> np.ndarray:
        """Evaluate on a (B, N) batch of coefficient rows."""
        return (np.asarray(x, dtype=np.int64) @ self.matrix().T) % self.ctx.p


def lin_evaluate(S: LinPoly, x: Element) -> Element:
    S.ctx.check(x)
    acc = S.ctx.zero()
    for i, s in enumerate(S.coeffs):
        if s:
            acc = acc + s * x.frobenius(i)
    return acc


def linearize(f: UPoly, ctx: FieldCtx | None = None) -> LinPoly:
    """sum a_k x^k  ->  sum a_k x^(q^k).

    ``f`` may live over the prime field of ``ctx`` (coefficients are then
    embedded as constants) or over ``ctx`` itself with coefficients in F_q.
    """
    ctx = ctx or f.ctx
    if f.ctx.key == ctx.key:
        if any(not c.in_subfield(1) for c in f.coeffs):
            raise FieldError("linearize needs coefficients in F_q")
        return LinPoly(list(f.coeffs), ctx)
    if f.ctx.degree == 1 and f.ctx.p == ctx.p:
        return LinPoly([ctx.const(int(c)) for c in f.coeffs], ctx)
    raise FieldError("cannot embed the polynomial's coefficient field")


def associate(S: LinPoly) -> UPoly:
    """Inverse of :func:`linearize`; every coefficient must lie in F_q."""
    if any(not c.in_subfield(1) for c in S.coeffs):
        raise FieldError("associate needs coefficients in F_q")
    return UPoly(list(S.coeffs), S.ctx)


def radical_polynomial(S: LinPoly) -> LinPoly:
    """Linearized polynomial whose roots in F_{q^n} form the radical of Tr(x S(x)).

        R(x) = sum_{i<m} s_{m-i}^(q^i) x^(q^i) + 2 s_0^(q^m) x^(q^m)
               + sum_{1<=i<=m} s_i^(q^m) x^(q^(m+i))

    This is the q^m-th power of sum_i (s_i x)^(q^-i) + s_i x^(q^i), the
    kernel polynomial of the polar form B(a, b) = Tr(b * (...)).
    """
    if S.is_zero():
        raise ValueError("radical polynomial of the zero polynomial")
    m = S.top
    ctx = S.ctx
    out = [ctx.zero()] * (2 * m + 1)
    for i in range(m):
        out[i] = S[m - i].frobenius(i)
    out[m] = S[0].frobenius(m) * 2
    for i in range(1, m + 1):
        out[m + i] = S[i].frobenius(m)
    return LinPoly(out, ctx)
