"""The quadratic form Q(x) = Tr(x S(x)) from F_{q^n} to F_q.

Zero counting runs on the F_p-coordinates of the form: with x = sum x_i z^i,
Q(x) = sum_{i<=j} A_ij x_i x_j where the A_ij lie in F_q. Q(x) = 0 exactly
when the t coordinates selected by ``ctx.base_pivots`` vanish, so N(Q) is the
number of common zeros of t quadratic forms over F_p in t*n variables.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels, _linalg
from .errors import FieldError, InvariantError
from .gf import Element
from .linpoly import LinPoly, associate, radical_polynomial
from .upoly import poly_gcd, x_pow_minus_one

METHODS = ("matrix", "gcd", "brute")

# classify_form runs the brute-force radical method only up to this size.
BRUTE_CEILING = 1 << 20
_CHUNK = 1 << 16


def eval_Q(S: LinPoly, x: Element) -> Element:
    """Tr(x * S(x)) by direct field arithmetic."""
    return (x * S(x)).trace()


def q_values(S: LinPoly, limit: int | None = None) -> np.ndarray:
    """Q over every element (row = encoding), as F_q coordinates of shape (q^n, t)."""
    ctx = S.ctx
    xs = ctx.all_vectors(limit)
    prod = ctx.vmul(xs, S.evaluate_rows(xs))
    return ctx.base_coords(ctx.vtrace(prod))


def form_matrices(S: LinPoly) -> np.ndarray:
    """Upper-triangular coefficient matrices, shape (t, N, N), of Q over F_p."""
    ctx = S.ctx
    n_ = ctx.degree
    lin = S.matrix()
    left = np.repeat(np.eye(n_, dtype=np.int64), n_, axis=0)
    right = np.tile(lin.T, (n_, 1))
    tr = ctx.vtrace(ctx.vmul(left, right))
    t_ij = ctx.base_coords(tr).reshape(n_, n_, ctx.t)
    forms = np.zeros((ctx.t, n_, n_), dtype=np.int64)
    for l in range(ctx.t):
        m = t_ij[:, :, l]
        forms[l] = np.triu(m + m.T, 1) + np.diag(np.diag(m))
    return forms % ctx.p


def count_zero_trace(
    S: LinPoly, *, workers: int = 1, limit: int | None = None, kernel=None
) -> int:
    """N(Q) = #{x in F_{q^n} : Tr(x S(x)) = 0}, by exhaustive enumeration.

    The enumeration range is split into ``workers`` disjoint blocks whose
    counts are summed; ``kernel`` overrides the compiled/numpy choice.
    """
    ctx = S.ctx
    ctx.check_enumerable(limit)
    if S.is_zero():
        return ctx.order
    forms = form_matrices(S)
    kernel = kernel or _kernels.count_form_zeros
    outer = ctx.p ** (ctx.degree - 1)
    workers = max(1, min(int(workers), outer))
    bounds = [outer * k // workers for k in range(workers + 1)]
    if workers == 1:
        return kernel(forms, ctx.p, 0, outer)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda k: kernel(forms, ctx.p, bounds[k], bounds[k + 1]), range(workers))
        return sum(parts)


def count_zero_trace_pointwise(S: LinPoly, limit: int | None = None) -> int:
    """Same count from the table of Q values (independent of the form matrices)."""
    return int((q_values(S, limit) == 0).all(axis=1).sum())


def predicted_counts(q: int, n: int, w: int) -> tuple[int, ...]:
    """Admissible N(Q) for a form on F_q^n with radical dimension w.

    Odd codimension n - w forces q^(n-1); even codimension allows
    q^(n-1) + e (q-1) q^((n+w)/2 - 1) for e = +1 or -1 (only + when w = n).
    """
    if (n - w) % 2:
        return (q ** (n - 1),)
    delta = (q - 1) * q ** ((n + w) // 2 - 1)
    if w == n:
        return (q ** (n - 1) + delta,)
    return (q ** (n - 1) + delta, q ** (n - 1) - delta)


def radical_roots(S: LinPoly, limit: int | None = None) -> np.ndarray:
    """Encodings of the roots in F_{q^n} of the radical polynomial."""
    ctx = S.ctx
    ctx.check_enumerable(limit)
    if S.is_zero():
        return np.arange(ctx.order, dtype=np.int64)
    mat = radical_polynomial(S).matrix().T
    roots = []
    for start in range(0, ctx.order, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, ctx.order), dtype=np.int64)
        vals = (ctx.decode(codes) @ mat) % ctx.p
        roots.append(codes[~vals.any(axis=1)])
    return np.concatenate(roots)


def bilinear_radical(S: LinPoly, limit: int | None = None) -> np.ndarray:
    """{a : Q(a+b) - Q(a) - Q(b) = 0 for all b}, straight from a table of Q."""
    ctx = S.ctx
    qv = q_values(S, limit)
    digits = ctx.all_vectors(limit)
    p = ctx.p
    out = []
    for a in range(ctx.order):
        sums = ctx.encode((digits[a] + digits) % p)
        pol = (qv[sums] - qv[a] - qv) % p
        if not pol.any():
            out.append(a)
    return np.array(out, dtype=np.int64)


def _log_exact(count: int, base: int) -> int:
    w = round(math.log(count, base)) if count > 1 else 0
    if base**w != count:
        raise InvariantError(f"kernel size {count} is not a power of {base}")
    return w


def radical_dimension(S: LinPoly, method: str = "matrix", limit: int | None = None) -> int:
    """F_q-dimension of the radical of Tr(x S(x))."""
    ctx = S.ctx
    if S.is_zero():
        return ctx.n
    if method == "matrix":
        r = _linalg.rank(radical_polynomial(S).matrix(), ctx.p)
        kernel_dim = ctx.degree - r
        if kernel_dim % ctx.t:
            raise InvariantError(f"kernel F_p-dimension {kernel_dim} not divisible by t={ctx.t}")
        return kernel_dim // ctx.t
    if method == "gcd":
        assoc = associate(radical_polynomial(S))
        return poly_gcd(assoc, x_pow_minus_one(ctx.n, ctx)).degree
    if method == "brute":
        return _log_exact(len(radical_roots(S, limit)), ctx.q)
    raise ValueError(f"unknown method {method!r}")


def gcd_applicable(S: LinPoly) -> bool:
    if S.is_zero():
        return True
    return all(c.in_subfield(1) for c in radical_polynomial(S).coeffs)


@dataclass(frozen=True)
class FormReport:
    p: int
    t: int
    n: int
    S: str
    w: int
    nq: int | None
    sign: str | None
    candidates: tuple[int, ...]
    methods: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["candidates"] = list(self.candidates)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def classify_form(
    S: LinPoly, *, count: bool = True, workers: int = 1, limit: int | None = None
) -> FormReport:
    """Radical dimension by every applicable method plus N(Q) and its sign.

    Raises InvariantError when methods disagree or the count is not one of
    the values admitted by the radical dimension.
    """
    ctx = S.ctx
    methods = {"matrix": radical_dimension(S, "matrix")}
    if gcd_applicable(S):
        methods["gcd"] = radical_dimension(S, "gcd")
    brute_cap = min(BRUTE_CEILING, limit if limit is not None else _enum_limit())
    if ctx.order <= brute_cap:
        methods["brute"] = radical_dimension(S, "brute", limit)
    if len(set(methods.values())) != 1:
        raise InvariantError(f"radical dimension methods disagree: {methods}")
    w = methods["matrix"]
    if not S.is_zero() and w > 2 * S.top:
        raise InvariantError(f"radical dimension {w} exceeds 2m = {2 * S.top}")
    cands = predicted_counts(ctx.q, ctx.n, w)
    nq = sign = None
    if count:
        nq = count_zero_trace(S, workers=workers, limit=limit)
        if nq not in cands:
            raise InvariantError(f"N(Q)={nq} not among predicted {cands} for w={w}")
        if len(cands) == 1 and (ctx.n - w) % 2:
            sign = "0"
        else:
            sign = "+" if nq == cands[0] else "-"
    return FormReport(ctx.p, ctx.t, ctx.n, S.to_text(), w, nq, sign, cands, methods)


def _enum_limit() -> int:
    from .gf import get_enum_ceiling

    return get_enum_ceiling()
