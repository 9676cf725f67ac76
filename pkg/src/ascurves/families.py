"""Explicit maximal and minimal curve families, and checkers for their criteria.

Every generator returns a :class:`~ascurves.curve.Curve`; :class:`FamilySpec`
bundles a generator call with the verdict, radical dimension and genus that
the corresponding theorem asserts, so that :func:`verify` can confront the
claim with an exhaustive count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .curve import MAXIMAL, MINIMAL, Curve, CurveReport, classify, genus
from .errors import HypothesisError
from .gf import Element, FieldCtx, field_create, prime_power
from .linpoly import LinPoly, linearize
from .quadform import radical_dimension
from .upoly import UPoly, check_symmetric_divisor, cyclotomic, euler_phi

EXTREMAL = "Extremal"
NOT_MAXIMAL = "NotMaximal"
NOT_APPLICABLE = "NotApplicable"

FAMILY_NAMES = ("cor1", "cor2", "cor3", "prop1", "thm41", "thm42", "thm51", "thm52")


def _ambient(q: int, n: int) -> FieldCtx:
    p, t = prime_power(q)
    return field_create(p, t, n)


def _element(seed, ctx: FieldCtx) -> Element:
    if isinstance(seed, Element):
        ctx.check(seed)
        return seed
    return ctx.from_int(int(seed))


def _lift(f: UPoly, ctx: FieldCtx) -> list[Element]:
    cs = list(linearize(f, ctx).coeffs)
    return cs + [ctx.zero()] * (f.degree + 1 - len(cs))


# ---------------------------------------------------------------- corollaries


def cor_pattern(variant: str, q: int, m: int, seed: Element) -> list[Element]:
    """Coefficients s_0..s_{m-1} of the corollary pattern built from the seed."""
    ctx = seed.ctx
    zero = ctx.zero()
    if variant in ("cor1", "cor2"):
        return [seed] + [
            zero if i % 2 else seed ** ((q**i + 1) // 2) * 2 for i in range(1, m)
        ]
    if variant == "cor3":
        return [zero if i % 2 == 0 else seed ** ((q**i + 1) // (q + 1)) for i in range(m)]
    raise ValueError(f"unknown corollary {variant!r}")


def cor_seed_admissible(variant: str, q: int, m: int, seed: Element) -> bool:
    """Nonzero seed in F_{q^m}; for cor3 it must also be a (q+1)-th power in F_{q^(2m)}.

    The cor3 radical computation pulls a (q+1)-th root of s_1 out of every
    coefficient. Seeds without one give a nondegenerate form (w = 0).
    """
    if not seed or not seed.in_subfield(m):
        return False
    if variant == "cor3":
        return seed ** ((q ** (2 * m) - 1) // (q + 1)) == 1
    return True


def cor_family(variant: str, q: int, m: int, seed) -> Curve:
    """The corollary curve over F_{q^(2m)}; the seed is s_0 (cor1, cor2) or s_1 (cor3)."""
    if variant == "cor1":
        if q % 4 != 3:
            raise HypothesisError(f"cor1 needs q = 3 (mod 4), got q={q}")
        if m % 2 == 0:
            raise HypothesisError(f"cor1 needs m odd, got m={m}")
    elif variant == "cor2":
        if q % 4 != 1:
            raise HypothesisError(f"cor2 needs q = 1 (mod 4), got q={q}")
        if m % 2 == 0:
            raise HypothesisError(f"cor2 needs m odd, got m={m}")
    elif variant == "cor3":
        if q % 4 != 1:
            raise HypothesisError(f"cor3 needs q = 1 (mod 4), got q={q}")
        if m % 2 or m < 2:
            raise HypothesisError(f"cor3 needs m even >= 2, got m={m}")
    else:
        raise ValueError(f"unknown corollary {variant!r}")
    if m < 1:
        raise HypothesisError("m must be positive")
    ctx = _ambient(q, 2 * m)
    s = _element(seed, ctx)
    if not s:
        raise HypothesisError("seed must be nonzero")
    if not s.in_subfield(m):
        raise HypothesisError(f"seed {int(s)} is not in F_(q^{m})")
    if not cor_seed_admissible(variant, q, m, s):
        raise HypothesisError(f"seed {int(s)} has no (q+1)-th root in F_(q^{2 * m})")
    return Curve(LinPoly(cor_pattern(variant, q, m, s), ctx))


# ---------------------------------------------------------------- maximality from the top coefficient


def prop1_check(S: LinPoly, m: int) -> bool:
    """s_0 = ... = s_{m-1} = 0 and s_m + s_m^(q^m) = 0 (maximality over F_{q^(2m)})."""
    if S.ctx.n != 2 * m:
        raise HypothesisError(f"ambient degree n={S.ctx.n} is not 2m={2 * m}")
    if S.top > m:
        raise HypothesisError(f"top index {S.top} exceeds m={m}")
    sm = S[m]
    if not sm:
        return False
    if any(S[i] for i in range(m)):
        return False
    return not (sm + sm.frobenius(m))


# ---------------------------------------------------------------- maximality system


def _thm1_shape(S: LinPoly) -> int:
    m = S.top + 1
    if m < 1 or S.ctx.n != 2 * m:
        raise HypothesisError(f"need S of top index m-1 over F_(q^(2m)); got top {S.top}, n={S.ctx.n}")
    if not S[0] or not S[m - 1]:
        raise HypothesisError("need s_0 * s_(m-1) != 0")
    return m


def thm1_system_check(S: LinPoly, c: Element) -> bool:
    """Whether c solves the equation system characterising maximality.

    For i = 1..m (with s_{-1} = s_m = 0):
        c^(q^i) s_i + e_i c^q s_{i-2}^q + c^(q^i + q) s_{i-1}^q + s_{i-1} = 0,
    where e_2 = 2 and e_i = 1 otherwise, together with
        c s_{m-1} + (c s_{m-1})^(q^m) = 0.
    """
    m = _thm1_shape(S)
    S.ctx.check(c)
    if not c:
        raise HypothesisError("c must be nonzero")
    zero = S.ctx.zero()

    def s(i):
        return S[i] if 0 <= i < m else zero

    cq = c.frobenius(1)
    for i in range(1, m + 1):
        ci = c.frobenius(i)
        lhs = ci * s(i) + cq * s(i - 2).frobenius(1) * (2 if i == 2 else 1)
        lhs = lhs + ci * cq * s(i - 1).frobenius(1) + s(i - 1)
        if lhs:
            return False
    cs = c * s(m - 1)
    return not (cs + cs.frobenius(m))


def _thm1_mask(S: LinPoly, cs: np.ndarray) -> np.ndarray:
    """Vectorised :func:`thm1_system_check` over rows of candidate c."""
    m = _thm1_shape(S)
    ctx = S.ctx
    p = ctx.p
    zero = ctx.zero()

    def s(i):
        return S[i] if 0 <= i < m else zero

    def times(x, a: Element):
        return (x @ ctx.mul_matrix(a).T) % p

    const = lambda a: np.broadcast_to(np.array(a.coeffs, dtype=np.int64), cs.shape)  # noqa: E731
    cq = ctx.vfrob(cs, 1)
    ok = np.ones(len(cs), dtype=bool)
    for i in range(1, m + 1):
        ci = ctx.vfrob(cs, i)
        lhs = times(ci, s(i)) + times(cq, s(i - 2).frobenius(1) * (2 if i == 2 else 1))
        lhs = lhs + times(ctx.vmul(ci, cq), s(i - 1).frobenius(1)) + const(s(i - 1))
        ok &= ~(lhs % p).any(axis=1)
    csm = times(cs, s(m - 1))
    ok &= ~((csm + ctx.vfrob(csm, m)) % p).any(axis=1)
    return ok


def thm1_find_c(S: LinPoly, limit: int | None = None) -> Element | None:
    """Smallest-encoding nonzero c solving the system, or None."""
    ctx = S.ctx
    _thm1_shape(S)
    ctx.check_enumerable(limit)
    codes = np.arange(1, ctx.order, dtype=np.int64)
    hits = codes[_thm1_mask(S, ctx.decode(codes))]
    if hits.size == 0:
        return None
    c = ctx.from_int(int(hits[0]))
    if not thm1_system_check(S, c):
        raise AssertionError("vectorised and scalar system checks disagree")
    return c


def thm1_reduce(S: LinPoly, c: Element) -> LinPoly:
    """R(x) = c S(x^q + cx) + D(x) + c s_0 x^q  with  D(x)^q = S(x^q + cx) - c s_0 x."""
    ctx = S.ctx
    ctx.check(c)
    if not c:
        raise HypothesisError("c must be nonzero")
    shifted = S.compose(LinPoly([c, 1], ctx))
    d_q = shifted - LinPoly([c * S[0]], ctx)
    if d_q[0]:
        raise AssertionError("D(x)^q has a linear term")
    d = LinPoly([coef.frobenius(-1) for coef in d_q.coeffs[1:]], ctx)
    return shifted.scale(c) + d + LinPoly([0, c * S[0]], ctx)


# ---------------------------------------------------------------- minimality criterion


@dataclass(frozen=True)
class CriterionResult:
    verdict: str
    w: int | None
    expected_w: int
    reason: str = ""


def minimal_criterion_check(S: LinPoly, k: int, m: int) -> CriterionResult:
    """Minimal when the support lies in [k, m-k] and the radical has dimension 2m-2k."""
    expected = 2 * m - 2 * k

    def na(reason: str, w=None) -> CriterionResult:
        return CriterionResult(NOT_APPLICABLE, w, expected, reason)

    if k < 1:
        return na("k must be >= 1")
    if m < 2 * k:
        return na(f"m={m} < 2k={2 * k}")
    if S.ctx.n != 2 * m:
        return na(f"ambient degree n={S.ctx.n} is not 2m={2 * m}")
    supp = S.support()
    if not supp or min(supp) < k or max(supp) > m - k:
        return na(f"support {supp} not within [{k}, {m - k}]")
    if not S[k] or not S[m - k]:
        return na("need s_k * s_(m-k) != 0")
    w = radical_dimension(S, "matrix")
    if w != expected:
        return na(f"radical dimension {w} != {expected}", w)
    return CriterionResult(MINIMAL, w, expected)


# ---------------------------------------------------------------- cyclotomic


def _phi_coeffs(d: int, p: int) -> list[int]:
    return cyclotomic(d, p).ints()


def thm41_curve(q: int, d: int, k: int, n: int) -> Curve:
    """y^q - y = x sum_{j < n/2k} phi_d(x)^(q^(a + kj)), with phi(d) + 2a = k."""
    p, _ = prime_power(q)
    if d <= 2:
        raise HypothesisError(f"need d > 2, got d={d}")
    if k % d:
        raise HypothesisError(f"d={d} must divide k={k}")
    if n % (2 * k):
        raise HypothesisError(f"2k={2 * k} must divide n={n}")
    if d % p == 0:
        raise HypothesisError(f"characteristic {p} divides d={d}")
    a2 = k - euler_phi(d)
    if a2 < 2 or a2 % 2:
        raise HypothesisError(f"need phi(d) + 2a = k with integer a >= 1; k - phi(d) = {a2}")
    a = a2 // 2
    ctx = _ambient(q, n)
    coeffs = _phi_coeffs(d, p)
    top = a + k * (n // (2 * k) - 1) + len(coeffs) - 1
    s = [0] * (top + 1)
    for j in range(n // (2 * k)):
        for l, al in enumerate(coeffs):
            s[l + a + k * j] += al
    return Curve(LinPoly(s, ctx))


def thm42_curve(q: int, d: int, k: int, n: int, c_interp: str = "direct") -> Curve:
    """Curve whose form has radical dimension n - k + phi(d) over F_{q^n}.

    ``c_interp`` maps the tail coefficients: "direct" uses c_i = a_i,
    "reversed" uses c_i = a_{phi(d) - i} (a_i are the coefficients of Phi_d).
    """
    p, _ = prime_power(q)
    if k % 2:
        raise HypothesisError(f"k must be even, got k={k}")
    if d < 2 or k % d:
        raise HypothesisError(f"need d >= 2 dividing k; got d={d}, k={k}")
    if d % p == 0:
        raise HypothesisError(f"characteristic {p} divides d={d}")
    phi = euler_phi(d)
    if phi % 2:
        raise HypothesisError(f"phi(d)={phi} is odd")
    if n <= k:
        raise HypothesisError(f"need n > k; got n={n}, k={k}")
    if n % (2 * k) != k:
        raise HypothesisError(f"need n = k (mod 2k); got n={n}, k={k}")
    if c_interp not in ("direct", "reversed"):
        raise ValueError(f"unknown c_interp {c_interp!r}")
    a = (2 * k - phi) // 2
    ctx = _ambient(q, n)
    coeffs = _phi_coeffs(d, p)
    c = coeffs if c_interp == "direct" else coeffs[::-1]
    reps = (n - k) // (2 * k)
    top = max(a + k * (reps - 1) + phi, k - a)
    s = [ctx.zero()] * (top + 1)
    for j in range(reps):
        for l, al in enumerate(coeffs):
            s[l + a + k * j] += al
    for i in range(phi // 2):
        s[k - a - i] += c[i]
    s[0] += ctx.const(c[phi // 2]) / 2
    return Curve(LinPoly(s, ctx))


# ---------------------------------------------------------------- symmetric divisors


def _check_divisor(f: UPoly, k: int) -> int:
    if f.degree < 2 or f.degree % 2:
        raise HypothesisError(f"f must have even degree 2r >= 2, got {f.degree}")
    if not check_symmetric_divisor(f, k):
        raise HypothesisError(f"f={f} is not a symmetric divisor of x^{k}-1")
    return f.degree // 2


def thm51_curve(q: int, f: UPoly, k: int, n: int) -> Curve:
    """y^q - y = x sum_{j < n/2k} G(x)^(q^(jk)), G centred on the q-power k/2."""
    if n % 2:
        raise HypothesisError(f"n must be even, got n={n}")
    if k % 4 != 2:
        raise HypothesisError(f"need k = 2 (mod 4), got k={k}")
    if (n // 2) % k:
        raise HypothesisError(f"k={k} must divide n/2={n // 2}")
    r = _check_divisor(f, k)
    if 2 * r >= k:
        raise HypothesisError(f"need deg f = {2 * r} < k = {k}")
    ctx = _ambient(q, n)
    a = _lift(f, ctx)
    h = k // 2
    g = [ctx.zero()] * (h + r + 1)
    g[h] = a[r]
    for i in range(1, r + 1):
        g[h - i] += a[r + i]
        g[h + i] += a[r + i]
    G = LinPoly(g, ctx)
    S = LinPoly([], ctx)
    for j in range(n // (2 * k)):
        S = S + G.power_q(j * k)
    return Curve(S)


def thm52_curve(q: int, f: UPoly, k: int, n: int) -> Curve:
    """y^q - y = x sum_{j<s} G~(x)^(q^(kj)) + x G(x) with n = (2s+1)k."""
    if n < 4 or n % 2:
        raise HypothesisError(f"need n even and >= 4, got n={n}")
    if n % k or (n // k) % 2 == 0:
        raise HypothesisError(f"need n = (2s+1)k; got n={n}, k={k}")
    r = _check_divisor(f, k)
    ctx = _ambient(q, n)
    a = _lift(f, ctx)
    reps = (n // k - 1) // 2
    g = [ctx.zero()] * (r + 1)
    g[0] = a[r] / 2
    for i in range(1, r + 1):
        g[i] = a[r + i]
    gt = [ctx.zero()] * (k + r + 1)
    gt[k] = a[r]
    for i in range(1, r + 1):
        gt[k - i] += a[r - i]
        gt[k + i] += a[r + i]
    Gt = LinPoly(gt, ctx)
    S = LinPoly(g, ctx)
    for j in range(reps):
        S = S + Gt.power_q(k * j)
    return Curve(S)


# ---------------------------------------------------------------- specs


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    params: dict
    curve: Curve
    expected_verdict: str
    expected_w: int | None = None
    expected_genus: int | None = None
    note: str = ""


@dataclass(frozen=True)
class FamilySpec:
    """A named construction plus its parameters; mirrors the CLI flags."""

    name: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, **self.params}

    @classmethod
    def from_dict(cls, d: dict) -> FamilySpec:
        d = dict(d)
        return cls(d.pop("name"), d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def param_text(self) -> str:
        parts = []
        for key in sorted(self.params):
            val = self.params[key]
            if isinstance(val, dict):
                val = ",".join(f"{k}:{v}" for k, v in sorted(val.items()))
            parts.append(f"{key}={val}")
        return ";".join(parts)

    def build(self) -> FamilyInstance:
        name, pr = self.name, self.params
        q = int(pr["q"])
        if name in ("cor1", "cor2", "cor3"):
            m = int(pr["m"])
            curve = cor_family(name, q, m, pr.get("seed", 1))
            inst = FamilyInstance(
                name, pr, curve, MAXIMAL if name == "cor1" else MINIMAL,
                2 * m - 2, (q - 1) * q ** (m - 1) // 2,
            )
        elif name == "prop1":
            m = int(pr["m"])
            ctx = _ambient(q, 2 * m)
            S = LinPoly.parse(str(pr["coeffs"]), ctx)
            expected = MAXIMAL if prop1_check(S, m) else NOT_MAXIMAL
            inst = FamilyInstance(name, pr, Curve(S), expected)
        elif name == "thm41":
            d, k, n = int(pr["d"]), int(pr["k"]), int(pr["n"])
            curve = thm41_curve(q, d, k, n)
            a = (k - euler_phi(d)) // 2
            inst = FamilyInstance(name, pr, curve, MINIMAL, n - 2 * a)
        elif name == "thm42":
            d, k, n = int(pr["d"]), int(pr["k"]), int(pr["n"])
            curve = thm42_curve(q, d, k, n, pr.get("c_interp", "direct"))
            inst = FamilyInstance(
                name, pr, curve, EXTREMAL, n - k + euler_phi(d),
                note=f"extremal over F_q^{n} implies Minimal over F_q^{2 * n}",
            )
        elif name in ("thm51", "thm52"):
            k, n = int(pr["k"]), int(pr["n"])
            p, _ = prime_power(q)
            f = UPoly.parse(str(pr["f"]), p)
            r = f.degree // 2
            if name == "thm51":
                curve = thm51_curve(q, f, k, n)
                g = (q - 1) * q ** (n // 2 - k // 2 + r) // 2
                inst = FamilyInstance(name, pr, curve, MINIMAL, n - k + 2 * r, g)
            else:
                curve = thm52_curve(q, f, k, n)
                inst = FamilyInstance(name, pr, curve, EXTREMAL, n - k + 2 * r)
        else:
            raise ValueError(f"unknown family {name!r}")
        if "perturb" in pr:
            inst = _perturb(inst, pr["perturb"])
        return inst


def _perturb(inst: FamilyInstance, spec: dict) -> FamilyInstance:
    """Overwrite one coefficient (negative control); expectations are kept."""
    S = inst.curve.S
    idx, enc = int(spec["index"]), int(spec["value"])
    cs = [S[i] for i in range(max(S.top + 1, idx + 1))]
    cs[idx] = S.ctx.from_int(enc)
    return FamilyInstance(
        inst.name, inst.params, Curve(LinPoly(cs, S.ctx)), inst.expected_verdict,
        inst.expected_w, inst.expected_genus, "perturbed",
    )


def verdict_matches(expected: str, verdict: str | None) -> bool:
    if expected == EXTREMAL:
        return verdict in (MAXIMAL, MINIMAL)
    if expected == NOT_MAXIMAL:
        return verdict is not None and verdict != MAXIMAL
    return verdict == expected


@dataclass(frozen=True)
class Verification:
    spec: FamilySpec
    instance: FamilyInstance
    report: CurveReport
    passed: bool
    failures: tuple[str, ...] = ()

    def row(self) -> dict:
        r = self.report
        return {
            "p": r.p, "t": r.t, "n": r.n, "family": self.spec.name,
            "params": self.spec.param_text(), "g": r.g, "w": r.w, "N": r.N,
            "lower": r.lower, "upper": r.upper, "verdict": r.verdict,
            "expected": self.instance.expected_verdict,
            "pass": "PASS" if self.passed else "FAIL",
        }


def verify(spec: FamilySpec, *, workers: int = 1, limit: int | None = None) -> Verification:
    """Build the instance, count points, and compare with the theorem's claims."""
    inst = spec.build()
    report = classify(inst.curve, workers=workers, limit=limit)
    failures = []
    if not verdict_matches(inst.expected_verdict, report.verdict):
        failures.append(f"verdict {report.verdict} != expected {inst.expected_verdict}")
    if inst.expected_w is not None and report.w != inst.expected_w:
        failures.append(f"w {report.w} != expected {inst.expected_w}")
    if inst.expected_genus is not None and genus(inst.curve) != inst.expected_genus:
        failures.append(f"genus {genus(inst.curve)} != expected {inst.expected_genus}")
    return Verification(spec, inst, report, not failures, tuple(failures))
