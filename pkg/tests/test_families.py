import pytest

from ascurves.curve import MAXIMAL, MINIMAL, Curve, classify, genus
from ascurves.errors import HypothesisError
from ascurves.families import (
    NOT_APPLICABLE, FamilySpec, cor_family, cor_pattern, cor_seed_admissible, minimal_criterion_check, prop1_check, thm1_find_c,
    thm1_reduce, thm1_system_check, thm41_curve, thm42_curve, thm51_curve, thm52_curve, verify,
)
from ascurves.gf import field_create
from ascurves.linpoly import LinPoly
from ascurves.quadform import radical_dimension
from ascurves.upoly import UPoly


def nonzero_seeds(q, m):
    ctx = field_create(q, 1, 2 * m)
    return [int(c) for c in ctx.subfield_codes(m) if c]


def test_cor1_all_seeds_maximal():
    for seed in nonzero_seeds(3, 3):
        rep = classify(cor_family("cor1", 3, 3, seed))
        assert rep.verdict == MAXIMAL and rep.N == 1216 and rep.w == 4


def test_cor2_all_seeds_minimal():
    seeds = nonzero_seeds(5, 3)
    assert len(seeds) == 124
    for seed in seeds:
        rep = classify(cor_family("cor2", 5, 3, seed))
        assert rep.verdict == MINIMAL and rep.N == 3126


def test_cor3_seed_admissibility():
    # Seeds with a (q+1)-th root in F_{q^2m} give Minimal with w = 2m-2;
    # the pattern built from any other seed is nondegenerate (w = 0).
    q, m = 5, 2
    ctx = field_create(q, 1, 2 * m)
    good = bad = 0
    for code in nonzero_seeds(q, m):
        s = ctx(code)
        if cor_seed_admissible("cor3", q, m, s):
            rep = classify(cor_family("cor3", q, m, code))
            assert (rep.verdict, rep.w, rep.N) == (MINIMAL, 2, 126)
            good += 1
        else:
            with pytest.raises(HypothesisError):
                cor_family("cor3", q, m, code)
            rep = classify(Curve(LinPoly(cor_pattern("cor3", q, m, s), ctx)))
            assert rep.w == 0 and rep.verdict != MINIMAL
            bad += 1
    assert (good, bad) == (8, 16)


def test_cor_degenerate_m1():
    for q in (3, 7, 11):
        for seed in range(1, q):
            assert classify(cor_family("cor1", q, 1, seed)).verdict == MAXIMAL


def test_cor_rejections():
    with pytest.raises(HypothesisError):
        cor_family("cor1", 5, 3, 1)
    with pytest.raises(HypothesisError):
        cor_family("cor1", 3, 2, 1)
    with pytest.raises(HypothesisError):
        cor_family("cor3", 5, 3, 1)
    with pytest.raises(HypothesisError):
        cor_family("cor1", 3, 3, 0)
    ctx = field_create(3, 1, 6)
    outside = next(int(x) for x in ctx.elements() if not x.in_subfield(3))
    with pytest.raises(HypothesisError):
        cor_family("cor1", 3, 3, outside)


def test_prop1_examples():
    ctx = field_create(3, 1, 2)
    for e in ctx.elements():
        if e * e == -1:
            S = LinPoly([0, e], ctx)
            assert prop1_check(S, 1)
            assert classify(Curve(S)).N == 28
    assert not prop1_check(LinPoly([0, 1], ctx), 1)
    assert not prop1_check(LinPoly([1, 1], ctx), 1)
    with pytest.raises(HypothesisError):
        prop1_check(LinPoly([0, 1], ctx), 2)


def test_thm1_on_cor1():
    S = cor_family("cor1", 3, 3, 1).S
    c = thm1_find_c(S)
    assert c is not None and c * c == -1
    R = thm1_reduce(S, c)
    assert prop1_check(R, 3)
    assert thm1_find_c(cor_family("cor2", 5, 3, 1).S) is None


def test_thm1_consistency_with_classification(rng):
    ctx = field_create(3, 1, 6)
    seen = {True: 0, False: 0}
    samples = [cor_family("cor1", 3, 3, s).S for s in nonzero_seeds(3, 3)[:5]]
    for _ in range(25):
        cs = [ctx(rng.randrange(1, ctx.order)), ctx(rng.randrange(ctx.order)), ctx(rng.randrange(1, ctx.order))]
        samples.append(LinPoly(cs, ctx))
    for S in samples:
        c = thm1_find_c(S)
        maximal = classify(Curve(S)).verdict == MAXIMAL
        assert (c is not None) == maximal
        seen[maximal] += 1
        if c is not None:
            assert thm1_system_check(S, c)
            assert prop1_check(thm1_reduce(S, c), 3)
    assert seen[True] and seen[False]


def test_thm1_reduce_linear_case(rng):
    ctx = field_create(3, 1, 2)
    for _ in range(20):
        s0, c = ctx(rng.randrange(1, 9)), ctx(rng.randrange(1, 9))
        R = thm1_reduce(LinPoly([s0], ctx), c)
        expected = LinPoly([c * s0 * c + s0.frobenius(-1), c * s0 + c * s0], ctx)
        assert R == expected


def test_thm1_reduce_scales(rng):
    ctx = field_create(5, 1, 4)
    S = LinPoly([ctx(rng.randrange(1, ctx.order)), ctx(rng.randrange(1, ctx.order))], ctx)
    c = ctx(rng.randrange(1, ctx.order))
    for a in range(1, 5):
        assert thm1_reduce(S.scale(a), c) == thm1_reduce(S, c).scale(a)


def test_thm1_rejections():
    ctx = field_create(3, 1, 6)
    S = cor_family("cor1", 3, 3, 1).S
    with pytest.raises(HypothesisError):
        thm1_system_check(S, ctx.zero())
    with pytest.raises(HypothesisError):
        thm1_find_c(LinPoly([0, 0, 1], ctx))
    with pytest.raises(HypothesisError):
        thm1_reduce(S, ctx.zero())


def test_minimal_criterion():
    r = minimal_criterion_check(LinPoly.parse("1@1,1@3", field_create(3, 1, 8)), 1, 4)
    assert (r.verdict, r.w) == (MINIMAL, 6)
    r = minimal_criterion_check(LinPoly.parse("1@2,1@3,1@4", field_create(3, 1, 12)), 2, 6)
    assert (r.verdict, r.w) == (MINIMAL, 8)
    r = minimal_criterion_check(LinPoly.parse("1@0", field_create(3, 1, 2)), 1, 1)
    assert r.verdict == NOT_APPLICABLE
    r = minimal_criterion_check(LinPoly.parse("1@0,1@3", field_create(3, 1, 8)), 1, 4)
    assert r.verdict == NOT_APPLICABLE
    rep = classify(Curve(LinPoly.parse("1@1,1@3", field_create(3, 1, 8))))
    assert rep.N == 2188 and rep.verdict == MINIMAL


def test_thm41():
    c = thm41_curve(3, 4, 4, 8)
    assert c.S.to_text() == "1@1,1@3"
    rep = classify(c)
    assert (rep.N, rep.w, rep.verdict) == (2188, 6, MINIMAL)
    rep = classify(thm41_curve(5, 4, 4, 8))
    assert (rep.w, rep.verdict) == (6, MINIMAL)
    with pytest.raises(HypothesisError):
        thm41_curve(3, 2, 4, 8)
    with pytest.raises(HypothesisError):
        thm41_curve(3, 3, 6, 12)  # 3 divides d
    with pytest.raises(HypothesisError):
        thm41_curve(3, 4, 4, 12)


def test_thm41_radical_dimension_large():
    # radical dimension n - 2a without counting points
    for q, d, k, n in [(3, 4, 4, 16), (5, 4, 4, 16), (5, 3, 6, 12), (7, 6, 6, 24)]:
        c = thm41_curve(q, d, k, n)
        a = (k - {3: 2, 4: 2, 6: 2}[d]) // 2
        assert radical_dimension(c.S) == n - 2 * a


def test_thm42():
    c = thm42_curve(3, 4, 4, 12)
    assert c.S.to_text() == "1@1,1@3,1@5"
    assert thm42_curve(3, 4, 4, 12, "reversed").S == c.S
    assert thm42_curve(5, 6, 6, 18, "reversed").S == thm42_curve(5, 6, 6, 18).S
    assert radical_dimension(thm42_curve(5, 6, 6, 18).S) == 18 - 6 + 2
    with pytest.raises(HypothesisError):
        thm42_curve(3, 4, 4, 4)
    with pytest.raises(HypothesisError):
        thm42_curve(3, 4, 4, 8)
    with pytest.raises(ValueError):
        thm42_curve(3, 4, 4, 12, "sideways")


@pytest.mark.parametrize("q,f,k,n", [
    (3, "x^2+x+1", 6, 12), (3, "x^2+x+1", 6, 24), (5, "1-x+x^2", 6, 12),
    (7, "x^2+x+1", 6, 24), (3, "x^4+x^3+x^2+x+1", 10, 20),
])
def test_thm51_genus_and_radical(q, f, k, n):
    poly = UPoly.parse(f, q)
    r = poly.degree // 2
    c = thm51_curve(q, poly, k, n)
    assert genus(c) == (q - 1) * q ** (n // 2 - k // 2 + r) // 2
    assert radical_dimension(c.S) == n - k + 2 * r


def test_thm51_rejections():
    with pytest.raises(HypothesisError):
        thm51_curve(3, UPoly.parse("x^2+x+1", 3), 4, 16)
    with pytest.raises(HypothesisError):
        thm51_curve(3, UPoly.parse("x^2+x+2", 3), 6, 12)


def test_thm52():
    c = thm52_curve(3, UPoly.parse("x^2+x+1", 3), 6, 6)
    assert c.S.to_text() == "2@0,1@1"
    rep = classify(c)
    assert rep.w == 2 and rep.N in (568, 892)
    rep = classify(thm52_curve(5, UPoly.parse("1-x+x^2", 5), 6, 6))
    assert rep.verdict in (MAXIMAL, MINIMAL)
    with pytest.raises(HypothesisError):
        thm52_curve(3, UPoly.parse("x^2+x+1", 3), 3, 9)
    with pytest.raises(HypothesisError):
        thm52_curve(3, UPoly.parse("x^2+x+1", 3), 6, 12)


def test_spec_roundtrip_and_negative_control():
    spec = FamilySpec("cor1", {"q": 3, "m": 3, "seed": 1})
    assert FamilySpec.from_dict(spec.to_dict()) == spec
    assert verify(spec).passed
    bad = FamilySpec("cor1", {"q": 3, "m": 3, "seed": 1, "perturb": {"index": 1, "value": 1}})
    res = verify(bad)
    assert not res.passed and res.row()["pass"] == "FAIL"
    assert res.row()["params"] == "m=3;perturb=index:1,value:1;q=3;seed=1"
