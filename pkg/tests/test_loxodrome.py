import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from twistlox.errors import (CausalMismatch, DegenerateDenominator, InvalidCase,
                             UnsupportedCase)
from twistlox.loxodrome import (B0_ADMISSIBLE, B0_EXCLUDED, SPECIALIZED_CASES, LoxodromeSpec,
                                b0_factor, check_b0_admissible, select_AB, slope_b0,
                                slope_case, slope_general)
from twistlox.surfaces import Family, FirstForm, TwistedSurface, causal_flags, first_form

ALL_TRIPLES = [(p, q, r) for p in (1, -1) for q in (1, -1) for r in (1, -1)]


def test_spec_validation():
    with pytest.raises(ValueError):
        LoxodromeSpec(-0.1)
    with pytest.raises(ValueError):
        LoxodromeSpec(math.nan)
    with pytest.raises(ValueError):
        LoxodromeSpec(1.0, q=0)
    assert LoxodromeSpec(1.0).branch == -1


@pytest.mark.parametrize("p, q, r, theta, A, B", [
    (1, 1, 1, math.pi / 4, math.sqrt(2) / 2, 1.0),
    (-1, 1, 1, 1.0, math.sinh(1), math.sinh(2)),
    (-1, 1, -1, 1.0, math.cosh(1), math.sinh(2)),
    (-1, -1, 1, 1.0, math.cosh(1), math.sinh(2)),
    (-1, -1, -1, 1.0, math.sinh(1), math.sinh(2)),
])
def test_select_AB_rows(p, q, r, theta, A, B):
    ab = select_AB(p, q, r, theta)
    assert ab.A == pytest.approx(A, rel=1e-15) and ab.B == pytest.approx(B, rel=1e-15)
    assert ab.W == pytest.approx(q * r - p * A * A, rel=1e-12)


@pytest.mark.parametrize("q, r", [(1, -1), (-1, 1), (-1, -1)])
def test_spacelike_surface_rejects_non_spacelike_curves(q, r):
    with pytest.raises(InvalidCase):
        select_AB(1, q, r, 0.5)


def test_slope_general_examples():
    # orthonormal spacelike patch: slope is tan(theta) on the default branch
    got = slope_general(FirstForm(1, 0, 1), LoxodromeSpec(math.pi / 4), 1, 1)
    assert got == pytest.approx(1.0, rel=1e-15)
    # timelike surface with spacelike meridian, (a + f) = 2
    got = slope_general(FirstForm(4, 0, -1), LoxodromeSpec(1.0), -1, 1)
    assert got == pytest.approx(-2 * math.tanh(1), rel=1e-15)
    assert got == pytest.approx(-1.523188, abs=1e-6)
    for F, p, r in [(FirstForm(1, 0, 1), 1, 1), (FirstForm(4, 0, -1), -1, 1)]:
        assert slope_general(F, LoxodromeSpec(0.0), p, r) == 0.0
    # with a timelike meridian and q = 1 the angle is measured by sinh, so
    # theta = 0 asks for a direction orthogonal to the meridian: 0/0
    with pytest.raises(DegenerateDenominator):
        slope_general(FirstForm(-4, 0, 1), LoxodromeSpec(0.0), -1, -1)


def test_slope_case_examples():
    assert abs(slope_case(FirstForm(1, 0, 1), LoxodromeSpec(math.pi / 4), 1, 1)) == pytest.approx(1)
    # timelike-meridian row fed with (4, 0, -1): +-2 coth(1)
    for branch in (1, -1):
        got = slope_case(FirstForm(4, 0, -1), LoxodromeSpec(1.0, 1, branch), -1, -1)
        assert got == pytest.approx(-2 * branch / math.tanh(1), rel=1e-14)
        assert abs(got) == pytest.approx(2.626, abs=1e-3)
    # timelike/timelike row with g12 = 0: -branch sqrt(-g11/g22) tanh(theta)
    F = FirstForm(-3, 0, 2)
    for branch in (1, -1):
        spec = LoxodromeSpec(0.7, -1, branch)
        want = -branch * math.sqrt(3 / 2) * math.tanh(0.7)
        assert slope_case(F, spec, -1, -1) == pytest.approx(want, rel=1e-14)
        assert slope_general(F, spec, -1, -1) == pytest.approx(want, rel=1e-14)


def test_slope_case_unsupported():
    with pytest.raises(UnsupportedCase):
        slope_case(FirstForm(4, 0, -1), LoxodromeSpec(1.0, -1), -1, 1)
    with pytest.raises(UnsupportedCase):
        slope_case(FirstForm(1, 0, 1), LoxodromeSpec(1.0, -1), 1, 1)


def test_slope_errors():
    with pytest.raises(CausalMismatch):
        slope_general(FirstForm(1, 0, 1), LoxodromeSpec(1.0), -1, 1)
    # spacelike surface: denominator g12^2 - g11 g22 cos^2 vanishes at theta = pi/2
    with pytest.raises(DegenerateDenominator):
        slope_general(FirstForm(1, 0, 1), LoxodromeSpec(math.pi / 2), 1, 1)


@st.composite
def admissible(draw, triples=SPECIALIZED_CASES):
    """Random first form whose signs match a drawn (p, q, r) triple."""
    p, q, r = draw(st.sampled_from(triples))
    g11 = r * draw(st.floats(0.05, 20))
    g12 = draw(st.floats(-10, 10))
    det = p * draw(st.floats(0.05, 20))
    g22 = (det + g12 * g12) / g11
    hi = 1.5 if p == 1 else 3.0
    theta = draw(st.floats(0.01, hi))
    branch = draw(st.sampled_from((1, -1)))
    return FirstForm(g11, g12, g22), LoxodromeSpec(theta, q, branch), p, r


def _well_posed(F, spec, p, r):
    try:
        return slope_general(F, spec, p, r)
    except DegenerateDenominator:
        return None


@settings(max_examples=1000)
@given(admissible())
def test_case_formulas_match_unified(args):
    F, spec, p, r = args
    want = _well_posed(F, spec, p, r)
    assume(want is not None)
    got = slope_case(F, spec, p, r)
    assert abs(got - want) <= 1e-12 * abs(want) or got == want


@settings(max_examples=300)
@given(admissible(triples=ALL_TRIPLES[:1] + [t for t in ALL_TRIPLES if t[0] == -1]))
def test_branch_antisymmetry(args):
    F, spec, p, r = args
    other = LoxodromeSpec(spec.theta, spec.q, -spec.branch)
    s1, s2 = _well_posed(F, spec, p, r), _well_posed(F, other, p, r)
    assume(s1 is not None and s2 is not None)
    A2 = select_AB(p, spec.q, r, spec.theta).A ** 2
    bracket = F.g12 ** 2 - spec.q * r * F.g11 * F.g22 * (-p * A2 + spec.q * r)
    want = 2 * (-p * spec.q * r * F.g11 * F.g12 * A2) / bracket
    assert s1 + s2 == pytest.approx(want, rel=1e-9, abs=1e-9 * (abs(s1) + abs(s2)))


@pytest.mark.parametrize("p, q, r, fn", [
    (1, 1, 1, math.tan),
    (-1, 1, 1, math.tanh),
    (-1, -1, 1, lambda t: 1 / math.tanh(t)),
    (-1, 1, -1, lambda t: 1 / math.tanh(t)),
    (-1, -1, -1, math.tanh),
])
@pytest.mark.parametrize("theta", [0.1, 0.5, 1.0, 1.3, 2.5])
def test_b0_factor_specializations(p, q, r, fn, theta):
    # past pi/2 the square root keeps the factor positive: |tan|
    want = abs(fn(theta)) if p == 1 else fn(theta)
    assert b0_factor(p, q, r, theta) == pytest.approx(want, rel=1e-12)


def test_b0_admissibility_partition():
    for fam in Family:
        assert set(B0_ADMISSIBLE[fam]).isdisjoint(B0_EXCLUDED[fam])
        for t in B0_ADMISSIBLE[fam]:
            check_b0_admissible(fam, *t)
        for t in B0_EXCLUDED[fam]:
            with pytest.raises(UnsupportedCase, match="excluded"):
                check_b0_admissible(fam, *t)
    with pytest.raises(UnsupportedCase, match=r"\(-1, 1, -1\)"):
        check_b0_admissible("type1", -1, 1, -1)


# (family, profiles, a, y-grid) giving each admissible triple at b = 0
B0_SETUPS = [
    ("type1", "cosh(y)", "0", 1.0, 1, (1, 1, 1)),           # f'^2 > g'^2: spacelike
    ("type1", "cosh(y)", "sinh(y)", 1.0, 1, (-1, 1, 1)),
    ("type1", "cosh(y)", "sinh(y)", 1.0, -1, (-1, -1, 1)),
    ("type2", "3*y", "cosh(y)", 2.0, 1, (1, 1, 1)),
    ("type2", "0", "sinh(y)", 1.0, 1, (-1, 1, 1)),
    ("type2", "0", "sinh(y)", 1.0, -1, (-1, -1, 1)),
    ("type3", "cosh(y)", "1", 1.0, 1, (-1, 1, -1)),
    ("type3", "cosh(y)", "1", 1.0, -1, (-1, -1, -1)),
]


@pytest.mark.parametrize("family, f, g, a, q, triple", B0_SETUPS)
@pytest.mark.parametrize("branch", [1, -1])
def test_b0_matches_unified(family, f, g, a, q, triple, branch):
    S = TwistedSurface(family, a, 0, f, g)
    spec = LoxodromeSpec(0.8, q, branch)
    checked = 0
    for y in np.linspace(-1.5, 1.5, 31):
        F = first_form(S, 0.3, y)
        fl = causal_flags(F)
        if fl.degenerate:
            continue
        assert (fl.p, q, fl.r) == triple
        want = slope_general(F, spec, fl.p, fl.r)
        got = slope_b0(S, y, spec, fl.p, fl.r)
        assert abs(got - want) <= 1e-10 * abs(want)
        checked += 1
    assert checked >= 25


def test_b0_examples():
    S = TwistedSurface("type1", 1, 0, "cosh(y)", "sinh(y)")
    for y in (-1.0, 0.0, 0.7):
        want = -(1 + math.cosh(y)) * math.tanh(1)
        assert slope_b0(S, y, LoxodromeSpec(1.0), -1, 1) == pytest.approx(want, rel=1e-14)
    S = TwistedSurface("type2", 1, 0, "0", "sinh(y)")
    assert slope_b0(S, 0.0, LoxodromeSpec(5.0), -1, 1) == pytest.approx(-math.tanh(5), rel=1e-14)
    assert abs(slope_b0(S, 0.0, LoxodromeSpec(5.0), -1, 1)) == pytest.approx(0.99991, abs=1e-5)
    S = TwistedSurface("type3", 1, 0, "cosh(y)", "1")
    got = slope_b0(S, 1.0, LoxodromeSpec(1.0), -1, -1)
    assert got == pytest.approx(-(1 + math.cosh(1)) / (math.tanh(1) * math.sinh(1)), rel=1e-14)
    assert abs(got) == pytest.approx(2.8413, abs=1e-4)


def test_b0_errors():
    with pytest.raises(ValueError):
        slope_b0(TwistedSurface("type1", 1, 0.5, "y", "0"), 0.0, LoxodromeSpec(1.0), 1, 1)
    with pytest.raises(UnsupportedCase):
        slope_b0(TwistedSurface("type3", 1, 0, "cosh(y)", "1"), 1.0, LoxodromeSpec(1.0), 1, 1)
    from twistlox.errors import DomainError
    with pytest.raises(DomainError):
        slope_b0(TwistedSurface("type1", -1, 0, "1", "y"), 0.0, LoxodromeSpec(1.0), 1, 1)


@given(st.floats(1e-6, 1e-3))
def test_small_theta_limit(theta):
    for F, p, r in [(FirstForm(1, 0, 2), 1, 1), (FirstForm(4, 0, -1), -1, 1)]:
        assert abs(slope_general(F, LoxodromeSpec(theta), p, r)) < 10 * theta
