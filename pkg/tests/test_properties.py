"""Randomized properties driven by hypothesis."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from bralg import load_fixture
from bralg.bralgebra import lift_automorphism, multiply
from bralg.polyring import PolyRing, RingAutomorphism
from bralg.scalars import FieldSpec

C5 = FieldSpec.cyclotomic(5)
R2 = PolyRing(C5, ("z1", "z2"))
SHIFT = RingAutomorphism.from_strings(R2, ["q*z1 + z2", "z2 - 1"], ["q^4*z1 - q^4*z2 - q^4", "z2 + 1"])
CYC = load_fixture("cyclotomic_breaks").build()
LIFT = load_fixture("involution_lift").build()

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)
cyc_scalars = st.lists(fractions, min_size=4, max_size=4).map(
    lambda cs: sum((C5(c) * C5.q**k for k, c in enumerate(cs)), C5.zero))


@st.composite
def polys(draw, ring=R2, max_terms=4, max_deg=3):
    out = ring.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        exp = [draw(st.integers(0, max_deg)) for _ in ring.vars]
        out = out + ring.monomial(exp, draw(cyc_scalars) if ring.field == C5 else draw(fractions))
    return out


@st.composite
def homogeneous(draw, B):
    degree = draw(st.integers(-2, 2))
    gens = B.component(degree).groebner()
    total = B.ring.zero()
    for g in gens:
        total = total + B.ring.const(draw(st.integers(-3, 3))) * g
        if draw(st.booleans()):
            total = total + B.ring.gens()[0] * g
    return B.element({degree: total}, check=False)


@given(cyc_scalars, cyc_scalars, cyc_scalars)
def test_cyclotomic_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert C5.parse(str(a)) == a
    if not a.is_zero():
        assert (b / a) * a == b


@given(polys())
def test_polynomial_print_parse(f):
    assert R2.parse(str(f)) == f


@given(polys(), st.integers(-3, 3))
def test_automorphism_inverse(f, k):
    assert SHIFT(SHIFT(f, k), -k) == f


@given(polys(), polys())
def test_automorphism_is_ring_map(f, g):
    assert SHIFT(f * g) == SHIFT(f) * SHIFT(g)
    assert SHIFT(f + g) == SHIFT(f) + SHIFT(g)


@settings(max_examples=40, deadline=None)
@given(homogeneous(CYC), homogeneous(CYC))
def test_degree_additivity_and_membership(u, v):
    prod = multiply(u, v)
    for n in prod.degrees():
        assert n == u.degree + v.degree
        assert CYC.component(n).contains(prod.parts[n])


@settings(max_examples=40, deadline=None)
@given(homogeneous(CYC), homogeneous(CYC))
def test_domain(u, v):
    if not u.is_zero() and not v.is_zero():
        assert not multiply(u, v).is_zero()


@settings(max_examples=40, deadline=None)
@given(homogeneous(LIFT), homogeneous(LIFT))
def test_lift_is_multiplicative(u, v):
    R = LIFT.ring
    L = lift_automorphism(LIFT, RingAutomorphism.from_strings(R, ["-z"], ["-z"]), -1)
    assert L(multiply(u, v)) == multiply(L(u), L(v))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=3))
def test_rational_point_roundtrip(coords):
    Q = FieldSpec.rationals()
    R = PolyRing(Q, tuple(f"z{i}" for i in range(len(coords))))
    text = ", ".join(str(Fraction(c, 2)) for c in coords)
    assert R.parse_point(text) == tuple(Q(Fraction(c, 2)) for c in coords)
