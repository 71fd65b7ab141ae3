from __future__ import annotations

import random

import pytest
import sympy

from bralg.groebner import Ideal, groebner_basis, ideal_equal, ideal_product, ideal_sum, is_sigma_stable, sigma_image
from bralg.parsing import ParseError
from bralg.polyring import (
    ArityMismatch,
    AutomorphismError,
    PolyRing,
    RingAutomorphism,
    RingMismatch,
    apply_automorphism,
    evaluate,
)
from bralg.scalars import FieldSpec

Q = FieldSpec.rationals()
C3 = FieldSpec.cyclotomic(3)


@pytest.fixture
def R1():
    return PolyRing(Q, ("z",))


@pytest.fixture
def R2():
    return PolyRing(Q, ("z1", "z2"))


@pytest.fixture
def C2():
    return PolyRing(C3, ("z1", "z2"))


def rand_poly(R, rng, terms=3, deg=3):
    out = R.zero()
    for _ in range(terms):
        exp = [rng.randint(0, deg) for _ in R.vars]
        out = out + R.monomial(exp, rng.randint(-5, 5))
    return out


# -- parsing and printing


def test_parse_print_roundtrip(C2):
    rng = random.Random(1)
    for _ in range(50):
        f = rand_poly(C2, rng).scale(C3.q + 2)
        assert C2.parse(str(f)) == f
    assert C2.parse("(z1 - 1)*(z1 + 1)") == C2.parse("z1^2 - 1")
    assert str(C2.parse("q^3*z1")) == "z1"


def test_parse_errors(R2):
    for bad in ("z3", "z1 +", "(z1", "z1 ^ x"):
        with pytest.raises(ParseError):
            R2.parse(bad)


def test_distinct_variables_required():
    with pytest.raises(ValueError):
        PolyRing(Q, ("z", "z"))


# -- automorphisms


def test_apply_shift(R1):
    sigma = RingAutomorphism.from_strings(R1, ["z - 1"], ["z + 1"])
    assert apply_automorphism(sigma, R1.parse("z^2"), 1) == R1.parse("(z - 1)^2")
    assert apply_automorphism(sigma, R1.parse("z^2"), 3) == R1.parse("(z - 3)^2")
    assert apply_automorphism(sigma, R1.parse("z^2"), -2) == R1.parse("(z + 2)^2")


def test_apply_scaling_fixes_product(C2):
    sigma = RingAutomorphism.from_strings(C2, ["q*z1", "q^2*z2"], ["q^2*z1", "q*z2"])
    assert sigma(C2.parse("z1*z2")) == C2.parse("z1*z2")
    assert sigma.is_identity_power(3)
    assert not sigma.is_identity_power(1)


def test_power_zero_is_identity(R2):
    sigma = RingAutomorphism.from_strings(R2, ["z1 + z2", "z2"], ["z1 - z2", "z2"])
    f = R2.parse("z1^2*z2 - 3")
    assert apply_automorphism(sigma, f, 0) == f


def test_bad_inverse_names_variable(R2):
    with pytest.raises(AutomorphismError) as err:
        RingAutomorphism.from_strings(R2, ["z1 - 1", "z2 + 1"], ["z1 + 1", "z2 + 2"])
    assert "z2" in str(err.value)


def test_ring_mismatch(R1, R2):
    sigma = RingAutomorphism.identity(R1)
    with pytest.raises(RingMismatch):
        sigma(R2.parse("z1"))


def test_inverse_roundtrip_random(R2):
    rng = random.Random(3)
    sigma = RingAutomorphism.from_strings(R2, ["z1 + 2*z2 - 1", "z2 + 3"], ["z1 - 2*z2 + 7", "z2 - 3"])
    for _ in range(30):
        f = rand_poly(R2, rng)
        assert sigma(sigma(f, -1), 1) == f
        k = rng.randint(-3, 3)
        assert sigma(sigma(f, k), -k) == f


# -- evaluation


def test_evaluate_at_orbit_point(C2):
    q = C3.q
    assert evaluate(C2.parse("z1 - 1"), (q, q**2)) == q - 1
    assert evaluate(C2.parse("z2 - 1"), (q, q**2)) == q**2 - 1
    f = C2.parse("3*z1^2 - z2 + 5")
    assert evaluate(f, (C3.zero, C3.zero)) == C3(5)
    with pytest.raises(ArityMismatch):
        evaluate(f, (q,))


# -- Groebner bases and ideals


def test_groebner_examples(R1, R2):
    assert Ideal(R1, [R1.parse("z^2 - z"), R1.parse("z")]).groebner() == (R1.parse("z"),)
    gens = [R2.parse("z1 - 1"), R2.parse("z2 - 1")]
    assert set(Ideal(R2, gens).groebner()) == set(gens)
    lex = R2.with_order("lex")
    lex_gens = [lex.parse("z1 - 1"), lex.parse("z2 - 1")]
    assert set(Ideal(lex, lex_gens).groebner()) == set(lex_gens)
    assert Ideal.unit(R2).groebner() == (R2.one(),)


def test_membership_examples(R1, R2):
    I = Ideal(R1, [R1.parse("z")])
    f = R1.parse("z^2 - z")
    assert I.contains(f)
    assert I.certificate(f) == [R1.parse("z - 1")]

    K = Ideal(R2, [R2.parse("z1 - 1"), R2.parse("z2 + 1")])
    assert K.certificate(R2.parse("z1 + z2")) == [R2.one(), R2.one()]
    assert not Ideal(R2, [R2.parse("z1"), R2.parse("z2")]).contains(R2.one())
    assert Ideal(R2, [R2.parse("z1"), R2.parse("z2")]).certificate(R2.one()) is None


def test_products_and_sums(R1, C2):
    assert ideal_equal(ideal_product(Ideal(R1, ["z"]), Ideal(R1, [R1.parse("z - 1")])), Ideal(R1, [R1.parse("z^2 - z")]))
    I = Ideal(C2, [C2.parse("z1 - 1"), C2.parse("z2 - 1")])
    K = Ideal(C2, [C2.parse("z1 - q^2"), C2.parse("z2 - q")])
    assert ideal_product(I, Ideal.unit(C2)) == I
    assert ideal_product(I, K).contains(C2.parse("(z1 - 1)*(z2 - q)"))
    assert ideal_sum(I, K).is_unit()


def test_principal(R1, R2):
    assert Ideal(R2, [R2.parse("z1")]).is_principal() == R2.parse("z1")
    assert Ideal(R2, [R2.parse("z1 - 1"), R2.parse("z2 + 1")]).is_principal() is None
    assert Ideal(R1, [R1.parse("z^2 - z"), R1.parse("z")]).is_principal() == R1.parse("z")


def test_sigma_stability(R2):
    sigma = RingAutomorphism.from_strings(R2, ["z1 - 1", "z2 + 1"], ["z1 + 1", "z2 - 1"])
    assert is_sigma_stable(sigma, Ideal(R2, [R2.parse("z1 + z2")]))
    I = Ideal(R2, [R2.parse("z1")])
    assert sigma_image(sigma, I) == Ideal(R2, [R2.parse("z1 - 1")])
    assert not is_sigma_stable(sigma, I)
    assert is_sigma_stable(RingAutomorphism.identity(R2), I)


def _random_ideal(R, rng, n=2):
    return Ideal(R, [rand_poly(R, rng, terms=3, deg=2) for _ in range(n)])


def test_groebner_properties(R2):
    rng = random.Random(5)
    for _ in range(25):
        I = _random_ideal(R2, rng, rng.randint(1, 3))
        gb = I.groebner()
        assert Ideal(R2, gb).groebner() == gb
        for g in I.gens:
            assert I.contains(g)
        combo = sum((rand_poly(R2, rng, 2, 2) * g for g in I.gens), R2.zero())
        cert = I.certificate(combo)
        assert cert is not None
        assert sum((r * g for r, g in zip(cert, I.gens)), R2.zero()) == combo
        basis, cof = I.groebner_cofactors()
        for b, row in zip(basis, cof):
            assert sum((r * g for r, g in zip(row, I.gens)), R2.zero()) == b


def test_groebner_matches_sympy(R2):
    # independent oracle: sympy's reduced grevlex basis over QQ, made monic
    rng = random.Random(9)
    z1, z2 = sympy.symbols("z1 z2")
    for _ in range(20):
        I = _random_ideal(R2, rng, rng.randint(1, 3))
        exprs = [sympy.sympify(str(g).replace("^", "**")) for g in I.gens]
        G = sympy.groebner(exprs, z1, z2, order="grevlex", domain=sympy.QQ)
        theirs = {R2.parse(str(g).replace("**", "^")).monic() for g in G.exprs}
        assert set(I.groebner()) == theirs


def test_product_laws(R2):
    rng = random.Random(13)
    sigma = RingAutomorphism.from_strings(R2, ["z1 + z2", "z2 - 1"], ["z1 - z2 - 1", "z2 + 1"])
    for _ in range(10):
        I, K, L = (_random_ideal(R2, rng, 1) for _ in range(3))
        assert I * K == K * I
        assert (I * K) * L == I * (K * L)
        assert (I * K).image(sigma) == I.image(sigma) * K.image(sigma)
