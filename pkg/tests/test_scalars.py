from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bralg.scalars import (
    DivisionByZero,
    FieldSpec,
    MixedFields,
    cyclotomic_polynomial,
    is_prime,
    parse_field_spec,
)

FIELDS = [FieldSpec.rationals(), FieldSpec.prime(7), FieldSpec.prime(101), FieldSpec.cyclotomic(3),
          FieldSpec.cyclotomic(5), FieldSpec.cyclotomic(4)]


def rand_elem(F, rng):
    if F.kind == "Cyc":
        out = F.zero
        for k in range(F.degree):
            out = out + F(Fraction(rng.randint(-9, 9), rng.randint(1, 4))) * F.q**k
        return out
    return F(Fraction(rng.randint(-20, 20), rng.randint(1, 6))) if F.kind == "Q" else F(rng.randint(0, F.param - 1))


def test_rational_sum():
    Q = FieldSpec.rationals()
    assert Q.parse("1/3") + Q.parse("1/6") == Q.parse("1/2")


def test_root_of_unity_relations():
    F = FieldSpec.cyclotomic(3)
    q = F.q
    assert q * q**2 == F.one
    assert q**2 + q + 1 == F.zero
    assert q**3 == F.one


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 12])
def test_primitive_root_order(n):
    F = FieldSpec.cyclotomic(n)
    q = F.q
    assert q**n == F.one
    assert all(q**k != F.one for k in range(1, n))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(cyclotomic_polynomial(12)) - 1 == 4


def test_cyclotomic_polynomial_product_identity():
    # x^n - 1 is the product of Phi_d over d | n
    for n in range(1, 16):
        prod = [1]
        for d in range(1, n + 1):
            if n % d == 0:
                phi = cyclotomic_polynomial(d)
                out = [0] * (len(prod) + len(phi) - 1)
                for i, a in enumerate(prod):
                    for j, b in enumerate(phi):
                        out[i + j] += a * b
                prod = out
        assert prod == [-1] + [0] * (n - 1) + [1]


def test_primes():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
    with pytest.raises(ValueError):
        FieldSpec.prime(9)


def test_errors():
    Q, P = FieldSpec.rationals(), FieldSpec.prime(5)
    with pytest.raises(DivisionByZero):
        Q.one / Q.zero
    with pytest.raises(DivisionByZero):
        P.zero.inverse()
    with pytest.raises(MixedFields):
        Q.one + P.one


def test_prime_field_arithmetic():
    P = FieldSpec.prime(7)
    assert P(3) * P(5) == P(1)
    assert P(3) / P(5) == P(2)
    assert P(-1) == P(6)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_field_axioms(F):
    rng = random.Random(7)
    for _ in range(60):
        a, b, c = (rand_elem(F, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a - a == F.zero
        if not a.is_zero():
            assert a * a.inverse() == F.one
            assert (b / a) * a == b


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_print_parse_roundtrip(F):
    rng = random.Random(11)
    for _ in range(50):
        a = rand_elem(F, rng)
        assert F.parse(str(a)) == a


def test_field_spec_text():
    for text in ("rationals", "prime 7", "cyclotomic 3"):
        spec = parse_field_spec(text)
        assert parse_field_spec(str(spec)) == spec
    with pytest.raises(ValueError):
        parse_field_spec("reals")
