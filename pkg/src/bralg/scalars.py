"""Exact coefficient fields: the rationals, prime fields and cyclotomic fields.

Every element is immutable and stored in a canonical form, so equality is
payload equality.  Cyclotomic elements are coefficient vectors against the
power basis ``1, q, ..., q^(phi(n)-1)`` where ``q`` is a primitive ``n``-th
root of unity, reduced modulo the ``n``-th cyclotomic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "DivisionByZero",
    "FieldElement",
    "FieldSpec",
    "MixedFields",
    "cyclotomic_polynomial",
    "is_prime",
    "parse_field_spec",
]


class DivisionByZero(ZeroDivisionError):
    pass


class MixedFields(TypeError):
    pass


# ---------------------------------------------------------------------------
# integer helpers

_SMALL_PRIME_LIMIT = 1 << 20
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    """Trial division below 2^20, deterministic Miller-Rabin above."""
    if p < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13):
        if p % small == 0:
            return p == small
    if p < _SMALL_PRIME_LIMIT:
        d = 17
        while d * d <= p:
            if p % d == 0:
                return False
            d += 2
        return True
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _intpoly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, index = degree; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


def _intpoly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    numerator = [-1] + [0] * (n - 1) + [1]
    denominator = [1]
    for d in _divisors(n)[:-1]:
        denominator = _intpoly_mul(denominator, list(_cyclotomic(d)))
    return tuple(_intpoly_divexact(numerator, denominator))


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first.

    Uses Phi_n(x) = (x^n - 1) / prod_{d | n, d < n} Phi_d(x).

    >>> cyclotomic_polynomial(3)
    (1, 1, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {n}")
    return _cyclotomic(n)


# ---------------------------------------------------------------------------
# field specifications


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "Q", "Fp" or "Cyc"
    param: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.param != 0:
                raise ValueError("the rationals take no parameter")
        elif self.kind == "Fp":
            if not is_prime(self.param):
                raise ValueError(f"{self.param} is not prime")
        elif self.kind == "Cyc":
            if self.param < 1:
                raise ValueError(f"cyclotomic index must be >= 1, got {self.param}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("Fp", p)

    @classmethod
    def cyclotomic(cls, n: int) -> FieldSpec:
        return cls("Cyc", n)

    @property
    def characteristic(self) -> int:
        return self.param if self.kind == "Fp" else 0

    @property
    def degree(self) -> int:
        """Dimension over the prime field (phi(n) for cyclotomic fields)."""
        if self.kind == "Cyc":
            return len(_cyclotomic(self.param)) - 1
        return 1

    @property
    def has_q(self) -> bool:
        return self.kind == "Cyc"

    def __str__(self) -> str:
        if self.kind == "Q":
            return "rationals"
        if self.kind == "Fp":
            return f"prime {self.param}"
        return f"cyclotomic {self.param}"

    # element constructors

    def __call__(self, value) -> FieldElement:
        return FieldElement.coerce(self, value)

    @property
    def zero(self) -> FieldElement:
        return _zero(self)

    @property
    def one(self) -> FieldElement:
        return _one(self)

    @property
    def q(self) -> FieldElement:
        """The chosen primitive n-th root of unity of a cyclotomic field."""
        if self.kind != "Cyc":
            raise ValueError(f"{self} has no distinguished root of unity")
        return _zeta(self)

    def parse(self, text: str) -> FieldElement:
        from .parsing import parse_scalar

        return parse_scalar(self, text)


def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``rationals``, ``prime <p>`` or ``cyclotomic <n>``."""
    words = text.split()
    if words == ["rationals"] or words == ["Q"]:
        return FieldSpec.rationals()
    if len(words) == 2 and words[0] in ("prime", "cyclotomic"):
        try:
            param = int(words[1])
        except ValueError:
            raise ValueError(f"bad field parameter {words[1]!r}") from None
        return FieldSpec.prime(param) if words[0] == "prime" else FieldSpec.cyclotomic(param)
    raise ValueError(f"unrecognised field {text!r}")


@lru_cache(maxsize=None)
def _zero(spec: FieldSpec) -> FieldElement:
    return FieldElement.coerce(spec, 0)


@lru_cache(maxsize=None)
def _one(spec: FieldSpec) -> FieldElement:
    return FieldElement.coerce(spec, 1)


@lru_cache(maxsize=None)
def _zeta(spec: FieldSpec) -> FieldElement:
    vec = [Fraction(0)] * spec.degree
    if spec.degree == 1:
        # phi(n) = 1 only for n = 1, 2 where q = 1, -1
        vec[0] = Fraction(-_cyclotomic(spec.param)[0])
    else:
        vec[1] = Fraction(1)
    return FieldElement(spec, tuple(vec))


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Rows x^k mod Phi_n for k = 0 .. 2 phi(n) - 2."""
    phi = _cyclotomic(n)
    deg = len(phi) - 1
    rows = []
    for k in range(2 * deg - 1):
        if k < deg:
            row = [Fraction(0)] * deg
            row[k] = Fraction(1)
        else:
            prev = rows[k - 1]
            # x * prev, then replace x^deg by -sum phi_i x^i
            top = prev[deg - 1]
            row = [Fraction(0)] + list(prev[: deg - 1])
            if top:
                for i in range(deg):
                    row[i] -= top * phi[i]
        rows.append(tuple(row))
    return tuple(rows)


# ---------------------------------------------------------------------------
# elements

Scalar = Union["FieldElement", int, Fraction]


class FieldElement:
    __slots__ = ("spec", "payload")

    def __init__(self, spec: FieldSpec, payload):
        # payload must already be canonical; use FieldSpec(...) to coerce
        self.spec = spec
        self.payload = payload

    @classmethod
    def coerce(cls, spec: FieldSpec, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.spec != spec:
                raise MixedFields(f"{value.spec} element used in {spec}")
            return value
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot coerce {value!r} into {spec}")
        if spec.kind == "Q":
            return cls(spec, Fraction(value))
        if spec.kind == "Fp":
            p = spec.param
            value = Fraction(value)
            if value.denominator % p == 0:
                raise DivisionByZero(f"denominator of {value} vanishes mod {p}")
            return cls(spec, value.numerator * pow(value.denominator, -1, p) % p)
        vec = [Fraction(0)] * spec.degree
        vec[0] = Fraction(value)
        return cls(spec, tuple(vec))

    # -- inspection

    def is_zero(self) -> bool:
        if self.spec.kind == "Cyc":
            return not any(self.payload)
        return not self.payload

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        """True when the element lies in the prime field."""
        if self.spec.kind == "Cyc":
            return not any(self.payload[1:])
        return True

    def to_fraction(self) -> Fraction:
        if self.spec.kind == "Q":
            return self.payload
        if self.spec.kind == "Fp":
            return Fraction(self.payload)
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.payload[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.payload == other.payload
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.payload == FieldElement.coerce(self.spec, other).payload
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self.payload))

    # -- arithmetic

    def _other(self, other) -> FieldElement:
        if type(other) is FieldElement:
            if other.spec is not self.spec and other.spec != self.spec:
                raise MixedFields(f"cannot combine {self.spec} with {other.spec}")
            return other
        return FieldElement.coerce(self.spec, other)

    def __add__(self, other) -> FieldElement:
        try:
            o = self._other(other)
        except MixedFields:
            raise
        except TypeError:
            return NotImplemented
        spec = self.spec
        if spec.kind == "Q":
            return FieldElement(spec, self.payload + o.payload)
        if spec.kind == "Fp":
            return FieldElement(spec, (self.payload + o.payload) % spec.param)
        return FieldElement(spec, tuple(a + b for a, b in zip(self.payload, o.payload)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        spec = self.spec
        if spec.kind == "Q":
            return FieldElement(spec, -self.payload)
        if spec.kind == "Fp":
            return FieldElement(spec, -self.payload % spec.param)
        return FieldElement(spec, tuple(-a for a in self.payload))

    def __sub__(self, other) -> FieldElement:
        try:
            o = self._other(other)
        except MixedFields:
            raise
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> FieldElement:
        return (-self) + other

    def __mul__(self, other) -> FieldElement:
        try:
            o = self._other(other)
        except MixedFields:
            raise
        except TypeError:
            return NotImplemented
        spec = self.spec
        if spec.kind == "Q":
            return FieldElement(spec, self.payload * o.payload)
        if spec.kind == "Fp":
            return FieldElement(spec, self.payload * o.payload % spec.param)
        a, b = self.payload, o.payload
        deg = len(a)
        if deg == 1:
            return FieldElement(spec, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        table = _reduction_table(spec.param)
        out = list(prod[:deg])
        for k in range(deg, 2 * deg - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(table[k]):
                    if r:
                        out[i] += c * r
        return FieldElement(spec, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise DivisionByZero(f"inverse of zero in {self.spec}")
        spec = self.spec
        if spec.kind == "Q":
            return FieldElement(spec, 1 / self.payload)
        if spec.kind == "Fp":
            return FieldElement(spec, pow(self.payload, -1, spec.param))
        return FieldElement(spec, _cyc_inverse(self.payload, spec.param))

    def __truediv__(self, other) -> FieldElement:
        try:
            o = self._other(other)
        except MixedFields:
            raise
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> FieldElement:
        return FieldElement.coerce(self.spec, other) * self.inverse()

    def __pow__(self, k: int) -> FieldElement:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = self.spec.one
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- text

    def __str__(self) -> str:
        spec = self.spec
        if spec.kind == "Q":
            return str(self.payload)
        if spec.kind == "Fp":
            return str(self.payload)
        terms = []
        for k in range(len(self.payload) - 1, -1, -1):
            c = self.payload[k]
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            terms.append((c < 0, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def needs_parens(self) -> bool:
        """True when printing as a product factor requires parentheses."""
        if self.spec.kind != "Cyc":
            return False
        return sum(1 for c in self.payload if c) > 1

    def __repr__(self) -> str:
        return f"FieldElement({self.spec}, {self})"


def _poly_trim(a: list[Fraction]) -> list[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    if len(a) < len(b):
        return [], _poly_trim(a)
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(quot) - 1, -1, -1):
        c = a[k + len(b) - 1] / lead
        quot[k] = c
        if c:
            for i, d in enumerate(b):
                a[k + i] -= c * d
    return _poly_trim(quot), _poly_trim(a[: len(b) - 1])


def _poly_sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        for j, y in enumerate(b):
            out[i + j] -= x * y
    return _poly_trim(out)


def _cyc_inverse(vec: tuple[Fraction, ...], n: int) -> tuple[Fraction, ...]:
    # extended Euclid in Q[x]: find s with s * a = 1 mod Phi_n
    modulus = [Fraction(c) for c in _cyclotomic(n)]
    deg = len(modulus) - 1
    r0, r1 = modulus, _poly_trim(list(vec))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        quot, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub_mul(s0, quot, s1)
    if not r1:
        raise DivisionByZero("element is not invertible")
    c = r1[0]
    s = [x / c for x in s1]
    _, s = _poly_divmod(s, modulus)
    return tuple(s + [Fraction(0)] * (deg - len(s)))
