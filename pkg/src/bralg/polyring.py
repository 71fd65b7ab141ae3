"""Sparse multivariate polynomials and substitution automorphisms."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .parsing import ParseError, parse_expression
from .scalars import FieldElement, FieldSpec

__all__ = [
    "ArityMismatch",
    "AutomorphismError",
    "PolyRing",
    "Polynomial",
    "RingAutomorphism",
    "RingMismatch",
    "apply_automorphism",
    "evaluate",
]

RESERVED_NAMES = frozenset({"q", "t"})


class RingMismatch(ValueError):
    pass


class ArityMismatch(ValueError):
    pass


class AutomorphismError(ValueError):
    """Raised when a substitution pair does not compose to the identity."""

    def __init__(self, message: str, variable: str | None = None):
        super().__init__(message)
        self.variable = variable


def _grevlex_key(exp: tuple[int, ...]):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _lex_key(exp: tuple[int, ...]):
    return exp


@dataclass(frozen=True)
class PolyRing:
    field: FieldSpec
    vars: tuple[str, ...]
    order: str = "grevlex"
    key: object = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        for name in self.vars:
            if not name or not name.isidentifier():
                raise ValueError(f"bad variable name {name!r}")
            if name in RESERVED_NAMES:
                raise ValueError(f"variable name {name!r} is reserved")
        if self.order == "grevlex":
            object.__setattr__(self, "key", _grevlex_key)
        elif self.order == "lex":
            object.__setattr__(self, "key", _lex_key)
        else:
            raise ValueError(f"unknown monomial order {self.order!r}")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def with_order(self, order: str) -> PolyRing:
        return PolyRing(self.field, self.vars, order)

    # constructors

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = self.field(c)
        if c.is_zero():
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> Polynomial:
        i = self.vars.index(name)
        exp = tuple(1 if k == i else 0 for k in range(self.nvars))
        return Polynomial(self, {exp: self.field.one})

    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.vars]

    def monomial(self, exp: Sequence[int], coeff=1) -> Polynomial:
        c = self.field(coeff)
        if c.is_zero():
            return self.zero()
        return Polynomial(self, {tuple(exp): c})

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch("polynomial belongs to another ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def parse(self, text: str) -> Polynomial:
        def symbol(name):
            if name in self.vars:
                return self.var(name)
            if name == "q" and self.field.has_q:
                return self.const(self.field.q)
            raise KeyError(name)

        def divide(a, b):
            if not b.is_constant():
                raise ValueError("division by a non-constant polynomial")
            return a * b.constant_coeff().inverse()

        return parse_expression(text, self.const, symbol, divide)

    def parse_point(self, text: str) -> tuple[FieldElement, ...]:
        from .parsing import split_top_level

        parts = split_top_level(text)
        if len(parts) != self.nvars:
            raise ArityMismatch(f"point {text!r} has {len(parts)} coordinates, ring has {self.nvars}")
        return tuple(self.field.parse(p) for p in parts)

    def __str__(self) -> str:
        return f"{self.field}[{', '.join(self.vars)}]"


class Polynomial:
    """Immutable sparse polynomial: a map exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_lead", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead = None
        self._hash = None

    # -- basic inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self) -> FieldElement:
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    @property
    def lead_exp(self) -> tuple[int, ...]:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lead = max(self.terms, key=self.ring.key)
        return self._lead

    @property
    def lead_coeff(self) -> FieldElement:
        return self.terms[self.lead_exp]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], FieldElement]]:
        """Terms in decreasing monomial order."""
        return sorted(self.terms.items(), key=lambda kv: self.ring.key(kv[0]), reverse=True)

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        inv = self.lead_coeff.inverse()
        return Polynomial(self.ring, {e: c * inv for e, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"cannot combine {self.ring} with {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> Polynomial:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (FieldElement, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in terms.items() if not c.is_zero()})

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        c = self.ring.field(c)
        if c.is_zero():
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp: tuple[int, ...], c: FieldElement) -> Polynomial:
        return Polynomial(
            self.ring, {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()}
        )

    def __truediv__(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if not other.is_constant():
                raise ValueError("division by a non-constant polynomial")
            other = other.constant_coeff()
        return self.scale(self.ring.field(other).inverse())

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial exponents must be nonnegative integers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation and substitution

    def evaluate(self, point: Sequence) -> FieldElement:
        ring = self.ring
        if len(point) != ring.nvars:
            raise ArityMismatch(f"expected {ring.nvars} coordinates, got {len(point)}")
        point = [ring.field(x) for x in point]
        powers: list[dict[int, FieldElement]] = [{0: ring.field.one} for _ in point]
        total = ring.field.zero
        for exp, c in self.terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = point[i] ** e
                    term = term * cache[e]
            total = total + term
        return total

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        """Replace each variable z_i by images[i] (all in one target ring)."""
        if len(images) != self.ring.nvars:
            raise ArityMismatch(f"expected {self.ring.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].ring
        powers: list[dict[int, Polynomial]] = [{0: target.one(), 1: g} for g in images]
        total: dict = {}
        for exp, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(exp):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = images[i] ** e
                    term = term * cache[e]
            for e2, c2 in term.terms.items():
                s = total.get(e2)
                total[e2] = c2 if s is None else s + c2
        return Polynomial(target, {e: v for e, v in total.items() if not v.is_zero()})

    # -- text

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.vars
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exp) if e
            )
            if c.needs_parens():
                body = f"({c})" + (f"*{mono}" if mono else "")
                neg = False
            else:
                text = str(c)
                neg = text.startswith("-")
                mag = text[1:] if neg else text
                if not mono:
                    body = mag
                elif mag == "1":
                    body = mono
                else:
                    body = f"{mag}*{mono}"
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def evaluate(f: Polynomial, point: Sequence) -> FieldElement:
    return f.evaluate(point)


class RingAutomorphism:
    """sigma given by the images of the variables, with explicit inverse images.

    The pair is checked at construction: substituting one into the other must
    return every variable.
    """

    def __init__(self, ring: PolyRing, forward: Sequence, backward: Sequence):
        self.ring = ring
        self.forward = tuple(ring(f) for f in forward)
        self.backward = tuple(ring(f) for f in backward)
        if len(self.forward) != ring.nvars or len(self.backward) != ring.nvars:
            raise ArityMismatch("need one image per variable in both directions")
        gens = ring.gens()
        for i, name in enumerate(ring.vars):
            if self.forward[i].substitute(self.backward) != gens[i]:
                raise AutomorphismError(
                    f"sigma_inverse(sigma({name})) = {self.forward[i].substitute(self.backward)}, not {name}",
                    name,
                )
            if self.backward[i].substitute(self.forward) != gens[i]:
                raise AutomorphismError(
                    f"sigma(sigma_inverse({name})) = {self.backward[i].substitute(self.forward)}, not {name}",
                    name,
                )
        self._powers: dict[int, tuple[Polynomial, ...]] = {0: tuple(gens), 1: self.forward, -1: self.backward}
        self._lock = threading.Lock()

    @classmethod
    def identity(cls, ring: PolyRing) -> RingAutomorphism:
        gens = ring.gens()
        return cls(ring, gens, gens)

    @classmethod
    def from_strings(cls, ring: PolyRing, forward: Iterable[str], backward: Iterable[str]):
        return cls(ring, [ring.parse(s) for s in forward], [ring.parse(s) for s in backward])

    def inverse(self) -> RingAutomorphism:
        return RingAutomorphism(self.ring, self.backward, self.forward)

    def images(self, power: int) -> tuple[Polynomial, ...]:
        """sigma^power(z_i) for every variable."""
        if power == 0:
            return tuple(self.ring.gens())
        with self._lock:
            cached = self._powers.get(power)
        if cached is not None:
            return cached
        step = 1 if power > 0 else -1
        k = step
        while k != power:
            nxt = k + step
            with self._lock:
                have = self._powers.get(nxt)
            if have is None:
                prev = self._powers[k]
                # sigma^{k+1}(z) = sigma^k(sigma(z)): substitute sigma^k images into sigma(z)
                one = self._powers[step]
                have = tuple(g.substitute(prev) for g in one)
                with self._lock:
                    self._powers.setdefault(nxt, have)
            k = nxt
        return self._powers[power]

    def apply(self, f: Polynomial, power: int = 1) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch("polynomial and automorphism live in different rings")
        if power == 0:
            return f
        return f.substitute(self.images(power))

    def __call__(self, f: Polynomial, power: int = 1) -> Polynomial:
        return self.apply(f, power)

    def is_identity_power(self, n: int) -> bool:
        return self.images(n) == tuple(self.ring.gens())

    def is_affine(self) -> bool:
        return all(g.total_degree() <= 1 for g in self.forward)

    def commutes_with(self, other: RingAutomorphism) -> str | None:
        """Name of a variable where self*other != other*self, else None."""
        for i, name in enumerate(self.ring.vars):
            a = self.forward[i].substitute(other.forward)  # other(self(z_i))
            b = other.forward[i].substitute(self.forward)  # self(other(z_i))
            if a != b:
                return name
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingAutomorphism):
            return NotImplemented
        return self.ring == other.ring and self.forward == other.forward

    def __hash__(self) -> int:
        return hash((self.ring, self.forward))

    def __str__(self) -> str:
        return ", ".join(f"{v} -> {g}" for v, g in zip(self.ring.vars, self.forward))


def apply_automorphism(sigma: RingAutomorphism, f: Polynomial, power: int) -> Polynomial:
    return sigma.apply(f, power)
