"""Bell-Rogalski algebras B = R(t, sigma, H, J) inside R[t, t^-1; sigma].

The degree-n component of B is I^(n) t^n with I^(0) = R,
I^(n) = J sigma(J) ... sigma^(n-1)(J) for n > 0 and
I^(n) = sigma^-1(H) ... sigma^n(H) for n < 0.
"""

from __future__ import annotations

import random
import re
import threading
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from .groebner import Ideal
from .parsing import ParseError
from .polyring import PolyRing, Polynomial, RingAutomorphism, RingMismatch
from .scalars import FieldElement

__all__ = [
    "BRAlgebra",
    "CentralityResult",
    "ConditionViolated",
    "ElementNotInAlgebra",
    "GWAData",
    "GradedElement",
    "LiftedMorphism",
    "apply_lift",
    "gk_dimension",
    "is_central",
    "is_gwa",
    "lift_automorphism",
]


class ElementNotInAlgebra(ValueError):
    def __init__(self, degree: int, poly: Polynomial):
        super().__init__(f"coefficient {poly} of t^{degree} is not in I^({degree})")
        self.degree = degree
        self.poly = poly


class ConditionViolated(ValueError):
    def __init__(self, condition: str, witness):
        super().__init__(f"{condition} fails at {witness}")
        self.condition = condition
        self.witness = witness


class BRAlgebra:
    def __init__(self, ring: PolyRing, sigma: RingAutomorphism, H: Ideal, J: Ideal):
        if sigma.ring != ring or H.ring != ring or J.ring != ring:
            raise RingMismatch("sigma, H and J must live over the same ring")
        if H.is_zero():
            raise ValueError("H must be a nonzero ideal")
        if J.is_zero():
            raise ValueError("J must be a nonzero ideal")
        self.ring = ring
        self.sigma = sigma
        self.H = H
        self.J = J
        self._components: dict[int, Ideal] = {0: Ideal.unit(ring)}
        self._products: dict[int, tuple[list[tuple[int, ...]], Ideal]] = {}
        self._lock = threading.Lock()

    @property
    def field(self):
        return self.ring.field

    @property
    def up_gens(self) -> tuple[Polynomial, ...]:
        """Generators j_a of J; j_a t spans B_1 over R."""
        return self.J.gens

    @property
    def down_gens(self) -> tuple[Polynomial, ...]:
        """sigma^-1(h_b) for the generators h_b of H; these times t^-1 span B_-1."""
        return tuple(self.sigma.apply(h, -1) for h in self.H.gens)

    def HJ(self) -> Ideal:
        return self.H * self.J

    # -- graded components

    def component(self, n: int) -> Ideal:
        cached = self._components.get(n)
        if cached is not None:
            return cached
        step = 1 if n > 0 else -1
        k = 0
        while k != n:
            nxt = k + step
            if nxt not in self._components:
                prev = Ideal(self.ring, self._components[k].groebner())
                if step > 0:
                    factor = self.J.image(self.sigma, k)  # I^(k+1) = I^(k) sigma^k(J)
                else:
                    factor = self.H.image(self.sigma, nxt)  # I^(k-1) = I^(k) sigma^(k-1)(H)
                with self._lock:
                    self._components.setdefault(nxt, prev * factor)
            k = nxt
        return self._components[n]

    def product_generators(self, n: int) -> tuple[list[tuple[int, ...]], Ideal]:
        """Words and the ideal of their products spanning I^(n).

        For n > 0 the word (a_1, ..., a_n) stands for (j_a1 t) ... (j_an t)
        = j_a1 sigma(j_a2) ... sigma^(n-1)(j_an) t^n; for n < 0 the word
        (b_1, ..., b_|n|) stands for the product of sigma^-1(h_b) t^-1 factors.
        """
        cached = self._products.get(n)
        if cached is not None:
            return cached
        if n == 0:
            words = [()]
            polys = [self.ring.one()]
        else:
            gens = self.up_gens if n > 0 else self.down_gens
            step = 1 if n > 0 else -1
            shifted = [[self.sigma.apply(g, step * i) for g in gens] for i in range(abs(n))]
            words, polys = [], []
            for word in product(range(len(gens)), repeat=abs(n)):
                p = self.ring.one()
                for i, a in enumerate(word):
                    p = p * shifted[i][a]
                words.append(word)
                polys.append(p)
        entry = (words, Ideal(self.ring, polys))
        with self._lock:
            self._products.setdefault(n, entry)
        return self._products[n]

    # -- elements

    def element(self, parts: Mapping[int, object] | None = None, check: bool = True) -> GradedElement:
        parts = parts or {}
        return GradedElement(self, {k: self.ring(v) for k, v in parts.items()}, check=check)

    def homogeneous(self, poly, degree: int, check: bool = True) -> GradedElement:
        return self.element({degree: poly}, check=check)

    def one(self) -> GradedElement:
        return self.element({0: self.ring.one()}, check=False)

    def zero(self) -> GradedElement:
        return self.element({}, check=False)

    def contains_element(self, parts: Mapping[int, object]) -> bool:
        return all(self.component(n).contains(self.ring(a)) for n, a in parts.items())

    def generators(self) -> list[GradedElement]:
        """R-variables, j_a t and sigma^-1(h_b) t^-1: an algebra generating set."""
        out = [self.element({0: v}, check=False) for v in self.ring.gens()]
        out += [self.element({1: j}, check=False) for j in self.up_gens]
        out += [self.element({-1: h}, check=False) for h in self.down_gens]
        return out

    def parse_element(self, text: str) -> GradedElement:
        return self.element(parse_graded(self.ring, text))

    def random_homogeneous(self, rng: random.Random, degree: int, coeff_terms: int = 2) -> GradedElement:
        """A random R-combination of generators of I^(degree)."""
        gens = self.component(degree).groebner()
        total = self.ring.zero()
        for g in gens:
            total = total + _random_poly(self.ring, rng, coeff_terms) * g
        if total.is_zero():
            total = gens[0]
        return self.element({degree: total}, check=False)

    def __str__(self) -> str:
        return f"R(t, sigma, H, J) over {self.ring} with sigma: {self.sigma}; H = {self.H}; J = {self.J}"


def _random_poly(ring: PolyRing, rng: random.Random, nterms: int, max_deg: int = 1, coeff_range: int = 3) -> Polynomial:
    field = ring.field
    total = ring.zero()
    for _ in range(nterms):
        exp = [0] * ring.nvars
        for _ in range(rng.randint(0, max_deg)):
            if ring.nvars:
                exp[rng.randrange(ring.nvars)] += 1
        c = field(rng.randint(-coeff_range, coeff_range))
        if field.has_q and rng.random() < 0.5:
            c = c * field.q ** rng.randrange(field.param)
        total = total + ring.monomial(exp, c)
    return total


_T_SUFFIX = re.compile(r"(?:^|\*)\s*t\s*(?:\^\s*(\(\s*)?(-?\s*\d+)\s*\)?)?\s*$")


def _split_terms(text: str) -> list[tuple[int, str]]:
    terms, depth, start, sign = [], 0, 0, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0:
            prev = text[:i].rstrip()
            if prev.endswith("^") or prev.endswith("*") or prev.endswith("/"):
                i += 1
                continue
            chunk = text[start:i].strip()
            if chunk:
                terms.append((sign, chunk))
            elif terms or start > 0:
                raise ParseError("empty term", text, i)
            sign = 1 if ch == "+" else -1
            start = i + 1
        i += 1
    chunk = text[start:].strip()
    if not chunk:
        raise ParseError("empty term", text, n)
    terms.append((sign, chunk))
    return terms


def parse_graded(ring: PolyRing, text: str) -> dict[int, Polynomial]:
    """Parse ``(<poly>)*t^k + ...``; terms without ``t`` have degree 0."""
    if text.strip() == "0":
        return {}
    parts: dict[int, Polynomial] = {}
    for sign, chunk in _split_terms(text):
        m = _T_SUFFIX.search(chunk)
        if m:
            degree = int(m.group(2).replace(" ", "")) if m.group(2) else 1
            coeff_text = chunk[: m.start()].strip()
            coeff = ring.parse(coeff_text) if coeff_text else ring.one()
        else:
            degree = 0
            coeff = ring.parse(chunk)
        if sign < 0:
            coeff = -coeff
        parts[degree] = parts.get(degree, ring.zero()) + coeff
    return {k: v for k, v in parts.items() if not v.is_zero()}


class GradedElement:
    """A finite sum of a_n t^n with every a_n in I^(n)."""

    __slots__ = ("algebra", "parts")

    def __init__(self, algebra: BRAlgebra, parts: Mapping[int, Polynomial], check: bool = True):
        self.algebra = algebra
        self.parts = {k: v for k, v in sorted(parts.items()) if not v.is_zero()}
        if check:
            for n, a in self.parts.items():
                if not algebra.component(n).contains(a):
                    raise ElementNotInAlgebra(n, a)

    def is_zero(self) -> bool:
        return not self.parts

    def degrees(self) -> list[int]:
        return list(self.parts)

    def is_homogeneous(self) -> bool:
        return len(self.parts) <= 1

    @property
    def degree(self) -> int:
        if len(self.parts) != 1:
            raise ValueError("element is not homogeneous and nonzero")
        return next(iter(self.parts))

    @property
    def coefficient(self) -> Polynomial:
        return self.parts[self.degree]

    def _same(self, other: GradedElement) -> None:
        if other.algebra is not self.algebra:
            raise RingMismatch("elements of different algebras")

    def __add__(self, other: GradedElement) -> GradedElement:
        self._same(other)
        parts = dict(self.parts)
        for k, v in other.parts.items():
            parts[k] = parts[k] + v if k in parts else v
        return GradedElement(self.algebra, parts, check=False)

    def __neg__(self) -> GradedElement:
        return GradedElement(self.algebra, {k: -v for k, v in self.parts.items()}, check=False)

    def __sub__(self, other: GradedElement) -> GradedElement:
        return self + (-other)

    def __mul__(self, other) -> GradedElement:
        if not isinstance(other, GradedElement):
            if isinstance(other, (Polynomial, int, FieldElement)):
                other = self.algebra.element({0: other}, check=False)
            else:
                return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other) -> GradedElement:
        if isinstance(other, (Polynomial, int, FieldElement)):
            return multiply(self.algebra.element({0: other}, check=False), self)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.algebra is other.algebra and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(tuple(self.parts.items()))

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        out = []
        for k, a in self.parts.items():
            out.append(f"({a})" if k == 0 else f"({a})*t^{k}")
        return " + ".join(out)

    def __repr__(self) -> str:
        return f"GradedElement({self})"


def multiply(u: GradedElement, v: GradedElement) -> GradedElement:
    """(a t^n)(b t^m) = a sigma^n(b) t^(n+m), extended bilinearly."""
    u._same(v)
    B = u.algebra
    parts: dict[int, Polynomial] = {}
    for n, a in u.parts.items():
        for m, b in v.parts.items():
            c = a * B.sigma.apply(b, n)
            parts[n + m] = parts[n + m] + c if n + m in parts else c
    return GradedElement(B, parts, check=False)


# ---------------------------------------------------------------------------
# GWA recognition


@dataclass(frozen=True)
class GWAData:
    base: PolyRing
    sigma: RingAutomorphism
    a: Polynomial
    x: GradedElement
    y: GradedElement

    def relation_failures(self, samples: Iterable[Polynomial] = ()) -> list[str]:
        B = self.x.algebra
        sig = self.sigma
        failures = []
        if self.y * self.x != B.element({0: self.a}, check=False):
            failures.append("y*x = a")
        if self.x * self.y != B.element({0: sig.apply(self.a, 1)}, check=False):
            failures.append("x*y = sigma(a)")
        for r in list(self.base.gens()) + list(samples):
            rr = B.element({0: r}, check=False)
            if self.x * rr != B.element({0: sig.apply(r, 1)}, check=False) * self.x:
                failures.append(f"x*r = sigma(r)*x for r = {r}")
            if self.y * rr != B.element({0: sig.apply(r, -1)}, check=False) * self.y:
                failures.append(f"y*r = sigma^-1(r)*y for r = {r}")
        return failures


def is_gwa(B: BRAlgebra) -> GWAData | None:
    """GWA data when H = (h) and J = (j) are principal, else None.

    The GWA parameter is a = sigma^-1(j h), realized by x = j t and
    y = sigma^-1(h) t^-1.
    """
    h = B.H.is_principal()
    j = B.J.is_principal()
    if h is None or j is None:
        return None
    sig = B.sigma
    a = sig.apply(j * h, -1)
    x = B.element({1: j})
    y = B.element({-1: sig.apply(h, -1)})
    data = GWAData(B.ring, sig, a, x, y)
    failures = data.relation_failures()
    if failures:
        raise RuntimeError(f"GWA relations failed: {failures}")
    return data


# ---------------------------------------------------------------------------
# center, lifts, GK dimension


@dataclass(frozen=True)
class CentralityResult:
    central: bool
    witness: GradedElement | None = None

    def __bool__(self) -> bool:
        return self.central


def is_central(B: BRAlgebra, u: GradedElement, sample_size: int = 0, seed: int = 0) -> CentralityResult:
    """Decide centrality by commuting u with the algebra generators.

    ``sample_size`` extra random products of generators are also checked; they
    cannot change the verdict but guard the implementation.
    """
    if u.algebra is not B:
        raise RingMismatch("element belongs to another algebra")
    for name, a in u.parts.items():
        if not B.component(name).contains(a):
            raise ElementNotInAlgebra(name, a)
    gens = B.generators()
    for g in gens:
        if u * g != g * u:
            return CentralityResult(False, g)
    rng = random.Random(seed)
    for _ in range(sample_size):
        g = rng.choice(gens) * rng.choice(gens)
        if u * g != g * u:
            raise RuntimeError(f"{u} commutes with generators but not with {g}")
    return CentralityResult(True)


@dataclass(frozen=True)
class LiftedMorphism:
    algebra: BRAlgebra
    phi: RingAutomorphism
    gamma: FieldElement

    def __call__(self, u: GradedElement) -> GradedElement:
        return apply_lift(self, u)


def lift_automorphism(B: BRAlgebra, phi: RingAutomorphism, gamma) -> LiftedMorphism:
    """Lift phi to Phi_gamma(a t^n) = gamma^n phi(a) t^n after checking the hypotheses."""
    gamma = B.field(gamma)
    if gamma.is_zero():
        raise ConditionViolated("gamma != 0", gamma)
    if phi.ring != B.ring:
        raise RingMismatch("phi acts on another ring")
    bad = phi.commutes_with(B.sigma)
    if bad is not None:
        raise ConditionViolated("phi sigma = sigma phi", bad)
    for h in B.H.gens:
        if not B.H.contains(phi.apply(h)):
            raise ConditionViolated("phi(H) in H", h)
    for j in B.J.gens:
        if not B.J.contains(phi.apply(j)):
            raise ConditionViolated("phi(J) in J", j)
    return LiftedMorphism(B, phi, gamma)


def apply_lift(L: LiftedMorphism, u: GradedElement) -> GradedElement:
    parts = {n: L.phi.apply(a).scale(L.gamma ** n) for n, a in u.parts.items()}
    return GradedElement(L.algebra, parts, check=False)


def gk_dimension(B: BRAlgebra) -> int | None:
    """Number of variables + 1 when sigma is affine, otherwise undecided (None)."""
    if B.sigma.is_affine():
        return B.ring.nvars + 1
    return None


def component(B: BRAlgebra, n: int) -> Ideal:
    return B.component(n)


def contains_element(B: BRAlgebra, parts: Mapping[int, object]) -> bool:
    return B.contains_element(parts)
