"""Buchberger's algorithm and ideals of a polynomial ring.

The engine works on raw term dictionaries.  Cofactor tracking (expressing
each basis element in the original generators) is only switched on when a
membership certificate is requested; the reduced basis is the same either
way, because it is unique for the ring's monomial order.
"""

from __future__ import annotations

import heapq
import threading
from typing import Iterable, Sequence

from .polyring import PolyRing, Polynomial, RingAutomorphism, RingMismatch

__all__ = ["Ideal", "groebner_basis", "ideal_equal", "ideal_product", "ideal_sum"]


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _lcm_exp(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _axpy(target: dict, c, shift, src: dict) -> None:
    """target -= c * x^shift * src, in place."""
    for e, v in src.items():
        e2 = _add_exp(e, shift)
        w = target.get(e2)
        term = c * v
        if w is None:
            target[e2] = -term
        else:
            w = w - term
            if w.is_zero():
                del target[e2]
            else:
                target[e2] = w


class _Element:
    __slots__ = ("terms", "lead", "cof")

    def __init__(self, terms, lead, cof):
        self.terms = terms
        self.lead = lead
        self.cof = cof


class _Engine:
    def __init__(self, ring: PolyRing, ngens: int, track: bool):
        self.ring = ring
        self.key = ring.key
        self.ngens = ngens
        self.track = track

    def make_monic(self, terms: dict, cof):
        lead = max(terms, key=self.key)
        inv = terms[lead].inverse()
        terms = {e: c * inv for e, c in terms.items()}
        if cof is not None:
            cof = [{e: c * inv for e, c in p.items()} for p in cof]
        return _Element(terms, lead, cof)

    def reduce(self, terms: dict, cof, basis: Sequence[_Element], accumulate=None):
        """Full reduction of ``terms`` modulo ``basis`` (elements monic).

        ``cof`` is updated alongside (cof -= c x^s cof_k); ``accumulate`` collects
        quotient cofactors with the opposite sign (for certificates).
        """
        p = dict(terms)
        rem = {}
        key = self.key
        while p:
            m = max(p, key=key)
            c = p[m]
            for g in basis:
                if _divides(g.lead, m):
                    shift = _sub_exp(m, g.lead)
                    _axpy(p, c, shift, g.terms)
                    if cof is not None:
                        for a in range(self.ngens):
                            if g.cof[a]:
                                _axpy(cof[a], c, shift, g.cof[a])
                    if accumulate is not None:
                        for a in range(self.ngens):
                            if g.cof[a]:
                                _axpy(accumulate[a], -c, shift, g.cof[a])
                    break
            else:
                rem[m] = c
                del p[m]
        return rem, cof

    def spoly(self, f: _Element, g: _Element):
        lcm = _lcm_exp(f.lead, g.lead)
        sf, sg = _sub_exp(lcm, f.lead), _sub_exp(lcm, g.lead)
        one = self.ring.field.one
        terms: dict = {}
        _axpy(terms, -one, sf, f.terms)
        _axpy(terms, one, sg, g.terms)
        cof = None
        if self.track:
            cof = [dict() for _ in range(self.ngens)]
            for a in range(self.ngens):
                _axpy(cof[a], -one, sf, f.cof[a])
                _axpy(cof[a], one, sg, g.cof[a])
        return terms, cof

    def run(self, gens: Sequence[Polynomial]) -> list[_Element]:
        one = self.ring.field.one
        basis: list[_Element] = []
        for idx, f in enumerate(gens):
            if f.is_zero():
                continue
            cof = None
            if self.track:
                cof = [dict() for _ in range(self.ngens)]
                cof[idx] = {(0,) * self.ring.nvars: one}
            basis.append(self.make_monic(dict(f.terms), cof))
        if not basis:
            return []
        for g in basis:
            if not any(g.lead):
                return [g]

        heap: list = []
        pending: set = set()

        def push(i, j):
            lcm = _lcm_exp(basis[i].lead, basis[j].lead)
            heapq.heappush(heap, (self.key(lcm), i, j))
            pending.add((i, j))

        for j in range(len(basis)):
            for i in range(j):
                push(i, j)

        while heap:
            _, i, j = heapq.heappop(heap)
            pending.discard((i, j))
            fi, fj = basis[i], basis[j]
            lcm = _lcm_exp(fi.lead, fj.lead)
            if lcm == _add_exp(fi.lead, fj.lead):
                continue
            if self._chain_skip(basis, i, j, lcm, pending):
                continue
            terms, cof = self.spoly(fi, fj)
            rem, cof = self.reduce(terms, cof, basis)
            if rem:
                new = self.make_monic(rem, cof)
                if not any(new.lead):
                    return [new]
                basis.append(new)
                n = len(basis) - 1
                for k in range(n):
                    push(k, n)
        return self.interreduce(basis)

    @staticmethod
    def _chain_skip(basis, i, j, lcm, pending) -> bool:
        for k, g in enumerate(basis):
            if k == i or k == j:
                continue
            if not _divides(g.lead, lcm):
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            return True
        return False

    def interreduce(self, basis: list[_Element]) -> list[_Element]:
        minimal = []
        for k, g in enumerate(basis):
            redundant = False
            for l, h in enumerate(basis):
                if l == k:
                    continue
                if _divides(h.lead, g.lead) and (h.lead != g.lead or l < k):
                    redundant = True
                    break
            if not redundant:
                minimal.append(g)
        reduced = []
        for k, g in enumerate(minimal):
            others = minimal[:k] + minimal[k + 1 :]
            cof = [dict(p) for p in g.cof] if self.track else None
            tail = dict(g.terms)
            lead_c = tail.pop(g.lead)
            rem, cof = self.reduce(tail, cof, others)
            rem[g.lead] = lead_c
            reduced.append(_Element(rem, g.lead, cof))
        reduced.sort(key=lambda e: self.key(e.lead), reverse=True)
        return reduced


def groebner_basis(ring: PolyRing, gens: Sequence[Polynomial]) -> list[Polynomial]:
    """Reduced Groebner basis (monic, sorted by decreasing leading monomial)."""
    engine = _Engine(ring, len(gens), track=False)
    return [Polynomial(ring, e.terms) for e in engine.run(gens)]


class Ideal:
    """An ideal given by generators, with a lazily cached reduced Groebner basis."""

    def __init__(self, ring: PolyRing, gens: Iterable):
        self.ring = ring
        self.gens = tuple(ring(g) for g in gens)
        self._gb: tuple[Polynomial, ...] | None = None
        self._gb_elems: list[_Element] | None = None
        self._cof: tuple[tuple[Polynomial, ...], ...] | None = None
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: PolyRing) -> Ideal:
        return cls(ring, [ring.one()])

    @classmethod
    def of_point(cls, ring: PolyRing, point: Sequence) -> Ideal:
        return cls(ring, [v - c for v, c in zip(ring.gens(), point)])

    # -- Groebner data

    def groebner(self) -> tuple[Polynomial, ...]:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    engine = _Engine(self.ring, len(self.gens), track=False)
                    elems = engine.run(self.gens)
                    self._gb_elems = elems
                    self._gb = tuple(Polynomial(self.ring, e.terms) for e in elems)
        return self._gb

    def groebner_cofactors(self) -> tuple[tuple[Polynomial, ...], tuple[tuple[Polynomial, ...], ...]]:
        """Reduced basis plus cof with basis[k] == sum_a cof[k][a] * gens[a]."""
        if self._cof is None:
            with self._lock:
                if self._cof is None:
                    engine = _Engine(self.ring, len(self.gens), track=True)
                    elems = engine.run(self.gens)
                    self._cof_elems = elems
                    self._cof = tuple(
                        tuple(Polynomial(self.ring, p) for p in e.cof) for e in elems
                    )
                    if self._gb is None:
                        self._gb_elems = elems
                        self._gb = tuple(Polynomial(self.ring, e.terms) for e in elems)
        return self._gb, self._cof

    def _check(self, f) -> Polynomial:
        f = f if isinstance(f, Polynomial) else self.ring(f)
        if f.ring != self.ring:
            raise RingMismatch("polynomial and ideal live in different rings")
        return f

    def normal_form(self, f) -> Polynomial:
        f = self._check(f)
        self.groebner()
        engine = _Engine(self.ring, 0, track=False)
        rem, _ = engine.reduce(f.terms, None, self._gb_elems)
        return Polynomial(self.ring, rem)

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def certificate(self, f) -> list[Polynomial] | None:
        """Cofactors r_a with f == sum r_a gens[a], or None if f is not in the ideal."""
        f = self._check(f)
        self.groebner_cofactors()
        engine = _Engine(self.ring, len(self.gens), track=True)
        acc = [dict() for _ in self.gens]
        rem, _ = engine.reduce(f.terms, None, self._cof_elems, accumulate=acc)
        if rem:
            return None
        return [Polynomial(self.ring, p) for p in acc]

    # -- predicates

    def is_zero(self) -> bool:
        return not self.groebner()

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_principal(self) -> Polynomial | None:
        """The monic generator when the reduced basis is a singleton."""
        gb = self.groebner()
        if len(gb) == 1:
            return gb[0]
        return None

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.groebner() == other.groebner()

    def __hash__(self) -> int:
        return hash(self.groebner())

    # -- constructions

    def __mul__(self, other: Ideal) -> Ideal:
        if self.ring != other.ring:
            raise RingMismatch("ideals live in different rings")
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def __add__(self, other: Ideal) -> Ideal:
        if self.ring != other.ring:
            raise RingMismatch("ideals live in different rings")
        return Ideal(self.ring, self.gens + other.gens)

    def reduced(self) -> Ideal:
        """Same ideal, generated by its reduced Groebner basis."""
        out = Ideal(self.ring, self.groebner())
        out._gb = self._gb
        out._gb_elems = self._gb_elems
        return out

    def image(self, sigma: RingAutomorphism, power: int = 1) -> Ideal:
        if sigma.ring != self.ring:
            raise RingMismatch("automorphism and ideal live in different rings")
        return Ideal(self.ring, [sigma.apply(g, power) for g in self.gens])

    def is_sigma_stable(self, sigma: RingAutomorphism) -> bool:
        return self.image(sigma, 1) == self

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self}"


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    return a * b


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    return a + b


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    return a == b


def sigma_image(sigma: RingAutomorphism, ideal: Ideal, power: int = 1) -> Ideal:
    return ideal.image(sigma, power)


def is_sigma_stable(sigma: RingAutomorphism, ideal: Ideal) -> bool:
    return ideal.is_sigma_stable(sigma)
