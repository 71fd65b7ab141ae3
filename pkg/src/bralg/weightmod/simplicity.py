"""Three-valued simplicity test for finite-dimensional weight modules."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from ..linalg import Matrix, SpanBuilder, minimal_polynomial, poly_of_matrix
from ..scalars import FieldSpec
from .module import WeightModule, WeightVector

__all__ = ["InfiniteSupport", "SimplicityVerdict", "closure", "is_simple"]


class InfiniteSupport(ValueError):
    pass


@dataclass(frozen=True)
class SimplicityVerdict:
    kind: str  # Simple, NotSimple, Unknown
    witness: tuple[WeightVector, ...] = field(default=())
    reason: str = ""

    @property
    def is_simple(self) -> bool | None:
        return {"Simple": True, "NotSimple": False}.get(self.kind)

    def __str__(self) -> str:
        if self.kind == "NotSimple":
            vecs = "; ".join(str(v) for v in self.witness)
            return f"NotSimple: invariant subspace spanned by {vecs}"
        if self.kind == "Unknown":
            return f"Unknown: {self.reason}"
        return "Simple"


def _ops_by_source(M: WeightModule) -> dict[int, list[tuple[int, Matrix]]]:
    ops: dict[int, list[tuple[int, Matrix]]] = {}
    for s, t, m in M.operators():
        ops.setdefault(s, []).append((t, m))
    return ops


def closure(M: WeightModule, vectors) -> dict[int, SpanBuilder]:
    """Smallest subspace containing the weight vectors and stable under all edge maps."""
    ops = _ops_by_source(M)
    spans: dict[int, SpanBuilder] = {}
    queue = []
    for v in vectors:
        span = spans.setdefault(v.position, SpanBuilder(M.field, M.dim(v.position)))
        if span.add(v.coords):
            queue.append(v)
    while queue:
        v = queue.pop()
        for t, m in ops.get(v.position, ()):
            w = m.apply(v.coords)
            span = spans.setdefault(t, SpanBuilder(M.field, M.dim(t)))
            if span.add(w):
                queue.append(WeightVector(t, w))
    return spans


def _is_invariant(M: WeightModule, spans: dict[int, SpanBuilder]) -> bool:
    for s, t, m in M.operators():
        src = spans.get(s)
        if src is None:
            continue
        dst = spans.get(t)
        for v in src.basis:
            w = m.apply(v)
            if all(x.is_zero() for x in w):
                continue
            if dst is None or not dst.contains(w):
                return False
    return True


def _witness(M: WeightModule, spans: dict[int, SpanBuilder]) -> SimplicityVerdict:
    if not _is_invariant(M, spans):  # pragma: no cover - closure is invariant by construction
        raise AssertionError("closure is not invariant")
    vecs = tuple(WeightVector(i, v) for i in sorted(spans) for v in spans[i].basis)
    return SimplicityVerdict("NotSimple", vecs)


def _loop_algebra(M: WeightModule, i: int) -> list[Matrix]:
    """Basis of the span of all walk operators from position i back to i."""
    F = M.field
    d = M.dim(i)
    ops = _ops_by_source(M)
    spans: dict[int, SpanBuilder] = {}
    mats: dict[int, list[Matrix]] = {}
    ident = Matrix.identity(F, d)
    spans[i] = SpanBuilder(F, d * d)
    spans[i].add(ident.flat())
    mats[i] = [ident]
    queue = [(i, ident)]
    while queue:
        k, X = queue.pop()
        for t, G in ops.get(k, ()):
            Y = G @ X
            span = spans.setdefault(t, SpanBuilder(F, M.dim(t) * d))
            if span.add(Y.flat()):
                mats.setdefault(t, []).append(Y)
                queue.append((t, Y))
    return mats[i]


def _sympy_poly(spec: FieldSpec, coeffs):
    x = sympy.Symbol("x")
    high_first = list(reversed(coeffs))
    if spec.kind == "Fp":
        return sympy.Poly([int(c.to_fraction()) % spec.param for c in high_first], x, modulus=spec.param)
    return sympy.Poly([sympy.Rational(c.to_fraction().numerator, c.to_fraction().denominator) for c in high_first],
                      x, domain=sympy.QQ)


def _from_sympy(spec: FieldSpec, poly) -> list:
    coeffs = [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in poly.all_coeffs()]
    return [spec(c) for c in reversed(coeffs)]


def _decidable_field(spec: FieldSpec) -> bool:
    return spec.kind in ("Q", "Fp") or spec.degree == 1


def _commutative(mats: list[Matrix]) -> bool:
    return all(a @ b == b @ a for k, a in enumerate(mats) for b in mats[k + 1 :])


def _primitive_element(E: list[Matrix], d: int, rng: random.Random, tries: int = 40):
    F = E[0].field
    candidates = list(E)
    for _ in range(tries):
        g = Matrix.zeros(F, d, d)
        for b in E:
            g = g + b.scale(rng.randint(-5, 5))
        candidates.append(g)
    for g in candidates:
        mu = minimal_polynomial(g)
        if len(mu) - 1 == d:
            return g, mu
    return None, None


def is_simple(M: WeightModule, seed: int = 0) -> SimplicityVerdict:
    if M.windowed_semantics:
        raise InfiniteSupport("is_simple needs a finite module, not a windowed truncation")
    total = M.total_dim()
    if total == 0:
        return SimplicityVerdict("NotSimple", (), "the zero module is not simple")
    support = M.support()
    # stage 1: every basis vector must generate the whole module
    for i in support:
        for k in range(M.dim(i)):
            spans = closure(M, [M.basis_vector(i, k)])
            if sum(len(s) for s in spans.values()) < total:
                return _witness(M, spans)
    if M.is_multiplicity_free():
        return SimplicityVerdict("Simple")
    # stage 3: the loop algebra at each position must act irreducibly
    rng = random.Random(seed)
    for i in support:
        d = M.dim(i)
        E = _loop_algebra(M, i)
        if len(E) == d * d:
            continue
        if not _commutative(E):
            return SimplicityVerdict("Unknown", (), f"loop algebra at position {i} is a proper noncommutative subalgebra")
        spec = M.field
        if not _decidable_field(spec):
            return SimplicityVerdict("Unknown", (), f"irreducibility over {spec} is not decided")
        g, mu = _primitive_element(E, d, rng)
        if g is None:
            return SimplicityVerdict("Unknown", (), f"no primitive element found for the loop algebra at position {i}")
        poly = _sympy_poly(spec, mu)
        if poly.is_irreducible:
            continue
        factor = poly.factor_list()[1][0][0]
        K = poly_of_matrix(_from_sympy(spec, factor), g).nullspace()
        spans = closure(M, [WeightVector(i, K[0])])
        return _witness(M, spans)
    return SimplicityVerdict("Simple")
