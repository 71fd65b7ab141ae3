"""Acceptance checks, one per criterion.

Each check returns a list of problems; an empty list is a PASS.  The lines
are collected in REPORT and printed at the end of the pytest run by the
terminal-summary hook in conftest.py.  Running this file directly prints the
same lines.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

from bralg import OrbitPoint, load_fixture, orbit, point_action
from bralg.bralgebra import gk_dimension, is_gwa, multiply
from bralg.groebner import Ideal
from bralg.linalg import Matrix, companion
from bralg.polyring import PolyRing, RingAutomorphism
from bralg.scalars import FieldSpec
from bralg.spectrum import nonsimplicity_witness
from bralg.weightmod import (
    ThetaModule,
    act,
    break_character,
    build_finite_simples,
    build_infinite_simples,
    is_simple,
    theta_isomorphic,
    verify,
)
from bralg.weightmod.simplicity import _commutative, _loop_algebra
from modules import bidiagonal_module, cyclic_view, jbreak_family

REPORT: list[str] = []


def fixture(name):
    return load_fixture(name).build()


def _zero(w) -> bool:
    return all(x.is_zero() for x in w.coords)


def _record(number: int, title: str, check, limit: float) -> list[str]:
    start = time.perf_counter()
    try:
        problems = check()
    except Exception as exc:  # a crash is a failed criterion, reported like any other
        problems = [f"raised {exc!r}"]
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        problems.append(f"took {elapsed:.2f} s, limit {limit} s")
    status = "PASS" if not problems else "FAIL"
    line = f"{status} criterion {number}: {title} ({elapsed:.2f} s)"
    if problems:
        line += " -- " + "; ".join(problems)
    REPORT.append(line)
    return problems


# ---------------------------------------------------------------------------
# 1. cyclotomic worked example


def check_cyclotomic_example() -> list[str]:
    out = []
    B = fixture("cyclotomic_breaks")
    F = B.field
    q = F.q
    view = cyclic_view(B)
    if view.size != 3:
        out.append(f"orbit size {view.size}")
    if view.breaks != {0, 2}:
        out.append(f"breaks {sorted(view.breaks)}")
    simples = build_finite_simples(B, view)
    if len(simples) != 2:
        out.append(f"{len(simples)} simples")
        return out
    M0, M2 = simples
    if M0.support() != [1, 2] or M2.support() != [0]:
        out.append("supports differ")
    v1, v2 = M0.basis_vector(1, 0), M0.basis_vector(2, 0)
    expected = {
        "x1 v1": ("(z1 - 1)*t", v1, q - 1),
        "x2 v1": ("(z2 - 1)*t", v1, q**2 - 1),
        "y1 v2": ("(z1 - 1)*t^-1", v2, q**2 - 1),
        "y2 v2": ("(z2 - 1)*t^-1", v2, q - 1),
    }
    for name, (elem, v, c) in expected.items():
        got = act(M0, B.parse_element(elem), v).coords
        if got != (c,):
            out.append(f"{name} = {got}, expected {c}")
    if M0.up_map(1, 0) != Matrix.scalar(F, 1, q - 1) or M0.up_map(1, 1) != Matrix.scalar(F, 1, q**2 - 1):
        out.append("stored up matrices of M(0) differ")
    v0 = M2.basis_vector(0, 0)
    for elem in ("(z1 - 1)*t", "(z2 - 1)*t", "(z1 - 1)*t^-1", "(z2 - 1)*t^-1"):
        if not _zero(act(M2, B.parse_element(elem), v0)):
            out.append(f"{elem} does not kill M(2)")
    return out


def test_criterion_1():
    assert not _record(1, "cyclotomic example: orbit, breaks, M(0) scalars, M(2) zero", check_cyclotomic_example, 1.0)


# ---------------------------------------------------------------------------
# 2. GWA recognition


def check_gwa() -> list[str]:
    out = []
    B = fixture("gwa_shift")
    R = B.ring
    data = is_gwa(B)
    if data is None:
        return ["gwa_shift not recognized"]
    if data.a != R.parse("z1 + 1"):
        out.append(f"a = {data.a}")
    x, y = data.x, data.y
    el = lambda deg, text: B.element({deg: R.parse(text)})  # noqa: E731
    if y * x != el(0, "z1 + 1"):
        out.append("y x != a")
    if x * y != el(0, "z1"):
        out.append("x y != sigma(a)")
    for r, sr, sinv in (("z1", "z1 - 1", "z1 + 1"), ("z2", "z2 - 1", "z2 + 1")):
        if x * el(0, r) != el(0, sr) * x:
            out.append(f"x {r} != sigma({r}) x")
        if y * el(0, r) != el(0, sinv) * y:
            out.append(f"y {r} != sigma^-1({r}) y")
    N = fixture("nongwa_shift")
    if is_gwa(N) is not None:
        out.append("H = (z1 - 1, z2 + 1) recognized as GWA")
    if not Ideal(N.ring, [N.ring.parse("z1 + z2")]).is_sigma_stable(N.sigma):
        out.append("(z1 + z2) not sigma-stable")
    return out


def test_criterion_2():
    assert not _record(2, "GWA recognition and its relations", check_gwa, 1.0)


# ---------------------------------------------------------------------------
# 3. infinite orbit within the window


def check_infinite_orbit() -> list[str]:
    out = []
    B = fixture("nongwa_shift")
    view = orbit(B, OrbitPoint.parse(B.ring, "0,0"), window=5)
    if view.is_cyclic or (view.lo, view.hi) != (-5, 5):
        out.append(f"view {view.describe()}")
    if view.breaks != {0}:
        out.append(f"breaks {sorted(view.breaks)}")
    if view.point(0) != OrbitPoint.parse(B.ring, "0,0"):
        out.append("break point is not (0, 0)")
    simples = build_infinite_simples(B, view)
    supports = [[i for i in view.positions if s.module.dim(i)] for s in simples]
    if supports != [list(range(-5, 1)), list(range(1, 6))]:
        out.append(f"supports {supports}")
    if any(s.module.dim(i) > 1 for s in simples for i in view.positions):
        out.append("a multiplicity exceeds 1")
    return out


def test_criterion_3():
    assert not _record(3, "infinite orbit: one break, two simples in window", check_infinite_orbit, 1.0)


# ---------------------------------------------------------------------------
# 4. verifier and custom modules


def check_custom_modules() -> list[str]:
    out = []
    B = fixture("cyclotomic_breaks")
    F = B.field
    rng = random.Random(4)
    params = [(0, 0)] + [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(9)]
    for alpha, beta in params:
        M = jbreak_family(B, F(alpha), F(beta))
        if not M.verified:
            out.append(f"J-break family ({alpha}, {beta}) not verified")
        labels = break_character(M)
        both = labels == {0: "J-break", 2: "J-break"}
        if both != ((alpha, beta) != (0, 0)):
            out.append(f"labels {labels} at ({alpha}, {beta})")
    verdict = is_simple(jbreak_family(B, F.zero, F.zero))
    if verdict.kind != "NotSimple" or sorted(w.position for w in verdict.witness) != [1, 2]:
        out.append(f"(0, 0) verdict {verdict}")
    for d in (2, 3):
        M = bidiagonal_module(B, d)
        if not verify(M).ok:
            out.append(f"A, A' module d={d} does not verify")
        verdict = is_simple(M)
        if verdict.kind != "Simple":
            out.append(f"A, A' module d={d}: {verdict.kind}")
    return out


def test_criterion_4():
    assert not _record(4, "J-break family, break labels, A, A' modules", check_custom_modules, 2.0)


# ---------------------------------------------------------------------------
# 5. witness module


def check_witness() -> list[str]:
    B = fixture("cyclotomic_breaks")
    M = nonsimplicity_witness(B, OrbitPoint.parse(B.ring, "1,1"), 1)
    out = [] if M.verified else ["witness not verified"]
    v = M.basis_vector(0, 0)
    for g in B.generators():
        if g.degree in (1, -1) and not _zero(act(M, g, v)):
            out.append(f"{g} acts nonzero")
    return out


def test_criterion_5():
    assert not _record(5, "non-simplicity witness for k = 1", check_witness, 1.0)


# ---------------------------------------------------------------------------
# 6. property suites


def _random_affine(R, rng):
    Q = R.field
    n = R.nvars
    A = Matrix.identity(Q, n)
    for _ in range(4 if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        E = [[Q.one if r == c else Q.zero for c in range(n)] for r in range(n)]
        E[i][j] = Q(rng.randint(-2, 2))
        A = Matrix(Q, n, n, E) @ A
    if rng.random() < 0.5:
        A = Matrix(Q, n, n, [[-x for x in A.rows[0]]] + [list(r) for r in A.rows[1:]])
    b = [Q(rng.randint(-4, 4)) for _ in range(n)]
    Ainv = A.inverse()
    z = R.gens()
    fwd = [sum((z[j].scale(A[i, j]) for j in range(n)), R.const(b[i])) for i in range(n)]
    bwd = [sum((z[j] - R.const(b[j])).scale(Ainv[i, j]) for j in range(n)) for i in range(n)]
    return RingAutomorphism(R, fwd, bwd)


def _classified_modules():
    out = []
    cyc = fixture("cyclotomic_breaks")
    out += build_finite_simples(cyc, cyclic_view(cyc))
    nongwa = fixture("nongwa_shift")
    out += [s.module for s in build_infinite_simples(nongwa, orbit(nongwa, OrbitPoint.parse(nongwa.ring, "0,0")))]
    flip = fixture("sign_flip")
    view = orbit(flip, OrbitPoint.parse(flip.ring, "1"))
    out += build_finite_simples(flip, view, ThetaModule(companion(flip.field, [1, 0, 1])))
    triv = fixture("trivial")
    out += build_finite_simples(triv, orbit(triv, OrbitPoint.parse(triv.ring, "0")),
                                ThetaModule(Matrix.scalar(triv.field, 1, 5)))
    return out


def check_properties() -> list[str]:
    out = []
    rng = random.Random(2024)
    algebras = [fixture(n) for n in ("cyclotomic_breaks", "nongwa_shift", "gwa_shift")]

    bad = 0
    for k in range(200):
        B = algebras[k % 3]
        n, m = rng.randint(-4, 4), rng.randint(-4, 4)
        a = rng.choice(B.component(n).groebner())
        b = rng.choice(B.component(m).groebner())
        if not B.component(n + m).contains(a * B.sigma(b, n)):
            bad += 1
    if bad:
        out.append(f"containment failed {bad}/200")

    bad = 0
    for k in range(100):
        B = algebras[k % 3]
        u, v, w = (B.random_homogeneous(rng, rng.randint(-2, 2)) + B.random_homogeneous(rng, rng.randint(-2, 2))
                   for _ in range(3))
        if multiply(multiply(u, v), w) != multiply(u, multiply(v, w)):
            bad += 1
    if bad:
        out.append(f"associativity failed {bad}/100")

    bad = 0
    for k in range(200):
        B = algebras[k % 3]
        u = B.random_homogeneous(rng, rng.randint(-3, 3))
        v = B.random_homogeneous(rng, rng.randint(-3, 3))
        if not u.is_zero() and not v.is_zero() and multiply(u, v).is_zero():
            bad += 1
    if bad:
        out.append(f"zero divisors found {bad}/200")

    bad = 0
    Q = FieldSpec.rationals()
    for k in range(100):
        R = PolyRing(Q, tuple(f"z{i}" for i in range(1, 2 + k % 3)))
        sigma = _random_affine(R, rng)
        p = OrbitPoint(R, tuple(Q(rng.randint(-5, 5)) for _ in R.vars))
        if p.ideal().image(sigma) != point_action(sigma, p, 1).ideal():
            bad += 1
    if bad:
        out.append(f"point/ideal action mismatch {bad}/100")

    for M in _classified_modules():
        B = M.algebra
        view = M.orbit
        bad = 0
        for _ in range(100):
            du, dv = rng.randint(-2, 2), rng.randint(-2, 2)
            u = B.random_homogeneous(rng, du)
            v = B.random_homogeneous(rng, dv)
            if view.is_cyclic:
                pos = rng.choice(list(view.positions))
            else:
                lo = view.lo + max(0, -dv, -(du + dv))
                hi = view.hi - max(0, dv, du + dv)
                pos = rng.randint(lo, hi)
            coords = tuple(B.field(rng.randint(-3, 3)) for _ in range(M.dim(pos)))
            w = M.vector(pos, coords)
            lhs = act(M, multiply(u, v), w)
            rhs = act(M, u, act(M, v, w))
            if lhs.coords != rhs.coords and not (_zero(lhs) and _zero(rhs)):
                bad += 1
        if bad:
            out.append(f"act composition failed {bad}/100 on {M.label}")
    return out


def test_criterion_6():
    assert not _record(6, "property suites (containment, associativity, domain, action, module axiom)",
                       check_properties, 30.0)


# ---------------------------------------------------------------------------
# 7. GK dimension


def check_gkdim() -> list[str]:
    got = {n: gk_dimension(fixture(n)) for n in ("cyclotomic_breaks", "nongwa_shift", "weyl_1var")}
    want = {"cyclotomic_breaks": 3, "nongwa_shift": 3, "weyl_1var": 2}
    return [] if got == want else [f"got {got}"]


def test_criterion_7():
    assert not _record(7, "GK dimension", check_gkdim, 1.0)


# ---------------------------------------------------------------------------
# 8. theta machinery


def _conjugacy_brute_force(A, B, invertible) -> bool:
    return any(P @ A == B @ P for P in invertible)


def check_theta() -> list[str]:
    out = []
    rng = random.Random(88)
    Q = FieldSpec.rationals()
    bad = 0
    for _ in range(50):
        n = rng.randint(1, 4)
        T = Matrix(Q, n, n, [[Q(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)])
        while True:
            P = Matrix(Q, n, n, [[Q(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)])
            if P.rank() == n:
                break
        if not theta_isomorphic(T, P @ T @ P.inverse()):
            bad += 1
    if bad:
        out.append(f"{bad}/50 conjugate pairs not recognized")

    F3 = FieldSpec.prime(3)
    vals = [F3(k) for k in range(3)]
    mats = [Matrix(F3, 2, 2, [e[:2], e[2:]]) for e in itertools.product(vals, repeat=4)]
    invertible = [m for m in mats if m.rank() == 2]
    disagree = sum(theta_isomorphic(A, B) != _conjugacy_brute_force(A, B, invertible)
                   for A in rng.sample(mats, 12) for B in mats)
    if disagree:
        out.append(f"{disagree} disagreements with brute force over F_3")

    if theta_isomorphic(companion(Q, [1, 1, 1]), companion(Q, [1, 0, 1])):
        out.append("companion(x^2+x+1) and companion(x^2+1) called isomorphic")

    B = fixture("sign_flip")
    view = orbit(B, OrbitPoint.parse(B.ring, "1"))
    if not view.is_cyclic or view.breaks:
        out.append("sign_flip orbit is not a cyclic orbit without breaks")
    (M,) = build_finite_simples(B, view, ThetaModule(companion(Q, [1, 0, 1])))
    if not verify(M).ok:
        out.append("theta module does not verify")
    E = _loop_algebra(M, 0)
    if len(E) == M.dim(0) ** 2 or not _commutative(E):
        out.append("loop algebra is not a proper commutative subalgebra")
    if is_simple(M).kind != "Simple":
        out.append(f"theta module: {is_simple(M)}")
    return out


def test_criterion_8():
    assert not _record(8, "theta conjugacy and a companion-matrix theta module", check_theta, 5.0)


CHECKS = [
    (1, "cyclotomic example", check_cyclotomic_example, 1.0),
    (2, "GWA recognition", check_gwa, 1.0),
    (3, "infinite orbit", check_infinite_orbit, 1.0),
    (4, "custom modules", check_custom_modules, 2.0),
    (5, "witness", check_witness, 1.0),
    (6, "property suites", check_properties, 30.0),
    (7, "GK dimension", check_gkdim, 1.0),
    (8, "theta machinery", check_theta, 5.0),
]


if __name__ == "__main__":
    for number, title, check, limit in CHECKS:
        _record(number, title, check, limit)
    print("\n".join(REPORT))
