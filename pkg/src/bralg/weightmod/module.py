"""Weight modules given by per-generator edge matrices, their verifier and action."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from ..bralgebra import BRAlgebra, GradedElement
from ..linalg import Matrix
from ..scalars import FieldElement
from ..spectrum import OrbitView

__all__ = [
    "Failure",
    "NotHomogeneous",
    "NotInComponent",
    "OutsideWindow",
    "VerificationFailed",
    "VerifyReport",
    "WeightModule",
    "WeightVector",
    "act",
    "break_character",
    "verify",
]


class NotHomogeneous(ValueError):
    pass


class NotInComponent(ValueError):
    pass


class OutsideWindow(ValueError):
    pass


class WeightVector(NamedTuple):
    position: int
    coords: tuple[FieldElement, ...]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __str__(self) -> str:
        return f"@{self.position} [" + ", ".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class Failure:
    edge: int
    relation: str  # shape, cross-down-up, cross-up-down, koszul-J, koszul-H
    generators: tuple
    detail: str

    def __str__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"edge {self.edge}: {self.relation} ({gens}): {self.detail}"


@dataclass
class VerifyReport:
    failures: list[Failure] = field(default_factory=list)
    break_labels: dict[int, str] = field(default_factory=dict)
    partial_edges: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        lines = ["verified" if self.ok else f"FAILED ({len(self.failures)} violations)"]
        lines += [str(f) for f in self.failures]
        for i, label in sorted(self.break_labels.items()):
            lines.append(f"break {i}: {label}")
        for i in self.partial_edges:
            lines.append(f"edge {i}: verified modulo non-Koszul syzygies")
        return "\n".join(lines)


class VerificationFailed(ValueError):
    def __init__(self, report: VerifyReport):
        super().__init__(report.summary())
        self.report = report


class WeightModule:
    """A module supported on an orbit view.

    ``up[(i, a)]`` is the action of j_a t from position i to i+1 and
    ``down[(i, b)]`` the action of sigma^-1(h_b) t^-1 from i+1 back to i,
    both keyed by the edge i.  ``windowed_semantics`` marks truncations of
    modules with infinite support: only edges inside the window are checked
    and the action may not leave the window.
    """

    def __init__(
        self,
        algebra: BRAlgebra,
        orbit: OrbitView,
        mult: Mapping[int, int],
        up: Mapping[tuple[int, int], Matrix],
        down: Mapping[tuple[int, int], Matrix],
        windowed_semantics: bool = False,
        label: str = "",
    ):
        self.algebra = algebra
        self.orbit = orbit
        self.mult = {i: int(mult.get(i, 0)) for i in orbit.positions}
        if any(d < 0 for d in self.mult.values()):
            raise ValueError("multiplicities must be nonnegative")
        extra = set(mult) - set(orbit.positions)
        if any(mult[i] for i in extra):
            raise ValueError(f"multiplicities given outside the orbit view: {sorted(extra)}")
        if orbit.is_cyclic and windowed_semantics:
            raise ValueError("windowed semantics only applies to windowed views")
        if not orbit.is_cyclic and not windowed_semantics:
            if self.mult[orbit.lo] or self.mult[orbit.hi]:
                raise ValueError("a finite module on a windowed view must vanish at both window ends")
        self.windowed_semantics = windowed_semantics
        self.label = label
        F = algebra.field
        self.up: dict[tuple[int, int], Matrix] = {}
        self.down: dict[tuple[int, int], Matrix] = {}
        for i in orbit.edges:
            s, t = self.dim(i), self.dim(i + 1)
            for a in range(len(algebra.up_gens)):
                self.up[(i, a)] = _shaped(up.get((i, a)), F, t, s, f"up {i} {a}")
            for b in range(len(algebra.down_gens)):
                self.down[(i, b)] = _shaped(down.get((i, b)), F, s, t, f"down {i} {b}")
        self.verified = False
        self.report: VerifyReport | None = None

    @property
    def field(self):
        return self.algebra.field

    def dim(self, i: int) -> int:
        return self.mult[self.orbit.normalize(i)]

    def total_dim(self) -> int:
        return sum(self.mult.values())

    def support(self) -> list[int]:
        return [i for i in self.orbit.positions if self.mult[i]]

    def is_multiplicity_free(self) -> bool:
        return all(d <= 1 for d in self.mult.values())

    def edge_key(self, i: int) -> int:
        return self.orbit.normalize(i) if self.orbit.is_cyclic else i

    def up_map(self, i: int, a: int) -> Matrix:
        return self.up[(self.edge_key(i), a)]

    def down_map(self, i: int, b: int) -> Matrix:
        return self.down[(self.edge_key(i), b)]

    def vector(self, position: int, coords: Sequence) -> WeightVector:
        position = self.orbit.normalize(position)
        coords = tuple(self.field(c) for c in coords)
        if len(coords) != self.mult[position]:
            raise ValueError(f"position {position} has dimension {self.mult[position]}, got {len(coords)} coordinates")
        return WeightVector(position, coords)

    def basis_vector(self, position: int, k: int) -> WeightVector:
        d = self.dim(position)
        F = self.field
        return self.vector(position, [F.one if j == k else F.zero for j in range(d)])

    def operators(self):
        """(source, target, matrix) for every nonzero edge map."""
        out = []
        for (i, a), m in sorted(self.up.items()):
            if m.nrows and m.ncols and not m.is_zero():
                out.append((self.orbit.normalize(i), self._target(i), m))
        for (i, b), m in sorted(self.down.items()):
            if m.nrows and m.ncols and not m.is_zero():
                out.append((self._target(i), self.orbit.normalize(i), m))
        return out

    def _target(self, i: int) -> int:
        return self.orbit.normalize(i + 1)

    def __repr__(self) -> str:
        dims = ", ".join(f"{i}:{d}" for i, d in self.mult.items() if d)
        return f"WeightModule({self.label or 'unnamed'}; {self.orbit.describe()}; dims {dims})"


def _shaped(m: Matrix | None, F, rows: int, cols: int, what: str) -> Matrix:
    if m is None:
        return Matrix.zeros(F, rows, cols)
    if m.shape != (rows, cols):
        raise ValueError(f"{what}: expected a {rows}x{cols} matrix, got {m.nrows}x{m.ncols}")
    return m


# ---------------------------------------------------------------------------
# verifier


def verify(M: WeightModule) -> VerifyReport:
    """Check cross relations and evaluated Koszul syzygies on every edge."""
    B = M.algebra
    F = M.field
    report = VerifyReport()
    jgens, hgens = B.up_gens, B.down_gens
    view = M.orbit
    for i in view.edges:
        s, t = view.normalize(i), view.normalize(i + 1)
        ps, pt = view.point(s).coords, view.point(t).coords
        ds, dt = M.mult[s], M.mult[t]
        j_at_t = [j.evaluate(pt) for j in jgens]
        h_at_s = [h.evaluate(ps) for h in hgens]
        for a in range(len(jgens)):
            for b in range(len(hgens)):
                up, down = M.up[(i, a)], M.down[(i, b)]
                # sigma^-1(h_b j_a)(p_s) = sigma^-1(h_b)(p_s) * j_a(p_t)
                c = h_at_s[b] * j_at_t[a]
                if ds and down @ up != Matrix.scalar(F, ds, c):
                    report.failures.append(Failure(i, "cross-down-up", (a, b),
                                                   f"expected {c} times identity at position {s}"))
                if dt and up @ down != Matrix.scalar(F, dt, c):
                    report.failures.append(Failure(i, "cross-up-down", (a, b),
                                                   f"expected {c} times identity at position {t}"))
        for a in range(len(jgens)):
            for a2 in range(a + 1, len(jgens)):
                if M.up[(i, a)].scale(j_at_t[a2]) != M.up[(i, a2)].scale(j_at_t[a]):
                    report.failures.append(Failure(i, "koszul-J", (a, a2),
                                                   f"j_{a2}(p_{t}) up_{a} != j_{a}(p_{t}) up_{a2}"))
        for b in range(len(hgens)):
            for b2 in range(b + 1, len(hgens)):
                if M.down[(i, b)].scale(h_at_s[b2]) != M.down[(i, b2)].scale(h_at_s[b]):
                    report.failures.append(Failure(i, "koszul-H", (b, b2),
                                                   f"h_{b2}(p_{s}) down_{b} != h_{b}(p_{s}) down_{b2}"))
        # when every generator vanishes the Koszul relations say nothing
        if (len(jgens) > 1 and all(x.is_zero() for x in j_at_t)) or (
            len(hgens) > 1 and all(x.is_zero() for x in h_at_s)
        ):
            if ds or dt:
                report.partial_edges.append(i)
        if i in view.breaks:
            report.break_labels[i] = _label(M, i)
    if report.ok:
        M.verified = True
        M.report = report
    return report


def _label(M: WeightModule, i: int) -> str:
    j = any(not M.up[(i, a)].is_zero() for a in range(len(M.algebra.up_gens)))
    h = any(not M.down[(i, b)].is_zero() for b in range(len(M.algebra.down_gens)))
    if j and h:
        return "J-break+H-break"
    if j:
        return "J-break"
    if h:
        return "H-break"
    return "neither"


def break_character(M: WeightModule) -> dict[int, str]:
    """Label every break of the orbit view: J-break, H-break or neither."""
    view = M.orbit
    return {i: _label(M, i) for i in sorted(view.breaks) if i in view.edges}


# ---------------------------------------------------------------------------
# action of graded elements


def act(M: WeightModule, u: GradedElement, v: WeightVector) -> WeightVector:
    """u . v for a homogeneous element u and a weight vector v."""
    if u.algebra is not M.algebra and u.algebra.ring != M.algebra.ring:
        raise ValueError("element and module belong to different algebras")
    if u.is_zero():
        k = 0
        a = M.algebra.ring.zero()
    else:
        if not u.is_homogeneous():
            raise NotHomogeneous(f"{u} is not homogeneous")
        k = u.degree
        a = u.coefficient
    F = M.field
    pos = v.position
    M.orbit.normalize(pos)
    if len(v.coords) != M.dim(pos):
        raise ValueError("vector does not match the weight space dimension")
    target = pos + k
    if not M.orbit.contains(target):
        if M.windowed_semantics:
            raise OutsideWindow(f"acting by degree {k} from position {pos} leaves the window")
        # a finite module on a windowed view vanishes outside the window
        return WeightVector(target, ())
    target_n = M.orbit.normalize(target)
    if k == 0:
        c = a.evaluate(M.orbit.point(pos).coords)
        return WeightVector(target_n, tuple(c * x for x in v.coords))
    words, ideal = M.algebra.product_generators(k)
    cert = ideal.certificate(a)
    if cert is None:
        raise NotInComponent(f"{a} is not in I^({k})")
    pt = M.orbit.point(target).coords
    out = [F.zero] * M.dim(target)
    for word, r in zip(words, cert):
        if r.is_zero():
            continue
        c = r.evaluate(pt)
        if c.is_zero():
            continue
        w = _apply_word(M, word, k, pos, v.coords)
        out = [x + c * y for x, y in zip(out, w)]
    return WeightVector(target_n, tuple(out))


def _apply_word(M: WeightModule, word: tuple[int, ...], k: int, pos: int, coords):
    """Apply the step generators of ``word`` rightmost first."""
    cur = tuple(coords)
    if k > 0:
        for step, a in enumerate(reversed(word)):
            cur = M.up_map(pos + step, a).apply(cur)
    else:
        for step, b in enumerate(reversed(word)):
            cur = M.down_map(pos - step - 1, b).apply(cur)
    return cur
