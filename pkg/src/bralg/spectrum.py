"""Rational points of Maxspec(R), the sigma-action on them, orbits and breaks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .bralgebra import BRAlgebra
from .groebner import Ideal
from .polyring import PolyRing, RingAutomorphism
from .scalars import FieldElement

__all__ = [
    "OrbitPoint",
    "OrbitView",
    "PreconditionFailed",
    "in_SB",
    "is_break",
    "nonsimplicity_witness",
    "orbit",
    "point_action",
    "windowed_view",
]


class PreconditionFailed(ValueError):
    pass


@dataclass(frozen=True)
class OrbitPoint:
    """The point p, standing for m_p = (z_1 - p_1, ..., z_m - p_m)."""

    ring: PolyRing
    coords: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.coords) != self.ring.nvars:
            raise ValueError(f"point has {len(self.coords)} coordinates, ring has {self.ring.nvars}")
        object.__setattr__(self, "coords", tuple(self.ring.field(c) for c in self.coords))

    @classmethod
    def parse(cls, ring: PolyRing, text: str) -> OrbitPoint:
        return cls(ring, ring.parse_point(text))

    def ideal(self) -> Ideal:
        return Ideal.of_point(self.ring, self.coords)

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"OrbitPoint({self})"


def point_action(sigma: RingAutomorphism, p: OrbitPoint, power: int = 1) -> OrbitPoint:
    """The point of sigma^power(m_p)."""
    step = sigma.images(-1 if power > 0 else 1)
    coords = p.coords
    for _ in range(abs(power)):
        coords = tuple(g.evaluate(coords) for g in step)
    return OrbitPoint(p.ring, coords)


def in_SB(B: BRAlgebra, m: Ideal | OrbitPoint) -> bool:
    """Whether m contains HJ."""
    if isinstance(m, OrbitPoint):
        return all(g.evaluate(m.coords).is_zero() for g in B.HJ().gens)
    if m.is_unit():
        raise ValueError("in_SB needs a proper ideal")
    return m.contains_ideal(B.HJ())


def is_break(B: BRAlgebra, m: Ideal | OrbitPoint) -> bool:
    if isinstance(m, OrbitPoint):
        return in_SB(B, point_action(B.sigma, m, 1))
    return in_SB(B, m.image(B.sigma, 1))


@dataclass(frozen=True)
class OrbitView:
    """Positions i of the orbit through ``base``; position i holds sigma^i(m_base).

    Cyclic views cover positions 0..n-1 and wrap; windowed views cover
    lo..hi of an orbit with no return found, and their break set is only
    what is visible inside the window.
    """

    base: OrbitPoint
    kind: str  # "cyclic" or "windowed"
    lo: int
    hi: int
    points: dict[int, OrbitPoint] = field(compare=False)
    breaks: frozenset[int]
    hypothesis_violated: bool = False

    @property
    def is_cyclic(self) -> bool:
        return self.kind == "cyclic"

    @property
    def size(self) -> int | None:
        return self.hi - self.lo + 1 if self.is_cyclic else None

    @property
    def complete_breaks(self) -> bool:
        return self.is_cyclic

    @property
    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def edges(self) -> range:
        """Edge i runs from position i to position i+1."""
        return range(self.lo, self.hi + 1) if self.is_cyclic else range(self.lo, self.hi)

    def normalize(self, i: int) -> int:
        if self.is_cyclic:
            return i % self.size
        if not self.lo <= i <= self.hi:
            raise IndexError(f"position {i} outside window [{self.lo}, {self.hi}]")
        return i

    def contains(self, i: int) -> bool:
        return self.is_cyclic or self.lo <= i <= self.hi

    def point(self, i: int) -> OrbitPoint:
        return self.points[self.normalize(i)]

    def describe(self) -> str:
        if self.is_cyclic:
            return f"cyclic {self.size}"
        return f"windowed {self.lo} {self.hi}"


def _break_set(B: BRAlgebra, positions: Sequence[int], nxt) -> frozenset[int]:
    return frozenset(i for i in positions if in_SB(B, nxt(i)))


def windowed_view(B: BRAlgebra, p: OrbitPoint, lo: int, hi: int) -> OrbitView:
    if lo > hi:
        raise ValueError("window needs lo <= hi")
    points = {lo: point_action(B.sigma, p, lo)}
    for i in range(lo, hi + 1):
        points[i + 1] = point_action(B.sigma, points[i], 1)
    beyond = points.pop(hi + 1)
    nxt = lambda i: points[i + 1] if i < hi else beyond  # noqa: E731
    return OrbitView(p, "windowed", lo, hi, points, _break_set(B, range(lo, hi + 1), nxt))


def orbit(B: BRAlgebra, p: OrbitPoint, window: int = 5, max_order: int = 64) -> OrbitView:
    """Cyclic view if the point returns within max_order steps, else a window [-window, window]."""
    if window < 0 or max_order < 1:
        raise ValueError("need window >= 0 and max_order >= 1")
    points = {0: p}
    cur = p
    for n in range(1, max_order + 1):
        cur = point_action(B.sigma, cur, 1)
        if cur == p:
            nxt = lambda i: points[(i + 1) % n]  # noqa: E731
            breaks = _break_set(B, range(n), nxt)
            violated = not B.sigma.is_identity_power(n)
            return OrbitView(p, "cyclic", 0, n - 1, points, breaks, violated)
        points[n] = cur
    return windowed_view(B, p, -window, window)


def nonsimplicity_witness(B: BRAlgebra, p: OrbitPoint, k: int, max_order: int = 64):
    """The k-dimensional weight module linking the S(B) points p and sigma^k(p).

    Weight spaces are one-dimensional at positions 0..k-1; up maps inside
    use j_a(p_{i+1}), down maps use sigma^-1(h_b)(p_i), and the maps leaving
    positions 0 and k-1 outward are zero.
    """
    from .weightmod import interval_module

    if k < 1:
        raise ValueError("k must be at least 1")
    if not in_SB(B, p):
        raise PreconditionFailed(f"point ({p}) is not in S(B)")
    if not in_SB(B, point_action(B.sigma, p, k)):
        raise PreconditionFailed(f"sigma^{k} of ({p}) is not in S(B)")
    view = orbit(B, p, window=0, max_order=max_order)
    if view.is_cyclic:
        if k > view.size:
            raise PreconditionFailed(
                f"k = {k} exceeds the orbit size {view.size}; the weight spaces would overlap"
            )
    else:
        view = windowed_view(B, p, -1, k)
    return interval_module(B, view, 0, k, label=f"witness k={k}")
