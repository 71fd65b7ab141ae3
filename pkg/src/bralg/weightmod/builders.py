"""Constructors for the classified simple weight modules and for custom data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..bralgebra import BRAlgebra
from ..linalg import Matrix, similar
from ..spectrum import OrbitView
from .module import VerificationFailed, WeightModule, verify

__all__ = [
    "HypothesisViolated",
    "InfiniteSimple",
    "ThetaModule",
    "ThetaRequired",
    "build_custom",
    "build_finite_simples",
    "build_infinite_simples",
    "interval_module",
    "theta_isomorphic",
    "theta_module",
]


class ThetaRequired(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


@dataclass(frozen=True)
class ThetaModule:
    """The data (base position, N = field^dim, theta) of a no-break finite-orbit simple."""

    theta: Matrix
    base_position: int = 0

    def __post_init__(self):
        if self.theta.nrows != self.theta.ncols or self.theta.nrows < 1:
            raise ValueError("theta must be a nonempty square matrix")
        if self.theta.rank() != self.theta.nrows:
            raise ValueError("theta must be invertible")

    @property
    def dim(self) -> int:
        return self.theta.nrows


def theta_isomorphic(t1: ThetaModule | Matrix, t2: ThetaModule | Matrix) -> bool:
    """Whether the two theta maps are conjugate over the base field."""
    a = t1.theta if isinstance(t1, ThetaModule) else t1
    b = t2.theta if isinstance(t2, ThetaModule) else t2
    if a.field != b.field:
        raise ValueError("theta maps over different fields")
    return similar(a, b)


def build_custom(
    B: BRAlgebra,
    view: OrbitView,
    mult: Mapping[int, int],
    matrices: tuple[Mapping, Mapping],
    windowed_semantics: bool = False,
    label: str = "",
) -> WeightModule:
    """Assemble a module from (up, down) edge matrices; raises unless it verifies."""
    up, down = matrices
    M = WeightModule(B, view, mult, up, down, windowed_semantics=windowed_semantics, label=label)
    report = verify(M)
    if not report.ok:
        raise VerificationFailed(report)
    return M


def interval_module(
    B: BRAlgebra,
    view: OrbitView,
    start: int,
    length: int,
    windowed_semantics: bool = False,
    label: str = "",
) -> WeightModule:
    """One-dimensional weight spaces at positions start..start+length-1.

    Edges inside the interval carry the generator evaluations j_a(p_{i+1})
    and sigma^-1(h_b)(p_i); every other edge map is zero.
    """
    F = B.field
    if view.is_cyclic and length > view.size:
        raise ValueError("interval longer than the orbit")
    positions = [view.normalize(start + k) for k in range(length)]
    mult = {i: 1 for i in positions}
    up, down = {}, {}
    for k in range(length - 1):
        i = view.normalize(start + k)
        ps = view.point(start + k).coords
        pt = view.point(start + k + 1).coords
        for a, j in enumerate(B.up_gens):
            up[(i, a)] = Matrix.scalar(F, 1, j.evaluate(pt))
        for b, h in enumerate(B.down_gens):
            down[(i, b)] = Matrix.scalar(F, 1, h.evaluate(ps))
    return build_custom(B, view, mult, (up, down), windowed_semantics=windowed_semantics, label=label)


@dataclass(frozen=True)
class InfiniteSimple:
    """A simple module on an infinite orbit, truncated to the window.

    ``parameter`` is the break position n (support (n-, n]) or None for the
    parameter infinity (or for M(O) when no break is visible).
    """

    parameter: int | None
    lo: int
    hi: int
    module: WeightModule

    def describe(self) -> str:
        name = "inf" if self.parameter is None else str(self.parameter)
        return f"parameter {name}: positions {self.lo}..{self.hi} (within window)"


def build_infinite_simples(B: BRAlgebra, view: OrbitView) -> list[InfiniteSimple]:
    if view.is_cyclic:
        raise ValueError("build_infinite_simples needs a windowed view")
    breaks = sorted(view.breaks)
    params: list[int | None] = breaks + [None]
    out = []
    prev = view.lo - 1
    for n in params:
        lo = prev + 1
        hi = view.hi if n is None else n
        prev = hi
        if lo > hi:
            continue
        name = "M(O)" if not breaks else ("M(O,inf)" if n is None else f"M(O,{n})")
        M = interval_module(B, view, lo, hi - lo + 1, windowed_semantics=True, label=name)
        out.append(InfiniteSimple(n, lo, hi, M))
    return out


def build_finite_simples(B: BRAlgebra, view: OrbitView, theta: ThetaModule | None = None) -> list[WeightModule]:
    if not view.is_cyclic:
        raise ValueError("build_finite_simples needs a cyclic view")
    if view.hypothesis_violated:
        raise HypothesisViolated(
            f"the point returns after {view.size} steps but sigma^{view.size} is not the identity"
        )
    if not view.breaks:
        if theta is None:
            raise ThetaRequired("the orbit has no breaks; a theta map is required")
        return [theta_module(B, view, theta)]
    breaks = sorted(view.breaks)
    n = view.size
    out = []
    for k, b in enumerate(breaks):
        nxt = breaks[k + 1] if k + 1 < len(breaks) else breaks[0] + n
        out.append(interval_module(B, view, b + 1, nxt - b, label=f"M(O,{b})"))
    return out


def theta_module(B: BRAlgebra, view: OrbitView, theta: ThetaModule) -> WeightModule:
    """M(m, N, theta): identity transfers except the wrap edge into the base position."""
    if not view.is_cyclic:
        raise ValueError("theta modules live on cyclic orbits")
    F = B.field
    d = theta.dim
    th, th_inv = theta.theta, theta.theta.inverse()
    if th.field != F:
        raise ValueError("theta is over a different field than the algebra")
    wrap = view.normalize(theta.base_position - 1)
    up, down = {}, {}
    for i in view.edges:
        ps = view.point(i).coords
        pt = view.point(i + 1).coords
        for a, j in enumerate(B.up_gens):
            c = j.evaluate(pt)
            up[(i, a)] = th.scale(c) if i == wrap else Matrix.scalar(F, d, c)
        for b, h in enumerate(B.down_gens):
            c = h.evaluate(ps)
            down[(i, b)] = th_inv.scale(c) if i == wrap else Matrix.scalar(F, d, c)
    mult = {i: d for i in view.positions}
    return build_custom(B, view, mult, (up, down), label=f"M(m,N,theta) dim {d}")
