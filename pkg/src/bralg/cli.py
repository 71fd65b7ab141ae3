"""Command-line front end: ``bralg COMMAND -c CONFIG [options]``.

Exit status: 0 success, 2 parse or configuration error, 3 failed
precondition, 4 verifier failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .bralgebra import (
    BRAlgebra,
    ConditionViolated,
    ElementNotInAlgebra,
    gk_dimension,
    is_central,
    is_gwa,
    lift_automorphism,
    multiply,
)
from .config import load_config, load_fixture
from .linalg import parse_matrix
from .parsing import ParseError, split_top_level
from .polyring import ArityMismatch, AutomorphismError, RingAutomorphism, RingMismatch
from .scalars import parse_field_spec
from .spectrum import OrbitPoint, PreconditionFailed, nonsimplicity_witness, orbit
from .weightmod import (
    HypothesisViolated,
    InfiniteSupport,
    NotHomogeneous,
    NotInComponent,
    OutsideWindow,
    ThetaModule,
    ThetaRequired,
    VerificationFailed,
    act,
    break_character,
    build_finite_simples,
    build_infinite_simples,
    is_simple,
    parse_module,
    theta_isomorphic,
    verify,
    write_module,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_VERIFY = 4

PARSE_ERRORS = (ParseError, AutomorphismError, ArityMismatch, RingMismatch, FileNotFoundError)
PRECONDITION_ERRORS = (
    PreconditionFailed,
    ThetaRequired,
    HypothesisViolated,
    NotInComponent,
    NotHomogeneous,
    OutsideWindow,
    InfiniteSupport,
    ConditionViolated,
    ElementNotInAlgebra,
)


@dataclass
class CommandResult:
    text: str
    data: dict = field(default_factory=dict)
    status: int = EXIT_OK

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.data, sort_keys=True, indent=2)
        return self.text


# ---------------------------------------------------------------------------
# helpers


def _algebra(args) -> BRAlgebra:
    if args.fixture:
        return load_fixture(args.fixture).build()
    if not args.config:
        raise ParseError("an algebra is required: pass -c CONFIG or --fixture NAME")
    return load_config(args.config).build()


def _point(B: BRAlgebra, text: str) -> OrbitPoint:
    return OrbitPoint.parse(B.ring, text)


def _view(B: BRAlgebra, args):
    return orbit(B, _point(B, args.point), window=args.window, max_order=args.max_order)


def _read_module(B: BRAlgebra, path: str):
    return parse_module(Path(path).read_text(), B)


def _vector_text(v) -> str:
    return f"position {v.position}: [" + ", ".join(str(c) for c in v.coords) + "]"


def _checked_module(B: BRAlgebra, path: str):
    M = _read_module(B, path)
    report = verify(M)
    if not report.ok:
        raise VerificationFailed(report)
    return M


# ---------------------------------------------------------------------------
# commands


def cmd_info(args) -> CommandResult:
    B = _algebra(args)
    ring = B.ring
    gwa = is_gwa(B)
    gk = gk_dimension(B)
    lines = [
        f"field: {ring.field}",
        f"vars: {', '.join(ring.vars)}",
        "sigma: " + ", ".join(f"{v} -> {g}" for v, g in zip(ring.vars, B.sigma.forward)),
        "sigma^-1: " + ", ".join(f"{v} -> {g}" for v, g in zip(ring.vars, B.sigma.backward)),
        f"H: {B.H}",
        f"J: {B.J}",
        f"HJ: {B.HJ().reduced()}",
        f"GWA: {'yes, a = ' + str(gwa.a) if gwa else 'no'}",
        f"GK dimension: {gk if gk is not None else 'unknown'}",
    ]
    data = {
        "field": str(ring.field),
        "vars": list(ring.vars),
        "sigma": [str(g) for g in B.sigma.forward],
        "sigma_inverse": [str(g) for g in B.sigma.backward],
        "H": [str(g) for g in B.H.gens],
        "J": [str(g) for g in B.J.gens],
        "HJ": [str(g) for g in B.HJ().groebner()],
        "gwa": gwa is not None,
        "gk_dimension": gk,
    }
    return CommandResult("\n".join(lines), data)


def cmd_component(args) -> CommandResult:
    B = _algebra(args)
    gb = B.component(args.n).groebner()
    text = "(" + ", ".join(str(g) for g in gb) + ")"
    return CommandResult(text, {"degree": args.n, "generators": [str(g) for g in gb]})


def cmd_mul(args) -> CommandResult:
    B = _algebra(args)
    u = B.parse_element(args.u)
    v = B.parse_element(args.v)
    w = multiply(u, v)
    return CommandResult(str(w), {"product": str(w), "degrees": w.degrees()})


def cmd_is_gwa(args) -> CommandResult:
    B = _algebra(args)
    g = is_gwa(B)
    if g is None:
        return CommandResult("not a GWA", {"gwa": False})
    text = f"GWA with a = {g.a}\nx = {g.x}\ny = {g.y}"
    return CommandResult(text, {"gwa": True, "a": str(g.a), "x": str(g.x), "y": str(g.y)})


def cmd_is_central(args) -> CommandResult:
    B = _algebra(args)
    u = B.parse_element(args.u)
    res = is_central(B, u, sample_size=args.samples, seed=args.seed)
    if res.central:
        return CommandResult("Central", {"central": True})
    return CommandResult(f"NotCentral: fails to commute with {res.witness}",
                         {"central": False, "witness": str(res.witness)})


def _substitution(ring, text: str) -> list:
    images = {}
    for part in split_top_level(text):
        name, sep, value = part.partition("=")
        if not sep:
            raise ParseError("expected VAR=POLY entries", text)
        name = name.strip()
        if name not in ring.vars:
            raise ParseError(f"unknown variable {name!r}", text)
        images[name] = ring.parse(value)
    missing = [v for v in ring.vars if v not in images]
    if missing:
        raise ParseError(f"no image for {', '.join(missing)}", text)
    return [images[v] for v in ring.vars]


def cmd_lift(args) -> CommandResult:
    B = _algebra(args)
    phi = RingAutomorphism(B.ring, _substitution(B.ring, args.phi), _substitution(B.ring, args.phi_inverse))
    L = lift_automorphism(B, phi, B.field.parse(args.gamma))
    data = {"liftable": True, "gamma": str(L.gamma)}
    lines = [f"lift exists with gamma = {L.gamma}"]
    if args.element:
        image = L(B.parse_element(args.element))
        data["image"] = str(image)
        lines.append(f"image: {image}")
    return CommandResult("\n".join(lines), data)


def cmd_gkdim(args) -> CommandResult:
    B = _algebra(args)
    gk = gk_dimension(B)
    text = str(gk) if gk is not None else "unknown (sigma is not affine)"
    return CommandResult(text, {"gk_dimension": gk})


def _points_data(view):
    return {str(i): [str(c) for c in view.point(i).coords] for i in view.positions}


def cmd_orbit(args) -> CommandResult:
    B = _algebra(args)
    view = _view(B, args)
    lines = [f"orbit: {view.describe()}" + ("" if view.is_cyclic else " (no return found)")]
    if view.hypothesis_violated:
        lines.append(f"warning: sigma^{view.size} is not the identity")
    for i in view.positions:
        lines.append(f"{i}: ({view.point(i)})")
    data = {
        "kind": view.kind,
        "lo": view.lo,
        "hi": view.hi,
        "size": view.size,
        "hypothesis_violated": view.hypothesis_violated,
        "points": _points_data(view),
    }
    return CommandResult("\n".join(lines), data)


def cmd_breaks(args) -> CommandResult:
    B = _algebra(args)
    view = _view(B, args)
    breaks = sorted(view.breaks)
    qual = "" if view.complete_breaks else " (within window)"
    text = "breaks: {" + ", ".join(str(i) for i in breaks) + "}" + qual
    for i in breaks:
        text += f"\n{i}: ({view.point(i)})"
    return CommandResult(text, {"breaks": breaks, "complete": view.complete_breaks, "kind": view.kind})


def _write_or_show(M, args, name: str) -> tuple[str, str | None]:
    content = write_module(M, args.config or args.fixture or "")
    if args.output:
        out = Path(args.output)
        if out.suffix == "" or out.is_dir():
            out.mkdir(parents=True, exist_ok=True)
            out = out / f"{name}.wm"
        out.write_text(content)
        return content, str(out)
    return content, None


def _module_data(M) -> dict:
    return {
        "label": M.label,
        "mult": {str(i): d for i, d in M.mult.items() if d},
        "up": {f"{i},{a}": [[str(x) for x in r] for r in m.rows] for (i, a), m in sorted(M.up.items()) if m.nrows and m.ncols},
        "down": {f"{i},{b}": [[str(x) for x in r] for r in m.rows] for (i, b), m in sorted(M.down.items()) if m.nrows and m.ncols},
        "windowed_semantics": M.windowed_semantics,
    }


def cmd_witness(args) -> CommandResult:
    B = _algebra(args)
    M = nonsimplicity_witness(B, _point(B, args.point), args.k, max_order=args.max_order)
    content, path = _write_or_show(M, args, f"witness_k{args.k}")
    text = f"verified witness module, dimension {M.total_dim()}"
    text += f"\nwritten to {path}" if path else "\n" + content.rstrip()
    data = _module_data(M)
    data["file"] = path
    return CommandResult(text, data)


def cmd_simples(args) -> CommandResult:
    B = _algebra(args)
    view = _view(B, args)
    out_text, out_data = [], []
    if view.is_cyclic:
        theta = None
        if args.theta:
            theta = ThetaModule(parse_matrix(B.field, args.theta), args.theta_base)
        mods = [(M, M.label) for M in build_finite_simples(B, view, theta)]
        out_text.append(f"{len(mods)} simple module(s) on the cyclic orbit of size {view.size}")
    else:
        found = build_infinite_simples(B, view)
        mods = [(s.module, s.describe()) for s in found]
        out_text.append(f"{len(mods)} simple module(s) within window [{view.lo}, {view.hi}]")
    for k, (M, desc) in enumerate(mods):
        name = M.label.replace("(", "_").replace(")", "").replace(",", "_").replace(" ", "_")
        content, path = _write_or_show(M, args, f"{k:02d}_{name}")
        support = M.support()
        out_text.append(f"{M.label}: support {support}" + (f" [{desc}]" if desc != M.label else ""))
        if path:
            out_text.append(f"  written to {path}")
        d = _module_data(M)
        d["support"] = support
        d["file"] = path
        out_data.append(d)
    return CommandResult("\n".join(out_text), {"kind": view.kind, "modules": out_data})


def cmd_verify(args) -> CommandResult:
    B = _algebra(args)
    M = _read_module(B, args.module)
    report = verify(M)
    data = {
        "ok": report.ok,
        "failures": [
            {"edge": f.edge, "relation": f.relation, "generators": list(f.generators), "detail": f.detail}
            for f in report.failures
        ],
        "break_labels": {str(i): lab for i, lab in sorted(report.break_labels.items())},
        "partial_edges": report.partial_edges,
    }
    return CommandResult(report.summary(), data, EXIT_OK if report.ok else EXIT_VERIFY)


def cmd_act(args) -> CommandResult:
    B = _algebra(args)
    M = _checked_module(B, args.module)
    u = B.parse_element(args.u)
    coords = [B.field.parse(x) for x in split_top_level(args.vector)] if args.vector.strip() else []
    v = M.vector(args.position, coords)
    w = act(M, u, v)
    return CommandResult(_vector_text(w), {"position": w.position, "vector": [str(c) for c in w.coords]})


def cmd_is_simple(args) -> CommandResult:
    B = _algebra(args)
    M = _checked_module(B, args.module)
    verdict = is_simple(M)
    data = {
        "verdict": verdict.kind,
        "reason": verdict.reason,
        "witness": [{"position": v.position, "vector": [str(c) for c in v.coords]} for v in verdict.witness],
    }
    text = str(verdict)
    if verdict.kind == "Simple" or verdict.kind == "NotSimple":
        labels = break_character(M)
        if labels:
            text += "\nbreaks: " + ", ".join(f"{i} {lab}" for i, lab in labels.items())
    return CommandResult(text, data)


def cmd_theta_iso(args) -> CommandResult:
    if args.field:
        F = parse_field_spec(args.field)
    elif args.config or args.fixture:
        F = _algebra(args).field
    else:
        F = parse_field_spec("rationals")
    a = parse_matrix(F, args.theta1)
    b = parse_matrix(F, args.theta2)
    iso = theta_isomorphic(a, b)
    return CommandResult("isomorphic" if iso else "not isomorphic", {"isomorphic": iso})


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="algebra configuration file")
    common.add_argument("--fixture", help="bundled example algebra, by name")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    orbit_opts = argparse.ArgumentParser(add_help=False)
    orbit_opts.add_argument("-p", "--point", required=True, help='comma-separated coordinates, e.g. "1,1"')
    orbit_opts.add_argument("--window", type=int, default=5, help="half-width of the window on infinite orbits")
    orbit_opts.add_argument("--max-order", type=int, default=64, help="longest cycle searched for")

    out_opts = argparse.ArgumentParser(add_help=False)
    out_opts.add_argument("-o", "--output", help="file or directory for module files")

    parser = argparse.ArgumentParser(prog="bralg", description="Exact computations with BR algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help_: str, parents=()):
        p = sub.add_parser(name, parents=[common, *parents], help=help_)
        p.set_defaults(func=func)
        return p

    add("info", cmd_info, "summarize the algebra")
    p = add("component", cmd_component, "generators of the degree-n component ideal")
    p.add_argument("-n", type=int, required=True)
    p = add("mul", cmd_mul, "multiply two graded elements")
    p.add_argument("u")
    p.add_argument("v")
    add("is-gwa", cmd_is_gwa, "recognize a generalized Weyl algebra")
    p = add("is-central", cmd_is_central, "decide whether an element is central")
    p.add_argument("u")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p = add("lift", cmd_lift, "lift a ring automorphism to the algebra")
    p.add_argument("--phi", required=True, help='images, e.g. "z1=-z1, z2=z2"')
    p.add_argument("--phi-inverse", required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--element", help="graded element to map")
    add("gkdim", cmd_gkdim, "Gelfand-Kirillov dimension")
    add("orbit", cmd_orbit, "orbit of a point", [orbit_opts])
    add("breaks", cmd_breaks, "break positions on the orbit of a point", [orbit_opts])
    p = add("witness", cmd_witness, "weight module joining two S(B) points", [orbit_opts, out_opts])
    p.add_argument("-k", type=int, required=True)
    p = add("simples", cmd_simples, "classified simple weight modules on an orbit", [orbit_opts, out_opts])
    p.add_argument("--theta", help='invertible matrix "a,b;c,d" for orbits without breaks')
    p.add_argument("--theta-base", type=int, default=0)
    p = add("verify", cmd_verify, "check a module file")
    p.add_argument("module")
    p = add("act", cmd_act, "act with a homogeneous element on a weight vector")
    p.add_argument("module")
    p.add_argument("-u", required=True, help="homogeneous element, e.g. (z1-1)*t")
    p.add_argument("--position", type=int, required=True)
    p.add_argument("--vector", required=True, help='coordinates, e.g. "1"')
    p = add("is-simple", cmd_is_simple, "decide simplicity of a module file")
    p.add_argument("module")
    p = add("theta-iso", cmd_theta_iso, "compare two theta maps up to conjugacy")
    p.add_argument("theta1")
    p.add_argument("theta2")
    p.add_argument("--field", help="field when no algebra is given (default rationals)")
    return parser


def run(argv: list[str] | None = None) -> tuple[CommandResult, bool]:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except PARSE_ERRORS as exc:
        result = CommandResult(f"error: {exc}", {"error": "parse", "message": str(exc)}, EXIT_PARSE)
    except PRECONDITION_ERRORS as exc:
        result = CommandResult(f"error: {exc}", {"error": "precondition", "message": str(exc)}, EXIT_PRECONDITION)
    except VerificationFailed as exc:
        result = CommandResult(f"error: verification failed\n{exc}", {"error": "verify", "message": str(exc)},
                               EXIT_VERIFY)
    return result, args.json


def main(argv: list[str] | None = None) -> int:
    result, as_json = run(argv)
    stream = sys.stderr if "error" in result.data else sys.stdout
    print(result.render(as_json), file=stream)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
