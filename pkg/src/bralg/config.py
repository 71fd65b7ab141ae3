"""Section-based algebra configuration files.

::

    [field]
    cyclotomic 3

    [ring]
    vars = z1, z2

    [sigma]
    z1 = q*z1
    z2 = q^2*z2

    [sigma_inverse]
    z1 = q^2*z1
    z2 = q*z2

    [H]
    z1 - q^2
    z2 - q

    [J]
    z1 - 1
    z2 - 1

Lines starting with ``#`` are comments.  [ring] also accepts
``order = grevlex|lex``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .bralgebra import BRAlgebra
from .groebner import Ideal
from .parsing import ParseError
from .polyring import AutomorphismError, PolyRing, RingAutomorphism
from .scalars import FieldSpec, parse_field_spec

__all__ = ["AlgebraConfig", "ConfigError", "fixture_names", "load_config", "load_fixture", "parse_config"]

SECTIONS = ("field", "ring", "sigma", "sigma_inverse", "H", "J")


class ConfigError(ParseError):
    def __init__(self, message: str, lineno: int | None = None, source: str = "<config>"):
        where = f"{source}:{lineno}: " if lineno is not None else f"{source}: "
        super().__init__(where + message)
        self.lineno = lineno


@dataclass(frozen=True)
class AlgebraConfig:
    field: FieldSpec
    vars: tuple[str, ...]
    sigma_forward: tuple[str, ...]
    sigma_backward: tuple[str, ...]
    H_gens: tuple[str, ...]
    J_gens: tuple[str, ...]
    order: str = "grevlex"
    source: str = "<config>"

    def ring(self) -> PolyRing:
        return PolyRing(self.field, self.vars, self.order)

    def build(self) -> BRAlgebra:
        ring = self.ring()
        sigma = RingAutomorphism.from_strings(ring, self.sigma_forward, self.sigma_backward)
        H = Ideal(ring, [ring.parse(h) for h in self.H_gens])
        J = Ideal(ring, [ring.parse(j) for j in self.J_gens])
        return BRAlgebra(ring, sigma, H, J)


def parse_config(text: str, source: str = "<config>") -> AlgebraConfig:
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in SECTIONS:
                raise ConfigError(f"unknown section [{name}]", lineno, source)
            if name in sections:
                raise ConfigError(f"duplicate section [{name}]", lineno, source)
            sections[name] = []
            current = name
            continue
        if current is None:
            raise ConfigError("content before the first section", lineno, source)
        sections[current].append((lineno, line))
    for name in SECTIONS:
        if name not in sections:
            raise ConfigError(f"missing section [{name}]", None, source)

    field_lines = sections["field"]
    if len(field_lines) != 1:
        raise ConfigError("[field] takes exactly one line", field_lines[0][0] if field_lines else None, source)
    try:
        field = parse_field_spec(field_lines[0][1])
    except ValueError as exc:
        raise ConfigError(str(exc), field_lines[0][0], source) from None

    ring_keys = _key_values(sections["ring"], source)
    for key, (lineno, _) in ring_keys.items():
        if key not in ("vars", "order"):
            raise ConfigError(f"unknown key {key!r} in [ring]", lineno, source)
    if "vars" not in ring_keys:
        raise ConfigError("[ring] needs 'vars'", None, source)
    vars_ = tuple(v.strip() for v in ring_keys["vars"][1].split(","))
    order = ring_keys["order"][1] if "order" in ring_keys else "grevlex"
    try:
        ring = PolyRing(field, vars_, order)
    except ValueError as exc:
        raise ConfigError(str(exc), ring_keys["vars"][0], source) from None

    images = {}
    lines = {}
    for name in ("sigma", "sigma_inverse"):
        kv = _key_values(sections[name], source)
        for key, (lineno, value) in kv.items():
            if key not in vars_:
                raise ConfigError(f"unknown key {key!r} in [{name}]", lineno, source)
            _check_poly(ring, value, lineno, source)
        missing = [v for v in vars_ if v not in kv]
        if missing:
            raise ConfigError(f"[{name}] gives no image for {', '.join(missing)}", None, source)
        images[name] = tuple(kv[v][1] for v in vars_)
        lines[name] = {v: kv[v][0] for v in vars_}
    try:
        RingAutomorphism.from_strings(ring, images["sigma"], images["sigma_inverse"])
    except AutomorphismError as exc:
        raise ConfigError(str(exc), lines["sigma_inverse"].get(exc.variable), source) from None

    gens = {}
    for name in ("H", "J"):
        if not sections[name]:
            raise ConfigError(f"[{name}] needs at least one generator", None, source)
        for lineno, value in sections[name]:
            _check_poly(ring, value, lineno, source)
        gens[name] = tuple(value for _, value in sections[name])

    return AlgebraConfig(field, vars_, images["sigma"], images["sigma_inverse"], gens["H"], gens["J"],
                         order, source)


def _key_values(lines, source) -> dict[str, tuple[int, str]]:
    out = {}
    for lineno, line in lines:
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError("expected 'key = value'", lineno, source)
        key = key.strip()
        if key in out:
            raise ConfigError(f"duplicate key {key!r}", lineno, source)
        out[key] = (lineno, value.strip())
    return out


def _check_poly(ring: PolyRing, text: str, lineno: int, source: str) -> None:
    try:
        ring.parse(text)
    except ParseError as exc:
        raise ConfigError(str(exc), lineno, source) from None


def load_config(path: str | Path) -> AlgebraConfig:
    path = Path(path)
    return parse_config(path.read_text(), source=str(path))


def fixture_names() -> list[str]:
    root = resources.files("bralg") / "fixtures"
    return sorted(p.name[: -len(".cfg")] for p in root.iterdir() if p.name.endswith(".cfg"))


def load_fixture(name: str) -> AlgebraConfig:
    """One of the bundled example configs, by file stem."""
    res = resources.files("bralg") / "fixtures" / f"{name}.cfg"
    if not res.is_file():
        raise FileNotFoundError(f"no bundled fixture {name!r}; have {', '.join(fixture_names())}")
    return parse_config(res.read_text(), source=f"fixture:{name}")
