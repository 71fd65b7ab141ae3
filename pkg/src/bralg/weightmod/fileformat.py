"""Line-based text format for weight modules.

Example::

    weight-module 1
    algebra example.cfg
    field cyclotomic 3
    vars z1, z2
    base 1, 1
    orbit cyclic 3
    windowed_semantics false
    label M(O,0)
    mult 0 0
    mult 1 1
    mult 2 1
    up 1 0 1x1
    q - 1
    down 1 0 1x1
    2*q + 1
    end

Matrix blocks are ``up|down EDGE GEN RxC`` followed by R rows of C
comma-separated scalars, with no rows at all when C is 0.  Blocks left
out are zero.  The writer emits every block, so reading a written file
gives back equal matrices.
"""

from __future__ import annotations

from ..bralgebra import BRAlgebra
from ..linalg import Matrix
from ..parsing import ParseError, split_top_level
from ..spectrum import OrbitPoint, orbit, windowed_view
from .module import VerificationFailed, WeightModule, verify

__all__ = ["MAGIC", "parse_module", "read_module", "write_module"]

MAGIC = "weight-module 1"


def write_module(M: WeightModule, algebra_name: str = "") -> str:
    view = M.orbit
    lines = [MAGIC]
    if algebra_name:
        lines.append(f"algebra {algebra_name}")
    lines.append(f"field {M.field}")
    lines.append("vars " + ", ".join(M.algebra.ring.vars))
    lines.append(f"base {view.base}")
    lines.append(f"orbit {view.describe()}")
    lines.append(f"windowed_semantics {'true' if M.windowed_semantics else 'false'}")
    if M.label:
        lines.append(f"label {M.label}")
    for i in view.positions:
        lines.append(f"mult {i} {M.mult[i]}")
    for kind, table in (("up", M.up), ("down", M.down)):
        for (i, g), m in sorted(table.items()):
            lines.append(f"{kind} {i} {g} {m.nrows}x{m.ncols}")
            if m.ncols:
                for row in m.rows:
                    lines.append(", ".join(str(x) for x in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def _fail(msg: str, lineno: int, line: str):
    raise ParseError(f"line {lineno}: {msg}", line)


def read_module(text: str, B: BRAlgebra) -> WeightModule:
    """Parse a module file against the algebra B; raises unless it verifies."""
    M = parse_module(text, B)
    report = verify(M)
    if not report.ok:
        raise VerificationFailed(report)
    return M


def parse_module(text: str, B: BRAlgebra) -> WeightModule:
    """Parse a module file against the algebra B without verifying it."""
    lines = [(n + 1, ln.strip()) for n, ln in enumerate(text.splitlines())]
    lines = [(n, ln) for n, ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0][1] != MAGIC:
        raise ParseError(f"expected header {MAGIC!r}", lines[0][1] if lines else "")
    header: dict[str, str] = {}
    mult: dict[int, int] = {}
    up: dict = {}
    down: dict = {}
    F = B.field
    k = 1
    ended = False
    while k < len(lines):
        n, line = lines[k]
        k += 1
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "end":
            ended = True
            break
        if word in ("algebra", "field", "vars", "base", "orbit", "windowed_semantics", "label"):
            if word in header:
                _fail(f"duplicate {word!r}", n, line)
            header[word] = rest
        elif word == "mult":
            parts = rest.split()
            if len(parts) != 2:
                _fail("expected 'mult POSITION DIM'", n, line)
            try:
                mult[int(parts[0])] = int(parts[1])
            except ValueError:
                _fail("position and dimension must be integers", n, line)
        elif word in ("up", "down"):
            parts = rest.split()
            try:
                edge, gen = int(parts[0]), int(parts[1])
                r, c = (int(x) for x in parts[2].split("x"))
            except (ValueError, IndexError):
                _fail(f"expected '{word} EDGE GEN RxC'", n, line)
            rows = [[] for _ in range(r)] if not c else []
            for _ in range(r if c else 0):
                if k >= len(lines):
                    _fail("matrix block ends early", n, line)
                rn, rl = lines[k]
                k += 1
                entries = split_top_level(rl)
                if len(entries) != c:
                    _fail(f"expected {c} entries", rn, rl)
                try:
                    rows.append([F.parse(x) for x in entries])
                except ParseError as exc:
                    _fail(str(exc), rn, rl)
            (up if word == "up" else down)[(edge, gen)] = Matrix(F, r, c, rows)
        else:
            _fail(f"unknown key {word!r}", n, line)
    if not ended:
        raise ParseError("missing 'end'")
    for key in ("field", "vars", "base", "orbit"):
        if key not in header:
            raise ParseError(f"missing {key!r} line")
    if header["field"] != str(F):
        raise ParseError(f"module is over {header['field']}, algebra over {F}")
    if [v.strip() for v in header["vars"].split(",")] != list(B.ring.vars):
        raise ParseError("module variables do not match the algebra")
    base = OrbitPoint.parse(B.ring, header["base"])
    kind = header["orbit"].split()
    semantics = header.get("windowed_semantics", "false")
    if semantics not in ("true", "false"):
        raise ParseError("windowed_semantics must be true or false")
    if kind[:1] == ["cyclic"] and len(kind) == 2:
        size = int(kind[1])
        view = orbit(B, base, window=0, max_order=size)
        if not view.is_cyclic or view.size != size:
            raise ParseError(f"the orbit of ({base}) is not cyclic of size {size}")
    elif kind[:1] == ["windowed"] and len(kind) == 3:
        view = windowed_view(B, base, int(kind[1]), int(kind[2]))
    else:
        raise ParseError(f"bad orbit line {header['orbit']!r}")
    try:
        return WeightModule(B, view, mult, up, down, windowed_semantics=semantics == "true",
                            label=header.get("label", ""))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
