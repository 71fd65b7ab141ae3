"""Dense exact matrices over a FieldSpec, univariate polynomials, invariant factors."""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import FieldElement, FieldSpec

__all__ = [
    "Matrix",
    "SpanBuilder",
    "companion",
    "invariant_factors",
    "minimal_polynomial",
    "similar",
]


class Matrix:
    """Immutable matrix; shape is explicit so 0 x k matrices are representable."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldSpec, nrows: int, ncols: int, rows: Sequence[Sequence] | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            zero = field.zero
            self.rows = tuple((zero,) * ncols for _ in range(nrows))
        else:
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ValueError(f"rows do not form a {nrows}x{ncols} matrix")
            self.rows = tuple(tuple(field(x) for x in r) for r in rows)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> Matrix:
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        return cls.scalar(field, n, field.one)

    @classmethod
    def scalar(cls, field: FieldSpec, n: int, c) -> Matrix:
        c = field(c)
        zero = field.zero
        return cls(field, n, n, [[c if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.ncols, self.nrows, [self.column(j) for j in range(self.ncols)])

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix(self.field, self.nrows, self.ncols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.nrows, self.ncols, [[-a for a in r] for r in self.rows])

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix(self.field, self.nrows, self.ncols, [[a * c for a in r] for r in self.rows])

    def __rmul__(self, c) -> Matrix:
        return self.scale(c)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                s = zero
                for a, b in zip(r, col):
                    if not a.is_zero() and not b.is_zero():
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix(self.field, self.nrows, other.ncols, out)

    def apply(self, vec: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for a {self.shape} matrix")
        zero = self.field.zero
        out = []
        for r in self.rows:
            s = zero
            for a, b in zip(r, vec):
                if not a.is_zero() and not b.is_zero():
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def rank(self) -> int:
        return len(_rref(self.rows, self.ncols)[1])

    def inverse(self) -> Matrix:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("only square matrices are invertible")
        one, zero = self.field.one, self.field.zero
        aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        rows, pivots = _rref(aug, 2 * n)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.field, n, n, [r[n:] for r in rows[:n]])

    def nullspace(self) -> list[tuple[FieldElement, ...]]:
        rows, pivots = _rref(self.rows, self.ncols)
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [self.field.zero] * self.ncols
            v[f] = self.field.one
            for r, p in zip(rows, pivots):
                v[p] = -r[f]
            basis.append(tuple(v))
        return basis

    def power(self, k: int) -> Matrix:
        result = Matrix.identity(self.field, self.nrows)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_scalar(self) -> bool:
        return self == Matrix.scalar(self.field, self.nrows, self.rows[0][0]) if self.nrows else True

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, {self})"


def parse_matrix(field: FieldSpec, text: str) -> Matrix:
    """Rows separated by ';', entries by ','; optional surrounding brackets."""
    from .parsing import split_top_level

    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    rows = [split_top_level(r) for r in split_top_level(text, ";") if r.strip()]
    return Matrix.from_rows(field, [[field.parse(x) for x in r] for r in rows])


def _rref(rows: Sequence[Sequence[FieldElement]], ncols: int):
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


class SpanBuilder:
    """Incrementally maintained echelon basis of a subspace of field^n."""

    def __init__(self, field: FieldSpec, n: int):
        self.field = field
        self.n = n
        self._rows: list[list[FieldElement]] = []  # reduced, pivot entry 1
        self._pivots: list[int] = []
        self.basis: list[tuple[FieldElement, ...]] = []  # original vectors added

    def __len__(self) -> int:
        return len(self.basis)

    def reduce(self, vec: Sequence[FieldElement]) -> list[FieldElement]:
        v = list(vec)
        for row, p in zip(self._rows, self._pivots):
            c = v[p]
            if not c.is_zero():
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains(self, vec: Sequence[FieldElement]) -> bool:
        return all(x.is_zero() for x in self.reduce(vec))

    def add(self, vec: Sequence[FieldElement]) -> bool:
        """Add vec; returns True when it enlarged the span."""
        v = self.reduce(vec)
        p = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if p is None:
            return False
        inv = v[p].inverse()
        v = [x * inv for x in v]
        for k, row in enumerate(self._rows):
            c = row[p]
            if not c.is_zero():
                self._rows[k] = [x - c * y for x, y in zip(row, v)]
        self._rows.append(v)
        self._pivots.append(p)
        self.basis.append(tuple(vec))
        return True


# ---------------------------------------------------------------------------
# univariate polynomials, coefficient lists lowest degree first


def _trim(a: list) -> list:
    while a and a[-1].is_zero():
        a.pop()
    return a


def upoly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    field_zero = b[0] * 0
    if len(a) < len(b):
        return [], a
    quot = [field_zero] * (len(a) - len(b) + 1)
    inv = b[-1].inverse()
    for k in range(len(quot) - 1, -1, -1):
        c = a[k + len(b) - 1] * inv
        quot[k] = c
        if not c.is_zero():
            for i, d in enumerate(b):
                a[k + i] = a[k + i] - c * d
    return _trim(quot), _trim(a[: len(b) - 1])


def upoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def upoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    zero = (a or b)[0] * 0 if (a or b) else None
    out = [(a[i] if i < len(a) else zero) - (b[i] if i < len(b) else zero) for i in range(n)]
    return _trim(out)


def upoly_monic(a: list) -> list:
    a = _trim(list(a))
    if not a:
        return a
    inv = a[-1].inverse()
    return [x * inv for x in a]


def upoly_str(a: Sequence[FieldElement], var: str = "x") -> str:
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = f"({c})" if c.needs_parens() else str(c)
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def companion(field: FieldSpec, coeffs: Sequence) -> Matrix:
    """Companion matrix of the monic polynomial with the given low-to-high coefficients."""
    coeffs = [field(c) for c in coeffs]
    coeffs = upoly_monic(coeffs)
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("companion matrix needs degree >= 1")
    zero, one = field.zero, field.one
    rows = []
    for i in range(n):
        row = [zero] * n
        if i > 0:
            row[i - 1] = one
        row[n - 1] = -coeffs[i]
        rows.append(row)
    return Matrix(field, n, n, rows)


def minimal_polynomial(A: Matrix) -> list[FieldElement]:
    """Monic minimal polynomial via the first dependency among I, A, A^2, ..."""
    n = A.nrows
    span = SpanBuilder(A.field, n * n)
    powers = [Matrix.identity(A.field, n)]
    # track coordinates: solve for dependency with an augmented system
    vectors = []
    while True:
        P = powers[-1]
        vectors.append(P.flat())
        if not span.add(P.flat()):
            break
        powers.append(P @ A)
    k = len(vectors) - 1
    # solve sum_{i<k} c_i vec_i = vec_k
    cols = Matrix(A.field, n * n, k, [[vectors[j][r] for j in range(k)] for r in range(n * n)]) if k else None
    if k == 0:
        return [A.field.one]
    aug = [list(cols.rows[r]) + [vectors[k][r]] for r in range(n * n)]
    rows, pivots = _rref(aug, k + 1)
    coeffs = [A.field.zero] * k
    for row, p in zip(rows, pivots):
        coeffs[p] = row[k]
    return [-c for c in coeffs] + [A.field.one]


def poly_of_matrix(coeffs: Sequence[FieldElement], A: Matrix) -> Matrix:
    out = Matrix.zeros(A.field, A.nrows, A.ncols)
    P = Matrix.identity(A.field, A.nrows)
    for c in coeffs:
        out = out + P.scale(c)
        P = P @ A
    return out


def invariant_factors(A: Matrix) -> list[list[FieldElement]]:
    """Non-unit invariant factors of A (monic, each dividing the next).

    Smith normal form of xI - A over field[x].
    """
    n = A.nrows
    if n != A.ncols:
        raise ValueError("invariant factors need a square matrix")
    field = A.field
    M = [[_trim([-A[i, j]] + ([field.one] if i == j else [])) for j in range(n)] for i in range(n)]
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if M[i][j] and (best is None or len(M[i][j]) < len(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
            pivot = M[t][t]
            dirty = False
            for i in range(t + 1, n):
                if M[i][t]:
                    quot, rem = upoly_divmod(M[i][t], pivot)
                    M[i] = [upoly_sub(x, upoly_mul(quot, y)) for x, y in zip(M[i], M[t])]
                    if rem:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    quot, rem = upoly_divmod(M[t][j], pivot)
                    for row in M:
                        row[j] = upoly_sub(row[j], upoly_mul(quot, row[t]))
                    if rem:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if M[i][j] and upoly_divmod(M[i][j], pivot)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            M[t] = [upoly_sub(x, [-c for c in y]) if y else x for x, y in zip(M[t], M[bad])]
        M[t][t] = upoly_monic(M[t][t])
    return [M[i][i] for i in range(n) if len(M[i][i]) > 1]


def similar(A: Matrix, B: Matrix) -> bool:
    """Matrix conjugacy over the base field, by comparing invariant factors."""
    if A.shape != B.shape or A.field != B.field:
        return False
    return invariant_factors(A) == invariant_factors(B)
