"""Exact dense linear algebra over a field, plus rank over k(c_1, ..., c_m).

Plain Gauss-Jordan elimination is used for matrices over the field.  Matrices
whose entries are polynomials in adjoined parameters go through fraction-free
(Bareiss) elimination, so every intermediate entry is itself a minor.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .exactfield import FieldSpec


class Matrix:
    """Row-major matrix of scalars from one field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldSpec, rows: Iterable[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = [[field(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def _raw(cls, field, rows, ncols):
        obj = cls.__new__(cls)
        obj.field = field
        obj.rows = rows
        obj.nrows = len(rows)
        obj.ncols = ncols
        return obj

    def copy(self) -> "Matrix":
        return Matrix._raw(self.field, [list(r) for r in self.rows], self.ncols)

    def transpose(self) -> "Matrix":
        cols = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Matrix._raw(self.field, cols, self.nrows)

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        z = self.field.zero
        cols = other.transpose().rows
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), z) for c in cols])
        return Matrix._raw(self.field, out, other.ncols)

    def apply(self, v: Sequence) -> list:
        z = self.field.zero
        return [sum((a * b for a, b in zip(r, v) if a), z) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.ncols == other.ncols and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {[[str(x) for x in r] for r in self.rows]})"


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns (M is not modified)."""
    A = [list(r) for r in M.rows]
    pivots: list[int] = []
    r = 0
    for c in range(M.ncols):
        if r == len(A):
            break
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = M.field.one / A[r][c]
        row = [x * inv if x else x for x in A[r]]
        A[r] = row
        for i in range(len(A)):
            if i != r:
                f = A[i][c]
                if f:
                    Ai = A[i]
                    for j in range(c, M.ncols):
                        if row[j]:
                            Ai[j] = Ai[j] - f * row[j]
        pivots.append(c)
        r += 1
    return Matrix._raw(M.field, A, M.ncols), len(pivots), pivots


def rank(M: Matrix) -> int:
    return rref(M)[1]


def kernel_basis(M: Matrix) -> list[list]:
    """Basis of {v : M v = 0}; one vector per non-pivot column."""
    R, rk, pivots = rref(M)
    one, zero = M.field.one, M.field.zero
    pivset = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = [zero] * M.ncols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -R.rows[i][f]
        basis.append(v)
    return basis


def solve(M: Matrix, b: Sequence) -> list | None:
    """Some x with M x = b, or ``None`` when the system is inconsistent."""
    if len(b) != M.nrows:
        raise ValueError("right-hand side has wrong length")
    aug = Matrix._raw(M.field, [list(r) + [M.field(x)] for r, x in zip(M.rows, b)], M.ncols + 1)
    R, rk, pivots = rref(aug)
    if pivots and pivots[-1] == M.ncols:
        return None
    x = [M.field.zero] * M.ncols
    for i, pc in enumerate(pivots):
        x[pc] = R.rows[i][M.ncols]
    return x


class Subspace:
    """Subspace of k^n kept as RREF rows with their pivot columns."""

    __slots__ = ("field", "n", "rows", "pivots")

    def __init__(self, field: FieldSpec, n: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.n = n
        self.rows: list[list] = []
        self.pivots: list[int] = []
        vecs = [list(v) for v in vectors]
        if vecs:
            R, rk, piv = rref(Matrix(field, vecs, n))
            self.rows = R.rows[:rk]
            self.pivots = piv

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        s = cls(field, n)
        one, zero = field.one, field.zero
        s.rows = [[one if j == i else zero for j in range(n)] for i in range(n)]
        s.pivots = list(range(n))
        return s

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_full(self) -> bool:
        return self.dim == self.n

    def reduce(self, v: Sequence) -> list:
        """Residual of v after clearing every pivot coordinate."""
        w = list(v)
        for row, pc in zip(self.rows, self.pivots):
            f = w[pc]
            if f:
                for j in range(pc, self.n):
                    if row[j]:
                        w[j] = w[j] - f * row[j]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_all(self, vs: Iterable[Sequence]) -> bool:
        return all(self.contains(v) for v in vs)

    def add(self, v: Sequence) -> bool:
        """Insert v, keeping RREF; returns False if v was already in the span."""
        w = self.reduce(v)
        pc = next((j for j, x in enumerate(w) if x), None)
        if pc is None:
            return False
        inv = self.field.one / w[pc]
        w = [x * inv if x else x for x in w]
        for row in self.rows:
            f = row[pc]
            if f:
                for j in range(pc, self.n):
                    if w[j]:
                        row[j] = row[j] - f * w[j]
        k = next((i for i, p in enumerate(self.pivots) if p > pc), len(self.pivots))
        self.rows.insert(k, w)
        self.pivots.insert(k, pc)
        return True

    def nonpivots(self) -> list[int]:
        ps = set(self.pivots)
        return [j for j in range(self.n) if j not in ps]

    def complement_coords(self, v: Sequence) -> list:
        """Coordinates of v modulo this subspace, on the non-pivot columns."""
        w = self.reduce(v)
        return [w[j] for j in self.nonpivots()]

    def orthogonal(self) -> list[list]:
        """Basis of {u : <row, u> = 0 for all rows} (the pairing is the dot product)."""
        if not self.rows:
            return Subspace.full(self.field, self.n).rows
        return kernel_basis(Matrix._raw(self.field, self.rows, self.n))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.n == other.n
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_all(self.rows)

    def __repr__(self):
        return f"Subspace(dim {self.dim} in {self.n})"


# polynomials in adjoined parameters


class ParamPoly:
    """Sparse polynomial over k in parameters c_1..c_m (exponent tuple -> scalar)."""

    __slots__ = ("field", "m", "terms")

    def __init__(self, field: FieldSpec, m: int, terms=None):
        self.field = field
        self.m = m
        self.terms = {tuple(e): field(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, field, m, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.m = m
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, field: FieldSpec, m: int, c) -> "ParamPoly":
        c = field(c)
        return cls._raw(field, m, {(0,) * m: c} if c else {})

    @classmethod
    def param(cls, field: FieldSpec, m: int, i: int) -> "ParamPoly":
        e = [0] * m
        e[i] = 1
        return cls._raw(field, m, {tuple(e): field.one})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return ParamPoly._raw(self.field, self.m, out)

    def __neg__(self):
        return ParamPoly._raw(self.field, self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            c = self.field(other)
            if not c:
                return ParamPoly._raw(self.field, self.m, {})
            return ParamPoly._raw(self.field, self.m, {e: v * c for e, v in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return ParamPoly._raw(self.field, self.m, out)

    __rmul__ = __mul__

    def exquo(self, other: "ParamPoly") -> "ParamPoly":
        """Exact quotient; raises ArithmeticError if ``other`` does not divide."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = max(other.terms)
        lc = other.terms[lead]
        rem = dict(self.terms)
        quo: dict = {}
        while rem:
            top = max(rem)
            e = tuple(a - b for a, b in zip(top, lead))
            if min(e, default=0) < 0:
                raise ArithmeticError("inexact polynomial division")
            c = rem[top] / lc
            quo[e] = c
            for oe, oc in other.terms.items():
                k = tuple(a + b for a, b in zip(oe, e))
                v = rem.get(k, 0) - c * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return ParamPoly._raw(self.field, self.m, quo)

    def evaluate(self, point: Sequence):
        total = self.field.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def __eq__(self, other):
        return isinstance(other, ParamPoly) and self.terms == other.terms

    def __repr__(self):
        return f"ParamPoly({len(self.terms)} terms)"


class ParamMatrix:
    """Matrix with :class:`ParamPoly` entries sharing one parameter ring."""

    __slots__ = ("field", "m", "nrows", "ncols", "rows")

    def __init__(self, field: FieldSpec, m: int, rows: list[list[ParamPoly]], ncols: int):
        self.field = field
        self.m = m
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def from_linear(cls, coefficient_matrices: Sequence[Matrix]) -> "ParamMatrix":
        """Sum of c_i * M_i for the given same-shape scalar matrices."""
        m = len(coefficient_matrices)
        M0 = coefficient_matrices[0]
        field = M0.field
        rows = []
        for i in range(M0.nrows):
            row = []
            for j in range(M0.ncols):
                terms = {}
                for k, Mk in enumerate(coefficient_matrices):
                    c = Mk.rows[i][j]
                    if c:
                        e = [0] * m
                        e[k] = 1
                        terms[tuple(e)] = c
                row.append(ParamPoly._raw(field, m, terms))
            rows.append(row)
        return cls(field, m, rows, M0.ncols)

    def __matmul__(self, other: "ParamMatrix") -> "ParamMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        zero = ParamPoly._raw(self.field, self.m, {})
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = zero
                for k, a in enumerate(r):
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ParamMatrix(self.field, self.m, out, other.ncols)

    def evaluate(self, point: Sequence) -> Matrix:
        pt = [self.field(x) for x in point]
        return Matrix._raw(self.field, [[e.evaluate(pt) for e in r] for r in self.rows], self.ncols)


def generic_rank(M: ParamMatrix) -> int:
    """Rank over the rational function field k(c_1..c_m), by Bareiss elimination."""
    A = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    prev = ParamPoly.constant(M.field, M.m, 1)
    r = 0
    for c in range(nc):
        if r == nr:
            break
        cands = [i for i in range(r, nr) if A[i][c]]
        if not cands:
            continue
        p = min(cands, key=lambda i: len(A[i][c].terms))
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, nr):
            aic = A[i][c]
            for j in range(c + 1, nc):
                t = piv * A[i][j]
                if aic and A[r][j]:
                    t = t - aic * A[r][j]
                A[i][j] = t.exquo(prev) if t else t
            A[i][c] = ParamPoly._raw(M.field, M.m, {})
        prev = piv
        r += 1
    return r
