"""Dense exact linear algebra over a FieldSpec.

Matrices store raw canonical scalars (Fraction over Q, int residues over
GF(p)) in tuples of tuples. Everything is pure and deterministic: pivots are
chosen first-nonzero, kernels come out of the reduced row echelon form.
Invariant factors are computed from the Smith normal form of xI - A over
k[x], which is exact over any field and replaces eigenvalue-based canonical
forms.
"""

from __future__ import annotations

from .errors import DimensionMismatch, InternalCheckError, NonSquare, SingularMatrix
from .scalar import FieldSpec


class Matrix:
    """An immutable rows x cols matrix of raw scalars over a FieldSpec."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, entries):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged rows")
        self.field = field
        self.rows = len(rows)
        self.cols = len(rows[0])
        self.entries = rows

    @classmethod
    def _raw(cls, field, rows_tuple):
        m = object.__new__(cls)
        m.field = field
        m.rows = len(rows_tuple)
        m.cols = len(rows_tuple[0])
        m.entries = rows_tuple
        return m

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls._raw(
            field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        )

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        zero = field.zero
        return cls._raw(field, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, field: FieldSpec, diag) -> "Matrix":
        d = [field.coerce(x) for x in diag]
        zero = field.zero
        return cls._raw(
            field,
            tuple(tuple(d[i] if i == j else zero for j in range(len(d))) for i in range(len(d))),
        )

    @classmethod
    def from_columns(cls, field: FieldSpec, columns) -> "Matrix":
        cols = [tuple(field.coerce(x) for x in c) for c in columns]
        return cls._raw(field, tuple(zip(*cols)))

    @classmethod
    def stack_rows(cls, mats) -> "Matrix":
        first = mats[0]
        if any(m.cols != first.cols or m.field != first.field for m in mats):
            raise DimensionMismatch("stacked matrices must share width and field")
        rows = tuple(row for m in mats for row in m.entries)
        return cls._raw(first.field, rows)

    # -- basics ---------------------------------------------------------------

    def at(self, i: int, j: int):
        return self.entries[i][j]

    def row(self, i: int):
        return self.entries[i]

    def column(self, j: int):
        return tuple(r[j] for r in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix({self.field!r}, [{body}])"

    def _same_shape(self, other, op):
        if not isinstance(other, Matrix) or self.field != other.field:
            raise DimensionMismatch(f"{op}: incompatible operands")
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(f"{op}: shape mismatch")

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        self._same_shape(other, "add")
        red = self.field.reduce
        return Matrix._raw(
            self.field,
            tuple(
                tuple(red(a + b) for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other):
        self._same_shape(other, "sub")
        red = self.field.reduce
        return Matrix._raw(
            self.field,
            tuple(
                tuple(red(a - b) for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
        )

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        red = self.field.reduce
        return Matrix._raw(
            self.field, tuple(tuple(red(c * x) for x in row) for row in self.entries)
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise DimensionMismatch("matmul: mixed fields")
        if self.cols != other.rows:
            raise DimensionMismatch("matmul: inner dimensions differ")
        red = self.field.reduce
        cols = tuple(zip(*other.entries))
        return Matrix._raw(
            self.field,
            tuple(
                tuple(red(sum(a * b for a, b in zip(row, col))) for col in cols)
                for row in self.entries
            ),
        )

    def matvec(self, vec):
        if len(vec) != self.cols:
            raise DimensionMismatch("matvec: length mismatch")
        red = self.field.reduce
        return tuple(red(sum(a * b for a, b in zip(row, vec))) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(zip(*self.entries)))

    def trace(self):
        if not self.is_square():
            raise NonSquare("trace of a non-square matrix")
        return self.field.reduce(sum(self.entries[i][i] for i in range(self.rows)))

    def pow(self, k: int) -> "Matrix":
        if not self.is_square():
            raise NonSquare("power of a non-square matrix")
        if k < 0:
            return self.inverse().pow(-k)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def is_upper_triangular(self) -> bool:
        zero = self.field.zero
        return all(
            self.entries[i][j] == zero for i in range(self.rows) for j in range(min(i, self.cols))
        )

    def diagonal_entries(self):
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    # -- elimination ------------------------------------------------------------

    def det(self):
        """Exact determinant by ordinary Gaussian elimination."""
        if not self.is_square():
            raise NonSquare("determinant of a non-square matrix")
        field = self.field
        n = self.rows
        m = [list(row) for row in self.entries]
        det = field.one
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col]), None)
            if pivot is None:
                return field.zero
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = field.neg(det)
            pv = m[col][col]
            det = field.reduce(det * pv)
            inv = field.inv(pv)
            for r in range(col + 1, n):
                f = field.reduce(m[r][col] * inv)
                if f:
                    row_r, row_c = m[r], m[col]
                    for c in range(col, n):
                        row_r[c] = field.reduce(row_r[c] - f * row_c[c])
        return det

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot column tuple)."""
        field = self.field
        m = [list(row) for row in self.entries]
        pivots = []
        r = 0
        for col in range(self.cols):
            if r == self.rows:
                break
            pivot = next((i for i in range(r, self.rows) if m[i][col]), None)
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = field.inv(m[r][col])
            m[r] = [field.reduce(x * inv) for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][col]:
                    f = m[i][col]
                    m[i] = [field.reduce(a - f * b) for a, b in zip(m[i], m[r])]
            pivots.append(col)
            r += 1
        return Matrix._raw(field, tuple(tuple(row) for row in m)), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self):
        """Deterministic basis of the right null space, as coordinate tuples."""
        field = self.field
        rref, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        basis = []
        for f in free:
            v = [field.zero] * self.cols
            v[f] = field.one
            for i, p in enumerate(pivots):
                v[p] = field.neg(rref.entries[i][f])
            basis.append(tuple(v))
        return basis

    def solve(self, rhs):
        """One solution of self @ x = rhs, or None if inconsistent."""
        field = self.field
        if len(rhs) != self.rows:
            raise DimensionMismatch("solve: rhs length mismatch")
        aug = Matrix._raw(
            self.field,
            tuple(row + (field.coerce(b),) for row, b in zip(self.entries, rhs)),
        )
        rref, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [field.zero] * self.cols
        for i, p in enumerate(pivots):
            x[p] = rref.entries[i][self.cols]
        return tuple(x)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise NonSquare("inverse of a non-square matrix")
        field = self.field
        n = self.rows
        ident = Matrix.identity(field, n)
        aug = Matrix._raw(
            field, tuple(r + i for r, i in zip(self.entries, ident.entries))
        )
        rref, pivots = aug.rref()
        if len(pivots) < n or pivots[:n] != tuple(range(n)):
            raise SingularMatrix("matrix is not invertible")
        return Matrix._raw(field, tuple(row[n:] for row in rref.entries[:n]))

    def try_inverse(self):
        try:
            return self.inverse()
        except SingularMatrix:
            return None


# -- row space helpers (deterministic echelon bookkeeping) --------------------


class RowSpace:
    """Incremental RREF of a set of vectors; used for span and membership."""

    def __init__(self, field: FieldSpec, dim: int):
        self.field = field
        self.dim = dim
        self.rows: list[tuple] = []
        self.pivots: list[int] = []

    def _reduce(self, vec):
        field = self.field
        v = [field.coerce(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [field.reduce(a - f * b) for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Insert vec; True if it enlarged the span."""
        field = self.field
        v = self._reduce(vec)
        p = next((j for j in range(self.dim) if v[j]), None)
        if p is None:
            return False
        inv = field.inv(v[p])
        v = tuple(field.reduce(x * inv) for x in v)
        self.rows = [
            tuple(field.reduce(a - row[p] * b) for a, b in zip(row, v)) if row[p] else row
            for row in self.rows
        ]
        idx = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(idx, v)
        self.pivots.insert(idx, p)
        return True

    def contains(self, vec) -> bool:
        return all(not x for x in self._reduce(vec))

    def basis(self):
        return list(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)


def span_basis(field: FieldSpec, dim: int, vectors):
    """Canonical (RREF) basis of the span of the given coordinate vectors."""
    space = RowSpace(field, dim)
    for v in vectors:
        space.add(v)
    return space.basis()


# -- polynomials over the field ------------------------------------------------


class Polynomial:
    """Dense univariate polynomial with raw canonical coefficients.

    coeffs[i] is the coefficient of x^i; no trailing zeros; () is zero.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        c = [field.coerce(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, field, coeffs):
        p = object.__new__(cls)
        p.field = field
        p.coeffs = coeffs
        return p

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def constant(cls, field, c):
        c = field.coerce(c)
        return cls._raw(field, (c,) if c else ())

    @classmethod
    def x(cls, field):
        return cls._raw(field, (field.zero, field.one))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def leading(self):
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        field = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = field.reduce(out[i] + c)
        while out and not out[-1]:
            out.pop()
        return Polynomial._raw(field, tuple(out))

    def __neg__(self):
        neg = self.field.neg
        return Polynomial._raw(self.field, tuple(neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        field = self.field
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(field)
        out = [field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        red = field.reduce
        out = [red(c) for c in out]
        while out and not out[-1]:
            out.pop()
        return Polynomial._raw(field, tuple(out))

    def scale(self, c):
        field = self.field
        c = field.coerce(c)
        if not c:
            return Polynomial.zero(field)
        red = field.reduce
        return Polynomial._raw(field, tuple(red(c * a) for a in self.coeffs))

    def __divmod__(self, other: "Polynomial"):
        field = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [field.zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv_lead = field.inv(other.leading())
        d = other.degree
        red = field.reduce
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            f = red(rem[-1] * inv_lead)
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] = red(rem[k + i] - f * c)
            while rem and not rem[-1]:
                rem.pop()
        while q and not q[-1]:
            q.pop()
        return Polynomial._raw(field, tuple(q)), Polynomial._raw(field, tuple(rem))

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.leading()))

    def divides(self, other: "Polynomial") -> bool:
        return other.is_zero() or (not self.is_zero() and (other % self).is_zero())

    def __call__(self, value):
        field = self.field
        acc = field.zero
        for c in reversed(self.coeffs):
            acc = field.reduce(acc * value + c)
        return acc

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = str(c)
            else:
                xi = "x" if i == 1 else f"x^{i}"
                term = xi if c == self.field.one else f"{c}*{xi}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out


# -- invariant factors and similarity ------------------------------------------


def _char_matrix(a: Matrix):
    """xI - A as a mutable nested list of Polynomials."""
    field = a.field
    n = a.rows
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            c = field.neg(a.entries[i][j])
            if i == j:
                row.append(Polynomial(field, (c, field.one)))
            else:
                row.append(Polynomial._raw(field, (c,) if c else ()))
        out.append(row)
    return out


def _min_degree_position(m, t, n):
    best = None
    best_deg = None
    for i in range(t, n):
        for j in range(t, n):
            if not m[i][j].is_zero():
                d = m[i][j].degree
                if best_deg is None or d < best_deg:
                    best, best_deg = (i, j), d
                    if d == 0:
                        return best
    return best


def _smith_diagonal(m, n):
    """In-place Smith normal form over k[x]; returns the diagonal."""
    for t in range(n):
        if _min_degree_position(m, t, n) is None:
            break
        while True:
            i, j = _min_degree_position(m, t, n)
            if i != t:
                m[t], m[i] = m[i], m[t]
            if j != t:
                for row in m:
                    row[t], row[j] = row[j], row[t]
            pivot = m[t][t]
            dirty = False
            for i in range(t + 1, n):
                if not m[i][t].is_zero():
                    q, r = divmod(m[i][t], pivot)
                    if not q.is_zero():
                        m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if not r.is_zero():
                        dirty = True
            for j in range(t + 1, n):
                if not m[t][j].is_zero():
                    q, r = divmod(m[t][j], pivot)
                    if not q.is_zero():
                        for row in m:
                            row[j] = row[j] - q * row[t]
                    if not r.is_zero():
                        dirty = True
            if dirty:
                continue
            # row/col t are now zero off the pivot; enforce divisibility
            fix = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if not (m[i][j] % pivot).is_zero():
                        fix = i
                        break
                if fix is not None:
                    break
            if fix is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[fix])]
        m[t][t] = m[t][t].monic()
    return [m[i][i] for i in range(n)]


def invariant_factors(a: Matrix) -> list[Polynomial]:
    """Monic invariant factors f1 | f2 | ... of a square matrix over k.

    Computed as the nonconstant diagonal of the Smith normal form of xI - A;
    their product is the characteristic polynomial.
    """
    if not a.is_square():
        raise NonSquare("invariant factors of a non-square matrix")
    m = _char_matrix(a)
    diag = _smith_diagonal(m, a.rows)
    factors = [d for d in diag if d.degree >= 1]
    total = sum(f.degree for f in factors)
    if total != a.rows:
        raise InternalCheckError("invariant factor degrees do not sum to the dimension")
    for f, g in zip(factors, factors[1:]):
        if not f.divides(g):
            raise InternalCheckError("invariant factor divisibility chain broken")
    return factors


def is_similar(a: Matrix, b: Matrix) -> bool:
    """True iff A and B are conjugate over the field (hence over any extension)."""
    if not a.is_square() or not b.is_square():
        raise NonSquare("similarity needs square matrices")
    if a.rows != b.rows or a.field != b.field:
        raise DimensionMismatch("similarity needs same size and field")
    return invariant_factors(a) == invariant_factors(b)
