"""Finite-dimensional associative unital algebras via structure constants.

An Algebra is sealed by `validate`, which checks associativity on all basis
triples and the two-sided unit law. Elements are coordinate vectors over the
fixed basis; endomorphisms are matrices acting on coordinate columns.
Products use a sparse structure table, so desk-scale group algebras stay
cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AlgebraMismatch,
    BadUnit,
    CharTooSmall,
    DimensionMismatch,
    FrobformError,
    InternalCheckError,
    NotAssociative,
    NotAUnit,
    NotLocal,
)
from .linalg import Matrix, RowSpace, span_basis
from .scalar import FieldSpec

_UNSET = object()


class Algebra:
    """Immutable algebra; construct through `validate`."""

    __slots__ = (
        "field",
        "dim",
        "basis_names",
        "mul",
        "one",
        "radical_hint",
        "_left_mats",
        "_right_mats",
        "_radical",
        "_local",
        "_center",
    )

    def __init__(self, field, dim, basis_names, mul, one, radical_hint=None):
        self.field = field
        self.dim = dim
        self.basis_names = basis_names
        self.mul = mul  # mul[i][j] = ((k, coeff), ...) for e_i * e_j
        self.one = one
        self.radical_hint = radical_hint
        self._left_mats = None
        self._right_mats = None
        self._radical = _UNSET
        self._local = _UNSET
        self._center = _UNSET

    # -- elements ------------------------------------------------------------

    def element(self, coords) -> "AlgebraElement":
        coords = tuple(self.field.coerce(c) for c in coords)
        if len(coords) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates")
        return AlgebraElement(self, coords)

    def basis_element(self, i: int) -> "AlgebraElement":
        coords = [self.field.zero] * self.dim
        coords[i] = self.field.one
        return AlgebraElement(self, tuple(coords))

    def one_element(self) -> "AlgebraElement":
        return AlgebraElement(self, self.one)

    def zero_element(self) -> "AlgebraElement":
        return AlgebraElement(self, (self.field.zero,) * self.dim)

    def scalar_element(self, c) -> "AlgebraElement":
        c = self.field.coerce(c)
        red = self.field.reduce
        return AlgebraElement(self, tuple(red(c * v) for v in self.one))

    # -- raw coordinate products ----------------------------------------------

    def _mul_coords(self, x, y):
        field = self.field
        out = [field.zero] * self.dim
        mul = self.mul
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = mul[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, coeff in row[j]:
                    out[k] += c * coeff
        red = field.reduce
        return tuple(red(v) for v in out)

    def multiply(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraMismatch("elements from different algebras")
        return AlgebraElement(self, self._mul_coords(x.coords, y.coords))

    # -- regular representations ------------------------------------------------

    def _basis_left_mats(self):
        if self._left_mats is None:
            mats = []
            for i in range(self.dim):
                cols = []
                for j in range(self.dim):
                    col = [self.field.zero] * self.dim
                    for k, c in self.mul[i][j]:
                        col[k] = c
                    cols.append(col)
                mats.append(Matrix.from_columns(self.field, cols))
            self._left_mats = mats
        return self._left_mats

    def _basis_right_mats(self):
        if self._right_mats is None:
            mats = []
            for i in range(self.dim):
                cols = []
                for j in range(self.dim):
                    col = [self.field.zero] * self.dim
                    for k, c in self.mul[j][i]:
                        col[k] = c
                    cols.append(col)
                mats.append(Matrix.from_columns(self.field, cols))
            self._right_mats = mats
        return self._right_mats

    def left_mul(self, x: "AlgebraElement") -> "Endo":
        field = self.field
        cols = []
        for j in range(self.dim):
            col = [field.zero] * self.dim
            for i, xi in enumerate(x.coords):
                if xi:
                    for k, c in self.mul[i][j]:
                        col[k] += xi * c
            cols.append([field.reduce(v) for v in col])
        return Endo(self, Matrix.from_columns(field, cols))

    def right_mul(self, x: "AlgebraElement") -> "Endo":
        field = self.field
        cols = []
        for j in range(self.dim):
            col = [field.zero] * self.dim
            for i, xi in enumerate(x.coords):
                if xi:
                    for k, c in self.mul[j][i]:
                        col[k] += xi * c
            cols.append([field.reduce(v) for v in col])
        return Endo(self, Matrix.from_columns(field, cols))

    # -- units ---------------------------------------------------------------

    def try_inverse(self, x: "AlgebraElement") -> "AlgebraElement | None":
        inv_mat = self.left_mul(x).matrix.try_inverse()
        if inv_mat is None:
            return None
        z = AlgebraElement(self, inv_mat.matvec(self.one))
        if (x * z).coords != self.one or (z * x).coords != self.one:
            raise InternalCheckError("one-sided inverse in a finite-dimensional algebra")
        return z

    def is_unit(self, x: "AlgebraElement") -> bool:
        return self.try_inverse(x) is not None

    def inner_automorphism(self, u: "AlgebraElement") -> "Endo":
        """I_u : r -> u*r*u^-1 for a unit u."""
        u_inv = self.try_inverse(u)
        if u_inv is None:
            raise NotAUnit(f"{u} is not a unit")
        return Endo(self, self.left_mul(u).matrix @ self.right_mul(u_inv).matrix)

    # -- radical and local structure ---------------------------------------------

    def radical(self):
        """RREF basis of the Jacobson radical, as coordinate tuples.

        Uses the declared basis when the algebra carries one; otherwise the
        kernel of the trace form of the regular representation, valid in
        characteristic 0 or > dim.
        """
        if self._radical is not _UNSET:
            return self._radical
        field = self.field
        if self.radical_hint is not None:
            basis = span_basis(field, self.dim, self.radical_hint)
            for v in basis:
                if not self._is_nilpotent(v):
                    raise FrobformError("declared radical basis contains a non-nilpotent")
            self._radical = basis
            return basis
        char = field.characteristic
        if char != 0 and char <= self.dim:
            raise CharTooSmall(
                f"trace-form radical needs characteristic 0 or > {self.dim}, got {char}"
            )
        traces = [m.trace() for m in self._basis_left_mats()]
        rows = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                acc = field.zero
                for k, c in self.mul[i][j]:
                    acc += c * traces[k]
                row.append(field.reduce(acc))
            rows.append(row)
        gram = Matrix(field, rows)
        self._radical = [tuple(v) for v in gram.kernel_basis()]
        return self._radical

    def _is_nilpotent(self, coords) -> bool:
        cur = coords
        for _ in range(self.dim):
            if not any(cur):
                return True
            cur = self._mul_coords(cur, coords)
        return not any(cur)

    def local_structure(self) -> "LocalData | None":
        """Radical filtration data when the algebra is local with residue field k."""
        if self._local is not _UNSET:
            return self._local
        field = self.field
        rad = self.radical()
        if len(rad) != self.dim - 1:
            self._local = None
            return None
        power_bases = [list(rad)]
        while True:
            prev = power_bases[-1]
            products = [self._mul_coords(a, b) for a in prev for b in rad]
            nxt = span_basis(field, self.dim, products)
            if not nxt:
                break
            power_bases.append(nxt)
        n = len(power_bases)
        space = RowSpace(field, self.dim)
        filtered = []
        for basis in reversed(power_bases):
            for v in basis:
                if space.add(v):
                    filtered.append(tuple(v))
        for i in range(self.dim):
            unit = tuple(
                field.one if j == i else field.zero for j in range(self.dim)
            )
            if space.add(unit):
                filtered.append(unit)
        if len(filtered) != self.dim:
            raise InternalCheckError("filtered basis has wrong size")
        f_mat = Matrix.from_columns(field, filtered)
        m_mat = Matrix.from_columns(field, [self.one] + list(rad))
        data = LocalData(
            algebra=self,
            m_basis=tuple(tuple(v) for v in rad),
            n=n,
            power_bases=tuple(tuple(tuple(v) for v in b) for b in power_bases),
            filtered=tuple(filtered),
            basis_matrix=f_mat,
            basis_matrix_inv=f_mat.inverse(),
            unit_decomp_inv=m_mat.inverse(),
        )
        self._local = data
        return data

    def require_local(self) -> "LocalData":
        data = self.local_structure()
        if data is None:
            raise NotLocal("algebra is not local with residue field k")
        return data

    # -- center ---------------------------------------------------------------

    def is_central(self, x: "AlgebraElement") -> bool:
        return self.left_mul(x).matrix == self.right_mul(x).matrix

    def center(self):
        """RREF basis of the center, as coordinate tuples."""
        if self._center is not _UNSET:
            return self._center
        lefties = self._basis_left_mats()
        righties = self._basis_right_mats()
        stacked = Matrix.stack_rows([l - r for l, r in zip(lefties, righties)])
        self._center = [tuple(v) for v in stacked.kernel_basis()]
        return self._center

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field!r}, basis={list(self.basis_names)})"


@dataclass(frozen=True)
class LocalData:
    """Filtration of a local algebra: m^n block first, then up to a basis of R."""

    algebra: Algebra
    m_basis: tuple
    n: int
    power_bases: tuple  # power_bases[k-1] = RREF basis of m^k
    filtered: tuple
    basis_matrix: Matrix
    basis_matrix_inv: Matrix
    unit_decomp_inv: Matrix  # inverse of [one | m_basis] for residue splitting

    def residue(self, x: "AlgebraElement"):
        """Image of x in R/m, as a raw scalar."""
        return self.unit_decomp_inv.matvec(x.coords)[0]

    def split(self, x: "AlgebraElement"):
        """x = alpha*1 + m with m in the maximal ideal; returns (alpha, m)."""
        alpha = self.residue(x)
        field = self.algebra.field
        red = field.reduce
        m = tuple(red(c - alpha * o) for c, o in zip(x.coords, self.algebra.one))
        return alpha, AlgebraElement(self.algebra, m)

    def in_radical(self, x: "AlgebraElement") -> bool:
        return not self.residue(x)

    def top_power_basis(self):
        return self.power_bases[-1]


class AlgebraElement:
    """A coordinate vector over a fixed algebra basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: tuple):
        self.algebra = algebra
        self.coords = coords

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraMismatch("elements from different algebras")

    def __add__(self, other):
        self._check(other)
        red = self.algebra.field.reduce
        return AlgebraElement(
            self.algebra, tuple(red(a + b) for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check(other)
        red = self.algebra.field.reduce
        return AlgebraElement(
            self.algebra, tuple(red(a - b) for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        neg = self.algebra.field.neg
        return AlgebraElement(self.algebra, tuple(neg(a) for a in self.coords))

    def __mul__(self, other):
        return self.algebra.multiply(self, other)

    def scale(self, c) -> "AlgebraElement":
        field = self.algebra.field
        c = field.coerce(c)
        red = field.reduce
        return AlgebraElement(self.algebra, tuple(red(c * a) for a in self.coords))

    def __pow__(self, k: int):
        if k < 0:
            raise FrobformError("negative element powers are not defined")
        result = self.algebra.one_element()
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "AlgebraElement":
        inv = self.algebra.try_inverse(self)
        if inv is None:
            raise NotAUnit(f"{self} is not a unit")
        return inv

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.algebra is other.algebra
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def __repr__(self):
        return format_element(self)


def format_element(x: AlgebraElement) -> str:
    """Human-readable form like `1 + 2*x - y` over the basis names."""
    parts = []
    for c, name in zip(x.coords, x.algebra.basis_names):
        if not c:
            continue
        if name == "1":
            term = str(c)
        elif c == x.algebra.field.one:
            term = name
        elif c == x.algebra.field.neg(x.algebra.field.one) and x.algebra.field.modulus is None:
            term = f"-{name}"
        else:
            term = f"{c}*{name}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


class Endo:
    """A k-linear endomorphism, as a dim x dim matrix on coordinate columns."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: Algebra, matrix: Matrix):
        if matrix.rows != algebra.dim or matrix.cols != algebra.dim:
            raise DimensionMismatch("endomorphism matrix has wrong size")
        self.algebra = algebra
        self.matrix = matrix

    @classmethod
    def identity(cls, algebra: Algebra) -> "Endo":
        return cls(algebra, Matrix.identity(algebra.field, algebra.dim))

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.matrix.matvec(x.coords))

    def __matmul__(self, other: "Endo") -> "Endo":
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("endomorphisms of different algebras")
        return Endo(self.algebra, self.matrix @ other.matrix)

    def pow(self, k: int) -> "Endo":
        return Endo(self.algebra, self.matrix.pow(k))

    def inverse(self) -> "Endo":
        return Endo(self.algebra, self.matrix.inverse())

    def is_identity(self) -> bool:
        return self.matrix == Matrix.identity(self.algebra.field, self.algebra.dim)

    def __eq__(self, other):
        return (
            isinstance(other, Endo)
            and self.algebra is other.algebra
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((id(self.algebra), self.matrix))

    def __repr__(self):
        return f"Endo({self.matrix!r})"


# -- construction and validation -------------------------------------------------


def _normalize_mul(field, dim, mul):
    """Accept sparse [i, j, k, coeff] entries or a dense tensor; emit the table."""
    table = [[dict() for _ in range(dim)] for _ in range(dim)]
    mul = list(mul)
    dense = bool(mul) and isinstance(mul[0], (list, tuple)) and isinstance(
        mul[0][0], (list, tuple)
    )
    if dense:
        # dense tensor c[i][j][k]
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    c = field.coerce(mul[i][j][k])
                    if c:
                        table[i][j][k] = c
    else:
        for entry in mul:
            i, j, k, c = entry
            c = field.coerce(c)
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise FrobformError(f"structure entry {entry!r} out of range")
            if c:
                table[i][j][k] = field.reduce(table[i][j].get(k, field.zero) + c)
                if not table[i][j][k]:
                    del table[i][j][k]
    return tuple(
        tuple(tuple(sorted(cell.items())) for cell in row) for row in table
    )


def validate(field: FieldSpec, basis_names, mul, one, radical_basis=None) -> Algebra:
    """Check associativity on all basis triples and the unit law; seal the algebra.

    `mul` is either a sparse list of [i, j, k, coeff] entries or a dense
    tensor; `one` gives the coordinates of the identity.
    """
    basis_names = tuple(str(b) for b in basis_names)
    dim = len(basis_names)
    if dim == 0:
        raise FrobformError("algebra dimension must be positive")
    if len(set(basis_names)) != dim:
        raise FrobformError("basis names must be distinct")
    table = _normalize_mul(field, dim, mul)
    one = tuple(field.coerce(c) for c in one)
    if len(one) != dim:
        raise DimensionMismatch("unit coordinate length mismatch")
    hint = None
    if radical_basis is not None:
        hint = tuple(tuple(field.coerce(c) for c in v) for v in radical_basis)
    alg = Algebra(field, dim, basis_names, table, one, hint)

    products = [[alg._mul_coords(_unit_coords(field, dim, i), _unit_coords(field, dim, j)) for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        ei = _unit_coords(field, dim, i)
        for j in range(dim):
            for k in range(dim):
                left = alg._mul_coords(products[i][j], _unit_coords(field, dim, k))
                right = alg._mul_coords(ei, products[j][k])
                if left != right:
                    raise NotAssociative(i, j, k, left, right)
    for i in range(dim):
        ei = _unit_coords(field, dim, i)
        if alg._mul_coords(one, ei) != ei or alg._mul_coords(ei, one) != ei:
            raise BadUnit(f"unit law fails on basis vector {basis_names[i]}")
    return alg


def _unit_coords(field, dim, i):
    return tuple(field.one if j == i else field.zero for j in range(dim))


def verify_morphism(v: Matrix, source: Algebra, target: Algebra) -> bool:
    """True iff v maps 1 to 1 and respects products on all basis pairs.

    With v invertible this certifies an algebra isomorphism.
    """
    if isinstance(v, Endo):
        v = v.matrix
    if source.dim != target.dim or v.rows != target.dim or v.cols != source.dim:
        raise DimensionMismatch("morphism matrix has wrong shape")
    if source.field != target.field:
        raise DimensionMismatch("morphism between different ground fields")
    if v.matvec(source.one) != target.one:
        return False
    images = [v.column(i) for i in range(source.dim)]
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = [source.field.zero] * source.dim
            for k, c in source.mul[i][j]:
                for r in range(source.dim):
                    lhs[r] += c * images[k][r]
            lhs = tuple(source.field.reduce(x) for x in lhs)
            rhs = target._mul_coords(images[i], images[j])
            if lhs != rhs:
                return False
    return True
