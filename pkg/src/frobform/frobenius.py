"""Associative bilinear forms on a fixed algebra and their calculus.

Column-vector convention throughout: B(r, s) = r^T B s, so the Nakayama
automorphism is literally B^-1 B^T and the transpose of an endomorphism phi
with respect to B is B^-1 phi^T B.
"""

from __future__ import annotations

import random

from .algebra import Algebra, AlgebraElement, Endo, verify_morphism
from .errors import (
    AlgebraMismatch,
    CharTooSmall,
    Degenerate,
    DimensionMismatch,
    FrobformError,
    Incomplete,
    InternalCheckError,
    NotAnAutomorphism,
    NotAUnit,
)
from .linalg import Matrix
from .scalar import FieldKind


class Functional:
    """A linear functional on the algebra, as a coordinate covector."""

    __slots__ = ("algebra", "covector")

    def __init__(self, algebra: Algebra, covector):
        covector = tuple(algebra.field.coerce(c) for c in covector)
        if len(covector) != algebra.dim:
            raise DimensionMismatch("covector length mismatch")
        self.algebra = algebra
        self.covector = covector

    def __call__(self, x: AlgebraElement):
        if x.algebra is not self.algebra:
            raise AlgebraMismatch("functional applied to a foreign element")
        red = self.algebra.field.reduce
        return red(sum(a * b for a, b in zip(self.covector, x.coords)))

    def __eq__(self, other):
        return (
            isinstance(other, Functional)
            and self.algebra is other.algebra
            and self.covector == other.covector
        )

    def __hash__(self):
        return hash((id(self.algebra), self.covector))

    def __repr__(self):
        return f"Functional({list(self.covector)})"


class Form:
    """A nondegenerate associative bilinear form B(r, s) = r^T B s."""

    __slots__ = ("algebra", "matrix", "symmetric", "_inverse", "_nakayama")

    def __init__(self, algebra: Algebra, matrix: Matrix, _skip_check=False, _inverse=None):
        if matrix.rows != algebra.dim or matrix.cols != algebra.dim:
            raise DimensionMismatch("form matrix has wrong size")
        self.algebra = algebra
        self.matrix = matrix
        if not _skip_check:
            self._check_associative()
            kernel = matrix.kernel_basis()
            if kernel:
                witness = algebra.element(kernel[0])
                raise Degenerate(
                    f"form is degenerate; {witness} generates a left ideal "
                    "inside the kernel of the functional",
                    witness=witness,
                )
        self.symmetric = matrix == matrix.transpose()
        self._inverse = _inverse
        self._nakayama = None

    def _check_associative(self):
        b = self.matrix
        lefts = self.algebra._basis_left_mats()
        rights = self.algebra._basis_right_mats()
        for j in range(self.algebra.dim):
            if rights[j].transpose() @ b != b @ lefts[j]:
                raise FrobformError("matrix does not define an associative form")

    def value(self, r: AlgebraElement, s: AlgebraElement):
        red = self.algebra.field.reduce
        mid = self.matrix.matvec(s.coords)
        return red(sum(a * b for a, b in zip(r.coords, mid)))

    @property
    def inverse(self) -> Matrix:
        if self._inverse is None:
            self._inverse = self.matrix.inverse()
        return self._inverse

    @property
    def nondegenerate(self) -> bool:
        return True  # enforced at construction

    @property
    def associative(self) -> bool:
        return True  # enforced at construction

    def __eq__(self, other):
        return (
            isinstance(other, Form)
            and self.algebra is other.algebra
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((id(self.algebra), self.matrix))

    def __repr__(self):
        sym = "symmetric" if self.symmetric else "asymmetric"
        return f"Form(dim={self.algebra.dim}, {sym})"


# -- building forms -----------------------------------------------------------


def form_from_functional(lam: Functional) -> Form:
    """B(r, s) := lam(r*s); raises Degenerate (with a left-ideal witness) if singular."""
    algebra = lam.algebra
    field = algebra.field
    red = field.reduce
    rows = []
    for i in range(algebra.dim):
        row = [field.zero] * algebra.dim
        for j in range(algebra.dim):
            acc = field.zero
            for k, c in algebra.mul[i][j]:
                acc += c * lam.covector[k]
            row[j] = red(acc)
        rows.append(tuple(row))
    return Form(algebra, Matrix._raw(field, tuple(rows)))


def form_from_matrix(algebra: Algebra, matrix: Matrix) -> Form:
    """Validate an explicit matrix as an associative nondegenerate form."""
    return Form(algebra, matrix)


def functional_from_form(form: Form) -> Functional:
    """lam(r) := B(r, 1); round-trips with form_from_functional."""
    return Functional(form.algebra, form.matrix.matvec(form.algebra.one))


def find_frobenius_functional(
    algebra: Algebra, seed: int = 1, attempts: int = 64
) -> Functional | None:
    """Search for a functional whose form is nondegenerate.

    Tries the deterministic candidate dual to the top nonzero radical power
    (in the local case), then seeded random covectors. Returns None when the
    attempt budget runs out; that is *inconclusive*, not a proof that the
    algebra is not Frobenius.
    """
    candidates = []
    try:
        data = algebra.local_structure()
    except CharTooSmall:
        data = None
    if data is not None:
        top = len(data.top_power_basis())
        inv = data.basis_matrix_inv
        field = algebra.field
        red = field.reduce
        covector = tuple(
            red(sum(inv.entries[r][c] for r in range(top))) for c in range(algebra.dim)
        )
        candidates.append(covector)
    rng = random.Random(seed)
    field = algebra.field
    for _ in range(attempts):
        if field.kind is FieldKind.RATIONALS:
            covector = tuple(field.coerce(rng.randint(-9, 9)) for _ in range(algebra.dim))
        else:
            covector = tuple(rng.randrange(field.modulus) for _ in range(algebra.dim))
        candidates.append(covector)
    for covector in candidates:
        if not any(covector):
            continue
        lam = Functional(algebra, covector)
        try:
            form_from_functional(lam)
        except Degenerate:
            continue
        return lam
    return None


def twist(form: Form, u: AlgebraElement) -> Form:
    """The form B'(r, s) = B(r, s*u) for a unit u; matrix B @ rho_u."""
    algebra = form.algebra
    u_inv = algebra.try_inverse(u)
    if u_inv is None:
        raise NotAUnit(f"twist unit {u} is not invertible")
    rho_u = algebra.right_mul(u).matrix
    rho_u_inv = algebra.right_mul(u_inv).matrix
    # associativity and nondegeneracy are inherited from B
    return Form(
        algebra,
        form.matrix @ rho_u,
        _skip_check=True,
        _inverse=rho_u_inv @ form.inverse,
    )


# -- Nakayama automorphism and the transpose calculus ---------------------------


def nakayama(form: Form) -> Endo:
    """The automorphism S = B^-1 B^T, satisfying B(r, s) = B(s, S r)."""
    if form._nakayama is not None:
        return form._nakayama
    algebra = form.algebra
    sigma = form.inverse @ form.matrix.transpose()
    if (form.matrix @ sigma).transpose() != form.matrix:
        raise InternalCheckError("Nakayama matrix fails its defining identity")
    ident = Matrix.identity(algebra.field, algebra.dim)
    if sigma != ident and not verify_morphism(sigma, algebra, algebra):
        raise InternalCheckError("Nakayama matrix is not an algebra morphism")
    endo = Endo(algebra, sigma)
    form._nakayama = endo
    return endo


def transpose(phi: Endo, form: Form) -> Endo:
    """The adjoint of phi with respect to B: B(phi r, s) = B(r, phi^t s)."""
    if phi.algebra is not form.algebra:
        raise AlgebraMismatch("endomorphism and form live on different algebras")
    return Endo(phi.algebra, form.inverse @ phi.matrix.transpose() @ form.matrix)


def automorphism_order(sigma: Endo, bound: int = 256) -> int | None:
    """Least n <= bound with sigma^n = Id, or None."""
    if sigma.matrix.try_inverse() is None:
        raise NotAnAutomorphism("order of a singular endomorphism")
    ident = Matrix.identity(sigma.algebra.field, sigma.algebra.dim)
    power = sigma.matrix
    for n in range(1, bound + 1):
        if power == ident:
            return n
        power = power @ sigma.matrix
    return None


# -- inner automorphisms ----------------------------------------------------------


def inner_decompose(
    tau: Endo, seed: int = 1, attempts: int = 64
) -> AlgebraElement | None:
    """A unit a with tau = I_a (conjugation by a), if one can be found.

    The candidates live in the null space of the stacked maps
    l_{tau(e_i)} - r_{e_i}. On a local algebra the answer is complete: a unit
    exists in that space iff the space is not inside the maximal ideal, so
    None is a proof of non-innerness. On a non-local algebra, None is only
    returned for a zero null space; otherwise unsuccessful sampling raises
    Incomplete.
    """
    algebra = tau.algebra
    if tau.matrix.try_inverse() is None or not verify_morphism(tau, algebra, algebra):
        raise NotAnAutomorphism("inner_decompose expects an algebra automorphism")
    rights = algebra._basis_right_mats()
    blocks = []
    for i in range(algebra.dim):
        image = algebra.element(tau.matrix.column(i))
        blocks.append(algebra.left_mul(image).matrix - rights[i])
    null = Matrix.stack_rows(blocks).kernel_basis()
    if not null:
        return None

    def certify(coords) -> AlgebraElement | None:
        cand = algebra.element(coords)
        if algebra.try_inverse(cand) is None:
            return None
        if algebra.inner_automorphism(cand) != tau:
            raise InternalCheckError("null-space unit fails the conjugation identity")
        return cand

    try:
        data = algebra.local_structure()
    except CharTooSmall:
        data = None
    if data is not None:
        for vec in null:
            if data.residue(algebra.element(vec)):
                found = certify(vec)
                if found is None:
                    raise InternalCheckError("non-radical vector in a local algebra is a unit")
                return found
        return None  # null space inside m: tau is provably not inner
    for vec in null:
        found = certify(vec)
        if found is not None:
            return found
    rng = random.Random(seed)
    field = algebra.field
    for _ in range(attempts):
        if field.kind is FieldKind.RATIONALS:
            weights = [field.coerce(rng.randint(-9, 9)) for _ in null]
        else:
            weights = [rng.randrange(field.modulus) for _ in null]
        combo = [field.zero] * algebra.dim
        for w, vec in zip(weights, null):
            for idx, c in enumerate(vec):
                combo[idx] += w * c
        combo = tuple(field.reduce(c) for c in combo)
        if not any(combo):
            continue
        found = certify(combo)
        if found is not None:
            return found
    raise Incomplete(
        "non-local algebra: no unit found in the conjugation null space; "
        "this does not prove the automorphism is outer"
    )


def inner_order(
    sigma: Endo, bound: int = 256, seed: int = 1, attempts: int = 64
) -> tuple[int, AlgebraElement] | None:
    """Least n <= bound with sigma^n inner, with a conjugating unit witness.

    The returned witness a always satisfies sigma(a) = a.
    """
    power = sigma
    for n in range(1, bound + 1):
        a = inner_decompose(power, seed=seed, attempts=attempts)
        if a is not None:
            if sigma.apply(a) != a:
                raise InternalCheckError("inner-order witness is not fixed by sigma")
            return n, a
        power = power @ sigma
    return None
