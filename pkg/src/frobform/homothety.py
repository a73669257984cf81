"""Homothety witnesses and obstructions for pairs of forms on one algebra.

The probe is sound but deliberately one-sided: a homothety is only ever
claimed through an explicitly verified witness, every obstruction verdict is
backed by a re-checkable failed necessary condition, and Inconclusive is a
first-class answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from enum import Enum

from .algebra import Algebra, AlgebraElement, Endo, format_element
from .errors import (
    AlgebraMismatch,
    BadCharacteristic,
    BadResidue,
    CharTooSmall,
    DimensionMismatch,
    FrobformError,
    InfiniteOrder,
    InternalCheckError,
    NotATwist,
    NotCentral,
    NotSymmetric,
)
from .frobenius import Form, automorphism_order, nakayama, transpose, twist
from .linalg import is_similar
from .norms import NormContext, central_square_root, norm
from .scalar import DEFAULT_FACTOR_BOUND, FieldKind, SquareClassRep, square_class


class Verdict(Enum):
    WITNESS_FOUND = "witness-found"
    OBSTRUCTED = "obstructed"
    INCONCLUSIVE = "inconclusive"


class ObstructionKind(Enum):
    CENTRAL_NORM = "central-norm"
    NAKAYAMA_SIMILARITY = "nakayama-similarity"
    DET_CLASS = "det-class"
    SYMMETRY_MISMATCH = "symmetry-mismatch"


class CentralNormOutcome(Enum):
    PASSES = "passes"
    FAILS = "fails"
    NOT_APPLICABLE = "not-applicable"


class SimilarityVerdict(Enum):
    SIMILAR = "similar"
    NOT_SIMILAR = "not-similar"


@dataclass(frozen=True)
class HomothetyWitness:
    """alpha and V with B'(r, s) = alpha * B(Vr, Vs) on all pairs."""

    alpha: object  # raw nonzero scalar
    v_map: Endo


@dataclass(frozen=True)
class CheckRecord:
    name: str
    outcome: str
    detail: str


@dataclass(frozen=True)
class ObstructionReport:
    verdict: Verdict
    reason: ObstructionKind | None
    unit: AlgebraElement
    witness: HomothetyWitness | None
    checks: tuple

    def check(self, name: str) -> CheckRecord | None:
        for rec in self.checks:
            if rec.name == name:
                return rec
        return None

    def failed_checks(self):
        return tuple(rec for rec in self.checks if rec.outcome == "fails")


def verify_witness(form: Form, other: Form, witness: HomothetyWitness) -> bool:
    """Check B' = alpha*V^T*B*V and the equivalent rho_u = alpha*V^t*V."""
    if other.algebra is not form.algebra:
        raise DimensionMismatch("forms live on different algebras")
    algebra = form.algebra
    v = witness.v_map.matrix
    alpha = algebra.field.coerce(witness.alpha)
    direct = (v.transpose() @ form.matrix @ v).scale(alpha) == other.matrix
    rho_u = form.inverse @ other.matrix
    v_t = transpose(witness.v_map, form).matrix
    via_transpose = (v_t @ v).scale(alpha) == rho_u
    if direct != via_transpose:
        raise InternalCheckError("the two homothety formulations disagree")
    return direct


def symmetric_witness(form: Form, u: AlgebraElement) -> HomothetyWitness:
    """Constructive witness for a twist of a symmetric form by a central unit.

    Uses the lifted central square root: with alpha*v^2 = u, the pair
    (alpha, rho_v) is a verified homothety witness.
    """
    algebra = form.algebra
    if not form.symmetric:
        raise NotSymmetric("constructive witness needs a symmetric base form")
    if algebra.field.characteristic == 2:
        raise BadCharacteristic("constructive witness needs characteristic != 2")
    algebra.require_local()
    if not algebra.is_central(u):
        raise NotCentral(f"{u} is not central")
    alpha, v = central_square_root(algebra, u)
    witness = HomothetyWitness(alpha, algebra.right_mul(v))
    if not verify_witness(form, twist(form, u), witness):
        raise InternalCheckError("constructed symmetric witness failed verification")
    return witness


def central_norm_test(form: Form, u: AlgebraElement, bound: int = 256) -> CentralNormOutcome:
    """Necessary condition: homothetic twists have central norms.

    FAILS certifies non-homothety; NOT_APPLICABLE means the Nakayama
    automorphism has no order within the bound.
    """
    sigma = nakayama(form)
    n = automorphism_order(sigma, bound)
    if n is None:
        return CentralNormOutcome.NOT_APPLICABLE
    value = norm(NormContext(sigma, n), u)
    if form.algebra.is_central(value):
        return CentralNormOutcome.PASSES
    return CentralNormOutcome.FAILS


def nakayama_similarity(form: Form, other: Form) -> SimilarityVerdict:
    """Necessary condition: Nakayama matrices of homothetic forms are similar."""
    if form.algebra is not other.algebra:
        if form.algebra.dim != other.algebra.dim or form.algebra.field != other.algebra.field:
            raise DimensionMismatch("forms of different size or field")
    if is_similar(nakayama(form).matrix, nakayama(other).matrix):
        return SimilarityVerdict.SIMILAR
    return SimilarityVerdict.NOT_SIMILAR


def det_class(form: Form, factor_bound: int = DEFAULT_FACTOR_BOUND) -> SquareClassRep:
    """det B in the square class group; a form invariant in even dimension."""
    value = form.matrix.det()
    return square_class(form.algebra.field.elem(value), factor_bound)


def unipotence_check(algebra: Algebra, u: AlgebraElement) -> bool:
    """Right multiplication by a unit with residue 1, in the filtered basis,
    must be upper triangular with unit diagonal and determinant 1."""
    data = algebra.require_local()
    if data.residue(u) != algebra.field.one:
        raise BadResidue("unipotence check needs a unit with residue 1")
    rho = algebra.right_mul(u).matrix
    in_filtered = data.basis_matrix_inv @ rho @ data.basis_matrix
    one = algebra.field.one
    return (
        in_filtered.is_upper_triangular()
        and all(d == one for d in in_filtered.diagonal_entries())
        and rho.det() == one
    )


# -- the probe -------------------------------------------------------------------


def recover_twist_unit(form: Form, other: Form) -> AlgebraElement:
    """The unit u with other = twist(form, u): rho_u = B^-1 B', u = rho_u(1)."""
    if other.algebra is not form.algebra:
        raise AlgebraMismatch("forms live on different algebras")
    algebra = form.algebra
    rho = form.inverse @ other.matrix
    u = algebra.element(rho.matvec(algebra.one))
    if algebra.try_inverse(u) is None or algebra.right_mul(u).matrix != rho:
        raise NotATwist("the two forms do not differ by right multiplication by a unit")
    return u


def homothety_probe(
    form: Form,
    other: Form,
    bound: int = 256,
    seed: int = 1,
    deep: bool = True,
    factor_bound: int = DEFAULT_FACTOR_BOUND,
) -> ObstructionReport:
    """Run the homothety battery on two forms on the same algebra.

    Pipeline: recover the separating unit; symmetric-case analysis (verified
    witness or the order-one central-norm obstruction); central norm test;
    Nakayama similarity; determinant class in even dimension. The verdict is
    the first failure in pipeline order. With deep=True the remaining checks
    still run so the report's details are complete; deep=False stops at the
    first obstruction.
    """
    algebra = form.algebra
    u = recover_twist_unit(form, other)
    checks: list[CheckRecord] = []

    try:
        local_data = algebra.local_structure()
    except CharTooSmall:
        local_data = None
    char = algebra.field.characteristic

    def report(verdict, reason=None, witness=None):
        return ObstructionReport(verdict, reason, u, witness, tuple(checks))

    if form.symmetric:
        central = algebra.is_central(u)
        checks.append(
            CheckRecord(
                "symmetry",
                "info",
                f"base form symmetric; unit central: {central}; "
                f"twisted form symmetric: {other.symmetric}",
            )
        )
        if central and local_data is not None and char != 2:
            witness = symmetric_witness(form, u)
            checks.append(
                CheckRecord("symmetric-witness", "witness", f"alpha = {witness.alpha}")
            )
            return report(Verdict.WITNESS_FOUND, witness=witness)
        if not central:
            if local_data is not None and char != 2:
                checks.append(
                    CheckRecord(
                        "central-norm",
                        "fails",
                        "order-one case: the separating unit itself is not central",
                    )
                )
                return report(Verdict.OBSTRUCTED, ObstructionKind.CENTRAL_NORM)
            if not other.symmetric:
                checks.append(
                    CheckRecord(
                        "symmetry-mismatch",
                        "fails",
                        "a form homothetic to a symmetric form must be symmetric",
                    )
                )
                return report(Verdict.OBSTRUCTED, ObstructionKind.SYMMETRY_MISMATCH)
    elif other.symmetric:
        checks.append(
            CheckRecord(
                "symmetry-mismatch",
                "fails",
                "an asymmetric form cannot be homothetic to a symmetric one",
            )
        )
        return report(Verdict.OBSTRUCTED, ObstructionKind.SYMMETRY_MISMATCH)

    reason = None

    sigma = nakayama(form)
    order = automorphism_order(sigma, bound)
    if order is None:
        checks.append(
            CheckRecord("central-norm", "not-applicable", f"no sigma order <= {bound}")
        )
    else:
        value = norm(NormContext(sigma, order), u)
        central = algebra.is_central(value)
        checks.append(
            CheckRecord(
                "central-norm",
                "passes" if central else "fails",
                f"N_sigma(u) = {format_element(value)} with n = {order}",
            )
        )
        if not central:
            reason = ObstructionKind.CENTRAL_NORM
            if not deep:
                return report(Verdict.OBSTRUCTED, reason)

    similar = nakayama_similarity(form, other)
    checks.append(
        CheckRecord(
            "nakayama-similarity",
            "passes" if similar is SimilarityVerdict.SIMILAR else "fails",
            "invariant factors of the two Nakayama matrices compared",
        )
    )
    if similar is SimilarityVerdict.NOT_SIMILAR and reason is None:
        reason = ObstructionKind.NAKAYAMA_SIMILARITY
        if not deep:
            return report(Verdict.OBSTRUCTED, reason)

    if algebra.dim % 2 == 0:
        d_base = det_class(form, factor_bound)
        d_other = det_class(other, factor_bound)
        same = d_base == d_other
        checks.append(
            CheckRecord(
                "det-class",
                "passes" if same else "fails",
                f"classes {d_base.rep} vs {d_other.rep}",
            )
        )
        if not same and reason is None:
            reason = ObstructionKind.DET_CLASS
    else:
        checks.append(CheckRecord("det-class", "not-applicable", "odd dimension"))

    if reason is not None:
        return report(Verdict.OBSTRUCTED, reason)
    return report(Verdict.INCONCLUSIVE)


# -- randomized conjecture evidence -------------------------------------------------


def random_unit(algebra: Algebra, rng: random.Random) -> AlgebraElement:
    """A seeded random unit: nonzero residue plus random radical coordinates
    in the local case, rejection sampling otherwise."""
    field = algebra.field
    try:
        data = algebra.local_structure()
    except CharTooSmall:
        data = None

    def scalar(nonzero=False):
        if field.kind is FieldKind.RATIONALS:
            value = rng.randint(1, 9) if nonzero else rng.randint(-9, 9)
            if nonzero and rng.random() < 0.5:
                value = -value
            return field.coerce(value)
        lo = 1 if nonzero else 0
        return rng.randrange(lo, field.modulus)

    if data is not None:
        u = algebra.one_element().scale(scalar(nonzero=True))
        for vec in data.m_basis:
            c = scalar()
            if c:
                u = u + algebra.element(vec).scale(c)
        return u
    for _ in range(256):
        cand = algebra.element([scalar() for _ in range(algebra.dim)])
        if algebra.try_inverse(cand) is not None:
            return cand
    raise FrobformError("failed to sample a unit")


@dataclass(frozen=True)
class CounterexampleCandidate:
    trial: int
    unit: AlgebraElement
    norm_value: AlgebraElement
    report: ObstructionReport


@dataclass(frozen=True)
class ProbeSummary:
    trials: int
    seed: int
    bound: int
    sigma_order: int
    central_clear: int
    central_obstructed: int
    noncentral_obstructed: int
    noncentral_inconclusive: int
    candidates: tuple = dc_field(default_factory=tuple)

    def render(self) -> str:
        lines = [
            f"trials: {self.trials}",
            f"seed: {self.seed}",
            f"order-bound: {self.bound}",
            f"sigma-order: {self.sigma_order}",
            f"central-norm, no obstruction: {self.central_clear}",
            f"central-norm, obstructed (counterexample candidates): {self.central_obstructed}",
            f"non-central norm, obstructed: {self.noncentral_obstructed}",
            f"non-central norm, inconclusive: {self.noncentral_inconclusive}",
        ]
        for cand in self.candidates:
            lines.append(f"candidate at trial {cand.trial}:")
            lines.append(f"  unit: {format_element(cand.unit)}")
            lines.append(f"  norm: {format_element(cand.norm_value)}")
            lines.append(f"  verdict: {cand.report.verdict.value}")
            for rec in cand.report.checks:
                lines.append(f"  check {rec.name}: {rec.outcome} ({rec.detail})")
        return "\n".join(lines)


def conjecture_probe(
    algebra: Algebra,
    form: Form,
    trials: int = 200,
    seed: int = 1,
    bound: int = 256,
) -> ProbeSummary:
    """Sample seeded random units, twist, and tally probe verdicts by norm
    centrality. A central norm together with an obstruction is a
    counterexample candidate and is logged in full.

    Deterministic given the seed; trial i draws from sub-seed
    seed*1000003 + i, so trials could run in any order.
    """
    if form.algebra is not algebra:
        raise AlgebraMismatch("form does not live on the given algebra")
    sigma = nakayama(form)
    order = automorphism_order(sigma, bound)
    if order is None:
        raise InfiniteOrder(f"Nakayama automorphism has no order <= {bound}")
    ctx = NormContext(sigma, order)
    central_clear = central_obstructed = 0
    noncentral_obstructed = noncentral_inconclusive = 0
    candidates = []
    for i in range(trials):
        rng = random.Random(seed * 1_000_003 + i)
        u = random_unit(algebra, rng)
        other = twist(form, u)
        value = norm(ctx, u)
        central = algebra.is_central(value)
        rep = homothety_probe(form, other, bound=bound, seed=seed, deep=False)
        if central:
            if rep.verdict is Verdict.OBSTRUCTED:
                central_obstructed += 1
                candidates.append(CounterexampleCandidate(i, u, value, rep))
            else:
                central_clear += 1
        else:
            if rep.verdict is Verdict.OBSTRUCTED:
                noncentral_obstructed += 1
            else:
                noncentral_inconclusive += 1
    return ProbeSummary(
        trials,
        seed,
        bound,
        order,
        central_clear,
        central_obstructed,
        noncentral_obstructed,
        noncentral_inconclusive,
        tuple(candidates),
    )
