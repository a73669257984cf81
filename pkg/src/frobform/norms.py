"""Norms along an automorphism and exact root lifting through the radical.

The two lifting routines solve the triangular coefficient systems inside the
commutative subalgebra k[m] for a nilpotent m, so every identity they return
(alpha*v^2 = u, u^n = x) holds exactly; termination is bounded by the
nilpotency index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, AlgebraElement, Endo, verify_morphism
from .errors import (
    BadCharacteristic,
    InternalCheckError,
    NotAnAutomorphism,
    NotAUnit,
    NotFixed,
    NoRootInResidueField,
    OrderBoundExceeded,
)
from .frobenius import Form, inner_order, nakayama, twist
from .scalar import nth_root_in_k


@dataclass(frozen=True)
class NormContext:
    """An algebra automorphism together with its (inner) order."""

    sigma: Endo
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise OrderBoundExceeded("norm context needs a positive order")
        alg = self.sigma.algebra
        if not verify_morphism(self.sigma, alg, alg):
            raise NotAnAutomorphism("norm context needs an algebra automorphism")


def partial_norm(sigma: Endo, r: AlgebraElement, i: int) -> AlgebraElement:
    """N_i(r) = r * sigma(r) * ... * sigma^(i-1)(r), left to right; N_0 = 1."""
    algebra = sigma.algebra
    if not verify_morphism(sigma, algebra, algebra):
        raise NotAnAutomorphism("partial norm needs an algebra automorphism")
    out = algebra.one_element()
    cur = r
    for _ in range(i):
        out = out * cur
        cur = sigma.apply(cur)
    return out


def norm(ctx: NormContext, u: AlgebraElement) -> AlgebraElement:
    """The full norm N_sigma(u) over the context's order; u must be a unit."""
    algebra = ctx.sigma.algebra
    if algebra.try_inverse(u) is None:
        raise NotAUnit("norm is defined on units")
    out = algebra.one_element()
    cur = u
    for _ in range(ctx.n):
        out = out * cur
        cur = ctx.sigma.apply(cur)
    return out


# -- truncated-series helpers ---------------------------------------------------


def _nilpotent_powers(algebra: Algebra, m: AlgebraElement):
    """[1, m, m^2, ...] up to (excluding) the first vanishing power."""
    powers = [algebra.one_element()]
    cur = m
    while not cur.is_zero():
        if len(powers) > algebra.dim:
            raise InternalCheckError("element is not nilpotent")
        powers.append(cur)
        cur = cur * m
    return powers


def _series_mul(field, a, b, length):
    out = [field.zero] * length
    for i, ai in enumerate(a):
        if not ai or i >= length:
            continue
        for j, bj in enumerate(b):
            if i + j >= length:
                break
            if bj:
                out[i + j] += ai * bj
    return [field.reduce(c) for c in out]


def _series_pow(field, a, n, length):
    out = [field.one] + [field.zero] * (length - 1)
    base = list(a)
    while n:
        if n & 1:
            out = _series_mul(field, out, base, length)
        n >>= 1
        if n:
            base = _series_mul(field, base, base, length)
    return out


def _combine(algebra, coeffs, powers):
    out = algebra.zero_element()
    for c, p in zip(coeffs, powers):
        if c:
            out = out + p.scale(c)
    return out


def central_square_root(algebra: Algebra, u: AlgebraElement) -> tuple:
    """(alpha, v) with alpha*v^2 = u exactly, v = 1 + ... inside k[u - alpha].

    Requires char k != 2 and a local algebra with residue field k. When u is
    central, v is central as well (it lies in the unital subalgebra
    generated by u).
    """
    field = algebra.field
    if field.characteristic == 2:
        raise BadCharacteristic("square-root lifting needs characteristic != 2")
    data = algebra.require_local()
    if algebra.try_inverse(u) is None:
        raise NotAUnit("central_square_root is defined on units")
    alpha, m = data.split(u)
    powers = _nilpotent_powers(algebra, m)
    length = len(powers)
    half = field.inv(field.coerce(2))
    coeffs = [field.one]
    for i in range(1, length):
        # alpha * (coeff of m^i in v^2) must equal [i == 1], i.e.
        # 2*a_i = target_i/alpha - sum_{0<j<i} a_j a_{i-j}
        partial = field.zero
        for j in range(1, i):
            partial += coeffs[j] * coeffs[i - j]
        target = field.one if i == 1 else field.zero
        residual = field.reduce(field.div(target, alpha) - partial)
        coeffs.append(field.reduce(residual * half))
    v = _combine(algebra, coeffs, powers)
    if v.scale(alpha) * v != u:
        raise InternalCheckError("square-root lifting failed to verify")
    return alpha, v


def fixed_nth_root(
    algebra: Algebra, x: AlgebraElement, sigma: Endo, n: int
) -> AlgebraElement:
    """A unit u with u^n = x and sigma(u) = u, lifted through the radical.

    Needs char k not dividing n, sigma(x) = x, and an n-th root of the
    residue of x in k.
    """
    field = algebra.field
    char = field.characteristic
    if char and n % char == 0:
        raise BadCharacteristic(f"characteristic {char} divides the root index {n}")
    data = algebra.require_local()
    if algebra.try_inverse(x) is None:
        raise NotAUnit("fixed_nth_root is defined on units")
    if sigma.apply(x) != x:
        raise NotFixed("element is not fixed by the automorphism")
    alpha, m = data.split(x)
    u0 = nth_root_in_k(field.elem(alpha), n)
    if u0 is None or not u0.value:
        raise NoRootInResidueField(f"residue {alpha} has no {n}-th root in the ground field")
    u0 = u0.value
    powers = _nilpotent_powers(algebra, m)
    length = len(powers)
    denom = field.reduce(field.coerce(n) * field.pow(u0, n - 1))
    inv_denom = field.inv(denom)
    coeffs = [u0]
    for i in range(1, length):
        prefix = coeffs + [field.zero] * (length - len(coeffs))
        below = _series_pow(field, prefix, n, i + 1)[i]
        target = field.one if i == 1 else field.zero
        coeffs.append(field.reduce((target - below) * inv_denom))
    u = _combine(algebra, coeffs, powers)
    if u**n != x:
        raise InternalCheckError("n-th root lifting failed to verify")
    if sigma.apply(u) != u:
        raise InternalCheckError("lifted root is not fixed by the automorphism")
    return u


def straighten_form(form: Form, bound: int = 256) -> tuple:
    """A twist of the form whose Nakayama automorphism has exact finite order.

    Returns (new_form, n) where n is the inner order of the original
    Nakayama automorphism and nakayama(new_form)^n = Id exactly.
    """
    algebra = form.algebra
    data = algebra.require_local()
    sigma = nakayama(form)
    found = inner_order(sigma, bound)
    if found is None:
        raise OrderBoundExceeded(f"Nakayama automorphism has no inner order <= {bound}")
    n, a = found
    field = algebra.field
    char = field.characteristic
    if char and n % char == 0:
        raise BadCharacteristic(f"characteristic {char} divides the inner order {n}")
    alpha = data.residue(a)
    a = a.scale(field.inv(alpha))  # scalar multiples give the same inner automorphism
    if sigma.apply(a) != a:
        raise InternalCheckError("normalized witness is no longer fixed by sigma")
    a_inv = algebra.try_inverse(a)
    if a_inv is None:
        raise InternalCheckError("inner witness must be a unit")
    u = fixed_nth_root(algebra, a_inv, sigma, n)
    new_form = twist(form, u)
    if not nakayama(new_form).pow(n).is_identity():
        raise InternalCheckError("straightened form's automorphism does not have order n")
    return new_form, n
