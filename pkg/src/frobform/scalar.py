"""Exact scalar arithmetic over Q and prime fields GF(p).

Raw scalars are kept canonical everywhere: a reduced `fractions.Fraction`
(positive denominator) over Q, a plain int residue in [0, p) over GF(p).
Containers (matrices, algebra elements) store raw scalars next to a shared
`FieldSpec`; `FieldElement` is the hashable wrapper used at API boundaries.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import FactorBoundExceeded, FrobformError, InternalCheckError, ZeroArgument

DEFAULT_FACTOR_BOUND = 10**6

_LITERAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")

# deterministic Miller-Rabin witnesses, valid for all n < 3.3e24
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldKind(Enum):
    RATIONALS = "Q"
    PRIME = "GF"


@dataclass(frozen=True)
class FieldSpec:
    """A computable ground field: Q, or GF(p) for a prime p."""

    kind: FieldKind
    modulus: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME:
            if self.modulus is None or self.modulus < 2 or not is_prime(self.modulus):
                raise FrobformError(f"modulus {self.modulus!r} is not prime")
        elif self.modulus is not None:
            raise FrobformError("rationals take no modulus")

    # -- construction ------------------------------------------------------

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec(FieldKind.RATIONALS)

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec(FieldKind.PRIME, p)

    # -- basic queries -----------------------------------------------------

    @property
    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.RATIONALS else self.modulus

    @property
    def zero(self):
        return Fraction(0) if self.kind is FieldKind.RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind is FieldKind.RATIONALS else 1

    # -- raw arithmetic ----------------------------------------------------
    # Generic container code computes with bare + and * and calls reduce()
    # once per stored entry; division goes through div()/inv().

    def coerce(self, x):
        """Coerce an int, Fraction, literal string, or FieldElement to raw form."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FrobformError("field element from a different field")
            return x.value
        if isinstance(x, str):
            return parse_literal(x, self)
        if self.kind is FieldKind.RATIONALS:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FrobformError(f"cannot coerce {x!r} into Q")
        if isinstance(x, Fraction):
            if x.denominator % self.modulus == 0:
                raise FrobformError(f"denominator of {x} not invertible mod {self.modulus}")
            return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        if isinstance(x, int):
            return x % self.modulus
        raise FrobformError(f"cannot coerce {x!r} into GF({self.modulus})")

    def reduce(self, x):
        return x if self.modulus is None else x % self.modulus

    def neg(self, x):
        return -x if self.modulus is None else (-x) % self.modulus

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero field element")
        if self.modulus is None:
            return 1 / x
        return pow(x, -1, self.modulus)

    def div(self, a, b):
        if self.modulus is None:
            return a / b
        return a * self.inv(b) % self.modulus

    def pow(self, x, k: int):
        if self.modulus is None:
            return x**k
        return pow(x, k, self.modulus) if k >= 0 else pow(self.inv(x), -k, self.modulus)

    def elem(self, x) -> "FieldElement":
        return FieldElement(self.coerce(x), self)

    def __repr__(self):
        return "Q" if self.kind is FieldKind.RATIONALS else f"GF({self.modulus})"


QQ = FieldSpec.rationals()


class FieldElement:
    """An exact scalar tied to its field; arithmetic never rounds."""

    __slots__ = ("value", "field")

    def __init__(self, value, field: FieldSpec):
        self.value = field.reduce(value)
        self.field = field

    def _check(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FrobformError("mixed fields in scalar arithmetic")
            return other
        return FieldElement(self.field.coerce(other), self.field)

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.value + other.value, self.field)

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.value - other.value, self.field)

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.value * other.value, self.field)

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(self.field.div(self.value, other.value), self.field)

    def __pow__(self, k: int):
        return FieldElement(self.field.pow(self.value, k), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._check(other).__sub__(self)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return f"{format_literal(self.value)} in {self.field!r}"


@dataclass(frozen=True)
class SquareClassRep:
    """Canonical representative of a coset of squares in the unit group.

    Over Q: a signed squarefree integer. Over GF(p), p odd: 1 or the least
    positive quadratic nonresidue. Over GF(2): always 1.
    """

    rep: int
    field: FieldSpec


# -- literals ---------------------------------------------------------------


def parse_literal(text: str, field: FieldSpec):
    """Parse the shared scalar literal syntax: optional sign, int, or a/b (b > 0)."""
    s = text.strip()
    if not _LITERAL_RE.fullmatch(s):
        raise FrobformError(f"bad scalar literal {text!r}")
    value = Fraction(s)
    return field.coerce(value)


def format_literal(raw) -> str:
    """Canonical text for a raw scalar; round-trips bit-exactly."""
    return str(raw)


# -- integer factorization helpers ------------------------------------------


def _strip_small_factors(n: int, bound: int):
    """Divide out all prime factors <= bound; return ({p: e}, cofactor)."""
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 5
    # 6k +- 1 wheel; stopping at sqrt(n) certifies the cofactor prime
    while p * p <= n and p <= bound:
        for q in (p, p + 2):
            while n % q == 0:
                factors[q] = factors.get(q, 0) + 1
                n //= q
        p += 6
    if 1 < n and (n <= bound * bound or math.isqrt(n) ** 2 == n or is_prime(n)):
        # a cofactor with no factor <= bound and <= bound^2 is prime;
        # a perfect-square cofactor splits as s*s with s prime (same argument)
        r = math.isqrt(n)
        if r * r == n and n > bound * bound:
            factors[r] = factors.get(r, 0) + 2
        else:
            factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n


def factor_exact(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    """Full prime factorization of n >= 1, or FactorBoundExceeded.

    Trial division up to `bound`, after which the cofactor must be
    certifiably prime or a certifiable prime power.
    """
    if n < 1:
        raise FrobformError("factor_exact expects a positive integer")
    factors, rest = _strip_small_factors(n, bound)
    if rest == 1:
        return factors
    # rest > bound^2 with no factor <= bound: try exact prime powers s^k
    for k in range(2, rest.bit_length() + 1):
        s = round(rest ** (1.0 / k))
        for cand in (s - 1, s, s + 1):
            if cand > 1 and cand**k == rest and is_prime(cand):
                factors[cand] = factors.get(cand, 0) + k
                return factors
    raise FactorBoundExceeded(
        f"cannot certify a factorization of {rest} with trial bound {bound}"
    )


def squarefree_part(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise ZeroArgument("squarefree part of zero")
    sign = -1 if n < 0 else 1
    factors, rest = _strip_small_factors(abs(n), bound)
    if rest > 1:
        # no factor <= bound; squares contribute nothing regardless of splitting
        r = math.isqrt(rest)
        if r * r != rest:
            if rest <= bound * bound or is_prime(rest):
                factors[rest] = 1
            else:
                raise FactorBoundExceeded(
                    f"cannot certify the squarefree part of {rest} "
                    f"with trial bound {bound}"
                )
    part = sign
    for p, e in factors.items():
        if e % 2:
            part *= p
    return part


# -- square classes ----------------------------------------------------------


def _least_nonresidue(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise InternalCheckError(f"GF({p}) has no nonresidue")  # pragma: no cover


def square_class(x: FieldElement, bound: int = DEFAULT_FACTOR_BOUND) -> SquareClassRep:
    """Canonical representative of x modulo nonzero squares."""
    if not x.value:
        raise ZeroArgument("square class of zero")
    field = x.field
    if field.kind is FieldKind.RATIONALS:
        v = x.value
        return SquareClassRep(squarefree_part(v.numerator * v.denominator, bound), field)
    p = field.modulus
    if p == 2:
        return SquareClassRep(1, field)
    if pow(x.value, (p - 1) // 2, p) == 1:
        return SquareClassRep(1, field)
    return SquareClassRep(_least_nonresidue(p), field)


# -- n-th roots ---------------------------------------------------------------


def nth_root_in_k(
    x: FieldElement, n: int, bound: int = DEFAULT_FACTOR_BOUND
) -> FieldElement | None:
    """Some u in k with u**n = x, or None if no such u exists.

    Over Q the positive root is returned for even n; over GF(p) the least
    nonnegative one (p is desk-scale, so exhaustive search is fine).
    """
    if n < 1:
        raise FrobformError("root index must be >= 1")
    field = x.field
    if not x.value:
        return field.elem(0)
    if n == 1:
        return x
    if field.kind is FieldKind.PRIME:
        p = field.modulus
        for u in range(1, p):
            if pow(u, n, p) == x.value:
                return field.elem(u)
        return None
    v = x.value
    if v < 0 and n % 2 == 0:
        return None
    num = factor_exact(abs(v.numerator), bound)
    den = factor_exact(v.denominator, bound)
    if any(e % n for e in num.values()) or any(e % n for e in den.values()):
        return None
    root_num = math.prod(p ** (e // n) for p, e in num.items())
    root_den = math.prod(p ** (e // n) for p, e in den.items())
    root = Fraction(root_num, root_den)
    if v < 0:
        root = -root
    return field.elem(root)
