"""Hand-encoded structure-constant builders for the test-bed algebra family.

Every builder returns a sealed, validated algebra together with its
distinguished functional (always nondegenerate) and a small dictionary of
expected invariants that the test suite re-derives through the library.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, validate
from .errors import DegenerateParameters, NotAGroup, ZeroParameter
from .frobenius import Functional
from .scalar import FieldSpec


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    algebra: Algebra
    functional: Functional
    params: dict = dc_field(default_factory=dict)
    expected: dict = dc_field(default_factory=dict)


def _unit_rows(dim):
    """Sparse entries for multiplication by the unit basis vector e_0."""
    entries = [[0, j, j, 1] for j in range(dim)]
    entries += [[i, 0, i, 1] for i in range(1, dim)]
    return entries


def nakayama_nesbitt(field: FieldSpec, alpha) -> CorpusEntry:
    """The four-dimensional local algebra on 1, x, y, xy with
    x^2 = y^2 = 0 and y*x = alpha*x*y; distinguished functional picks the
    xy coefficient."""
    alpha = field.coerce(alpha)
    if not alpha:
        raise ZeroParameter("the twisting scalar must be nonzero")
    entries = _unit_rows(4)
    entries.append([1, 2, 3, 1])  # x*y = xy
    entries.append([2, 1, 3, alpha])  # y*x = alpha*xy
    algebra = validate(field, ("1", "x", "y", "xy"), entries, (1, 0, 0, 0))
    lam = Functional(algebra, (0, 0, 0, 1))
    inv = field.inv(alpha)
    return CorpusEntry(
        "nakayama_nesbitt",
        algebra,
        lam,
        params={"alpha": alpha},
        expected={
            "sigma_diagonal": (field.one, inv, alpha, field.one),
            "symmetric": alpha == field.one,
            "radical_dim": 3,
            "top_power": 2,
        },
    )


def extended_nn(field: FieldSpec) -> CorpusEntry:
    """The six-dimensional local algebra on 1, x, y, xy, yx, xyx with
    x^2 = y^2 = 0 and xyx = yxy; distinguished functional picks the xyx
    coefficient."""
    entries = _unit_rows(6)
    entries.append([1, 2, 3, 1])  # x*y = xy
    entries.append([2, 1, 4, 1])  # y*x = yx
    entries.append([1, 4, 5, 1])  # x*yx = xyx
    entries.append([2, 3, 5, 1])  # y*xy = yxy = xyx
    entries.append([3, 1, 5, 1])  # xy*x = xyx
    entries.append([4, 2, 5, 1])  # yx*y = yxy = xyx
    algebra = validate(
        field, ("1", "x", "y", "xy", "yx", "xyx"), entries, (1, 0, 0, 0, 0, 0)
    )
    lam = Functional(algebra, (0, 0, 0, 0, 0, 1))
    b0 = (
        (0, 0, 0, 0, 0, 1),
        (0, 0, 0, 0, 1, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (1, 0, 0, 0, 0, 0),
    )
    return CorpusEntry(
        "extended_nn",
        algebra,
        lam,
        expected={
            "b0_matrix": b0,
            # sigma swaps x <-> y and xy <-> yx, fixing 1 and xyx
            "sigma_images": {"x": "y", "y": "x", "xy": "yx", "yx": "xy"},
            "sigma_order": 2,
            "radical_dim": 5,
            "top_power": 3,
        },
    )


def planar_quartic(field: FieldSpec, a, b, c) -> CorpusEntry:
    """The commutative local algebra k[x, y] / (a*x^2 = b*xy = c*y^2,
    (x, y)^3 = 0) on the basis 1, x, y, x2."""
    a, b, c = field.coerce(a), field.coerce(b), field.coerce(c)
    if not (a and b and c):
        raise DegenerateParameters("parameters must be nonzero")
    if field.reduce(b * b - a * c) == field.zero:
        raise DegenerateParameters("b^2 = a*c gives a degenerate functional")
    entries = _unit_rows(4)
    entries.append([1, 1, 3, 1])  # x*x = x2
    ab = field.div(a, b)
    ac = field.div(a, c)
    entries.append([1, 2, 3, ab])  # x*y = (a/b) x2
    entries.append([2, 1, 3, ab])
    entries.append([2, 2, 3, ac])  # y*y = (a/c) x2
    algebra = validate(field, ("1", "x", "y", "x2"), entries, (1, 0, 0, 0))
    lam = Functional(algebra, (0, 0, 0, 1))
    delta = field.reduce(a * c * (a * c - b * b))
    return CorpusEntry(
        "planar_quartic",
        algebra,
        lam,
        params={"a": a, "b": b, "c": c},
        expected={"delta": delta, "radical_dim": 3, "top_power": 2},
    )


def quartic_companion(field: FieldSpec, delta) -> CorpusEntry:
    """The commutative local algebra k[u, v] / (u^2 = -delta*v^2, uv = 0,
    (u, v)^3 = 0) on the basis 1, u, v, u2; isomorphic to a planar quartic
    exactly when delta matches its determinant class."""
    delta = field.coerce(delta)
    if not delta:
        raise ZeroParameter("delta must be nonzero")
    entries = _unit_rows(4)
    entries.append([1, 1, 3, 1])  # u*u = u2
    entries.append([2, 2, 3, field.neg(field.inv(delta))])  # v*v = -(1/delta) u2
    algebra = validate(field, ("1", "u", "v", "u2"), entries, (1, 0, 0, 0))
    lam = Functional(algebra, (0, 0, 0, 1))
    return CorpusEntry(
        "quartic_companion",
        algebra,
        lam,
        params={"delta": delta},
        expected={"radical_dim": 3, "top_power": 2},
    )


def truncated_poly(field: FieldSpec, n: int) -> CorpusEntry:
    """k[t]/(t^n): commutative, local, symmetric; functional picks the
    t^(n-1) coefficient. The radical basis is declared, so small prime
    fields work at any characteristic."""
    if n < 1:
        raise ZeroParameter("truncation order must be >= 1")
    names = ["1"] + ["t" if k == 1 else f"t{k}" for k in range(1, n)]
    entries = [
        [i, j, i + j, 1] for i in range(n) for j in range(n) if i + j < n
    ]
    one = [1] + [0] * (n - 1)
    radical = [
        [1 if j == k else 0 for j in range(n)] for k in range(1, n)
    ]
    algebra = validate(field, names, entries, one, radical_basis=radical or None)
    lam = Functional(algebra, [0] * (n - 1) + [1])
    return CorpusEntry(
        "truncated_poly",
        algebra,
        lam,
        params={"n": n},
        expected={"radical_dim": n - 1, "top_power": n - 1 if n > 1 else 0},
    )


def group_algebra(field: FieldSpec, elements, table, name="group_algebra") -> CorpusEntry:
    """kG from a Cayley table (table[i][j] = index of g_i * g_j).

    The functional picks the coefficient of the identity. When G is a
    p-group and char k = p, the augmentation ideal is declared as the
    radical basis.
    """
    size = len(elements)
    if size == 0 or len(table) != size or any(len(row) != size for row in table):
        raise NotAGroup("Cayley table shape mismatch")
    if any(not (0 <= v < size) for row in table for v in row):
        raise NotAGroup("Cayley table entry out of range")
    identity = None
    for e in range(size):
        if all(table[e][j] == j for j in range(size)) and all(
            table[i][e] == i for i in range(size)
        ):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no two-sided identity element")
    for i in range(size):
        for j in range(size):
            for k in range(size):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise NotAGroup(f"associativity fails at ({i}, {j}, {k})")
    for i in range(size):
        if not any(table[i][j] == identity and table[j][i] == identity for j in range(size)):
            raise NotAGroup(f"element {elements[i]} has no inverse")

    entries = [[i, j, table[i][j], 1] for i in range(size) for j in range(size)]
    one = [1 if i == identity else 0 for i in range(size)]
    radical = None
    p = field.characteristic
    if p:
        v = size
        while v % p == 0:
            v //= p
        if v == 1:  # |G| is a power of char k: kG is local, rad = augmentation ideal
            radical = []
            for i in range(size):
                if i == identity:
                    continue
                vec = [0] * size
                vec[i] = 1
                vec[identity] = -1
                radical.append(vec)
    algebra = validate(field, elements, entries, one, radical_basis=radical)
    lam = Functional(algebra, one)
    commutative = all(
        table[i][j] == table[j][i] for i in range(size) for j in range(size)
    )
    return CorpusEntry(
        name,
        algebra,
        lam,
        params={"order": size},
        expected={"commutative": commutative, "local": radical is not None},
    )


def heisenberg_table():
    """Order-27 Heisenberg group: unitriangular 3x3 matrices over GF(3).

    Elements are triples (a, b, c) with
    (a, b, c)*(a', b', c') = (a+a', b+b', c+c'+a*b') mod 3.
    """
    triples = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
    index = {t: i for i, t in enumerate(triples)}
    names = [f"g{a}{b}{c}" for a, b, c in triples]
    table = [
        [
            index[((a + d) % 3, (b + e) % 3, (c + f + a * e) % 3)]
            for (d, e, f) in triples
        ]
        for (a, b, c) in triples
    ]
    return names, table


def heisenberg_group_algebra(field: FieldSpec | None = None) -> CorpusEntry:
    """The GF(3) group algebra of the order-27 Heisenberg group: local,
    symmetric, noncommutative."""
    if field is None:
        field = FieldSpec.prime(3)
    names, table = heisenberg_table()
    entry = group_algebra(field, names, table, name="heisenberg")
    return entry
