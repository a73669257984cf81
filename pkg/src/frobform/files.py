"""The algebra definition file format (JSON, one object per file).

Fields: `field` ("Q" or {"GF": p}), `dim`, `basis` (names), `one`
(coordinate literals), `mul` (sparse [i, j, k, literal] entries,
0-indexed), optional `radical_basis`, optional `functionals` (name ->
covector literals). Scalar literals are bit-exact and canonical, so a file
written by the library reparses to an identical algebra.
"""

from __future__ import annotations

import json

from .algebra import Algebra, validate
from .errors import BadAlgebraFile
from .frobenius import Functional
from .scalar import FieldSpec, format_literal, parse_literal


def field_to_json(field: FieldSpec):
    return "Q" if field.modulus is None else {"GF": field.modulus}


def field_from_json(data) -> FieldSpec:
    if data == "Q":
        return FieldSpec.rationals()
    if isinstance(data, dict) and set(data) == {"GF"}:
        return FieldSpec.prime(int(data["GF"]))
    raise BadAlgebraFile(f"unrecognized field spec {data!r}")


def algebra_to_dict(algebra: Algebra, functionals: dict | None = None) -> dict:
    mul = []
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            for k, c in algebra.mul[i][j]:
                mul.append([i, j, k, format_literal(c)])
    data = {
        "field": field_to_json(algebra.field),
        "dim": algebra.dim,
        "basis": list(algebra.basis_names),
        "one": [format_literal(c) for c in algebra.one],
        "mul": mul,
    }
    if algebra.radical_hint is not None:
        data["radical_basis"] = [
            [format_literal(c) for c in vec] for vec in algebra.radical_hint
        ]
    if functionals:
        data["functionals"] = {
            name: [format_literal(c) for c in lam.covector]
            for name, lam in functionals.items()
        }
    return data


def algebra_from_dict(data) -> tuple[Algebra, dict]:
    try:
        field = field_from_json(data["field"])
        dim = int(data["dim"])
        basis = [str(b) for b in data["basis"]]
        if len(basis) != dim:
            raise BadAlgebraFile("dim does not match the basis length")
        one = [parse_literal(str(c), field) for c in data["one"]]
        mul = [
            [int(i), int(j), int(k), parse_literal(str(c), field)]
            for i, j, k, c in data["mul"]
        ]
        radical = None
        if "radical_basis" in data:
            radical = [
                [parse_literal(str(c), field) for c in vec]
                for vec in data["radical_basis"]
            ]
    except (KeyError, TypeError, ValueError) as exc:
        raise BadAlgebraFile(f"malformed algebra file: {exc}") from exc
    algebra = validate(field, basis, mul, one, radical_basis=radical)
    functionals = {}
    for name, covector in data.get("functionals", {}).items():
        functionals[name] = Functional(
            algebra, [parse_literal(str(c), field) for c in covector]
        )
    return algebra, functionals


def dump_algebra(algebra: Algebra, functionals: dict | None = None) -> str:
    return json.dumps(algebra_to_dict(algebra, functionals), indent=1) + "\n"


def load_algebra_text(text: str) -> tuple[Algebra, dict]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadAlgebraFile(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise BadAlgebraFile("algebra file must hold one JSON object")
    return algebra_from_dict(data)


def save_algebra(path: str, algebra: Algebra, functionals: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dump_algebra(algebra, functionals))


def load_algebra(path: str) -> tuple[Algebra, dict]:
    with open(path, encoding="utf-8") as handle:
        return load_algebra_text(handle.read())
