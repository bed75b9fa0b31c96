"""Reading and writing geometry description files and run reports.

A geometry file is JSON with a field block, the ambient dimension, and one
or more specs, each a flag (list of subspace matrices, zero space first,
full space last) plus one Gram matrix per flag step.  All integers are
decimal; every field element appears as its coefficient array of length e
(constant term first).

    {
      "field": {"p": 5, "e": 1, "sigma_order": 1},
      "ambient_dim": 3,
      "specs": [
        {
          "flag": [[], [[[1],[0],[0]], [[0],[1],[0]], [[0],[0],[1]]]],
          "forms": [[[[1],[0],[0]], [[0],[1],[0]], [[0],[0],[1]]]]
        }
      ]
    }

Reports serialize with sorted keys and a schema version so identical inputs
produce byte-identical documents.
"""

from __future__ import annotations

import hashlib
import json

from .field import Field, make_field
from .forms import HermitianForm
from .linalg import Flag, Subspace
from .phan import PhanFamily, PhanSpec

__all__ = [
    "SpecFileError",
    "load_family",
    "parse_family",
    "family_to_dict",
    "dump_family",
    "canonical_json",
    "file_digest",
    "REPORT_SCHEMA_VERSION",
]

REPORT_SCHEMA_VERSION = 1


class SpecFileError(ValueError):
    """Malformed geometry file; the message names the offending location."""


def _element(field: Field, obj, where: str) -> int:
    if not isinstance(obj, list) or len(obj) != field.e:
        raise SpecFileError(
            f"{where}: expected a coefficient array of length {field.e}, got {obj!r}"
        )
    try:
        return field.from_coeffs(obj)
    except ValueError as exc:
        raise SpecFileError(f"{where}: {exc}") from exc


def _vector(field: Field, obj, ambient: int, where: str) -> tuple[int, ...]:
    if not isinstance(obj, list) or len(obj) != ambient:
        raise SpecFileError(f"{where}: expected a row of {ambient} elements")
    return tuple(_element(field, x, f"{where}[{i}]") for i, x in enumerate(obj))


def _subspace(field: Field, obj, ambient: int, where: str) -> Subspace:
    if not isinstance(obj, list):
        raise SpecFileError(f"{where}: expected a list of rows")
    rows = [_vector(field, r, ambient, f"{where}[{i}]") for i, r in enumerate(obj)]
    return Subspace.span(field, ambient, rows)


def _gram(field: Field, obj, k: int, where: str):
    if not isinstance(obj, list) or len(obj) != k or any(
        not isinstance(r, list) or len(r) != k for r in obj
    ):
        raise SpecFileError(f"{where}: expected a {k}x{k} matrix")
    return tuple(
        tuple(_element(field, x, f"{where}[{i}][{j}]") for j, x in enumerate(row))
        for i, row in enumerate(obj)
    )


def parse_family(doc: dict) -> PhanFamily:
    if not isinstance(doc, dict):
        raise SpecFileError("top level: expected a JSON object")
    fblock = doc.get("field")
    if not isinstance(fblock, dict):
        raise SpecFileError("field: missing or not an object")
    try:
        field = make_field(
            int(fblock["p"]), int(fblock["e"]), int(fblock.get("sigma_order", 1))
        )
    except (KeyError, TypeError) as exc:
        raise SpecFileError(f"field: needs integer entries p, e, sigma_order ({exc})")
    except ValueError as exc:
        raise SpecFileError(f"field: {exc}") from exc
    ambient = doc.get("ambient_dim")
    if not isinstance(ambient, int) or ambient < 2:
        raise SpecFileError("ambient_dim: expected an integer >= 2")
    raw_specs = doc.get("specs")
    if not isinstance(raw_specs, list) or not raw_specs:
        raise SpecFileError("specs: expected a non-empty list")
    specs = []
    for si, raw in enumerate(raw_specs):
        where = f"specs[{si}]"
        if not isinstance(raw, dict):
            raise SpecFileError(f"{where}: expected an object")
        raw_flag = raw.get("flag")
        if not isinstance(raw_flag, list) or len(raw_flag) < 2:
            raise SpecFileError(f"{where}.flag: expected a list of >= 2 subspaces")
        members = [
            _subspace(field, m, ambient, f"{where}.flag[{i}]")
            for i, m in enumerate(raw_flag)
        ]
        try:
            flag = Flag(tuple(members))
        except ValueError as exc:
            raise SpecFileError(f"{where}.flag: {exc}") from exc
        if not flag.top.is_full():
            raise SpecFileError(f"{where}.flag: last member must be the full space")
        raw_forms = raw.get("forms")
        if not isinstance(raw_forms, list) or len(raw_forms) != len(members) - 1:
            raise SpecFileError(
                f"{where}.forms: expected {len(members) - 1} Gram matrices"
            )
        forms = []
        for fi, rawg in enumerate(raw_forms):
            dom = members[fi + 1]
            gram = _gram(field, rawg, dom.dim, f"{where}.forms[{fi}]")
            try:
                forms.append(HermitianForm(field, dom, gram))
            except ValueError as exc:
                raise SpecFileError(f"{where}.forms[{fi}]: {exc}") from exc
        try:
            specs.append(PhanSpec(flag, tuple(forms)))
        except ValueError as exc:
            raise SpecFileError(f"{where}: {exc}") from exc
    return PhanFamily(tuple(specs))


def load_family(path: str) -> tuple[PhanFamily, str]:
    """Parse a geometry file; returns the family and the input digest."""
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return parse_family(doc), hashlib.sha256(data).hexdigest()


def _subspace_doc(field: Field, s: Subspace):
    return [[list(field.coeffs(x)) for x in row] for row in s.basis]


def family_to_dict(family: PhanFamily) -> dict:
    field = family.field
    return {
        "field": {"p": field.p, "e": field.e, "sigma_order": field.sigma_order},
        "ambient_dim": family.ambient.dim,
        "specs": [
            {
                "flag": [_subspace_doc(field, m) for m in spec.flag.members],
                "forms": [
                    [[list(field.coeffs(x)) for x in row] for row in w.gram]
                    for w in spec.forms
                ],
            }
            for spec in family.specs
        ],
    }


def dump_family(family: PhanFamily, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_json(family_to_dict(family)))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()
