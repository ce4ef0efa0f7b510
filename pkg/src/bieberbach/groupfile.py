"""JSON group file format.

A group document looks like:

    {
      "name": "klein_bottle",
      "dimension": 2,
      "generators": [
        {"matrix": [[1, 0], [0, -1]], "translation": ["1/2", "0"]}
      ]
    }

Matrix entries are JSON integers; translation entries are exact
rationals written as strings "p/q" or "n" (JSON integers are also
accepted).  Decimal notation is rejected: this tool never touches
floats.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .crystal import AffineGen, CrystalGroup, build_group


class GroupFileError(ValueError):
    """Malformed group document."""


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise GroupFileError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise GroupFileError(
            f"decimal notation rejected ({value!r}); write an exact rational like \"1/2\""
        )
    if isinstance(value, str):
        text = value.strip()
        if "." in text or not text:
            raise GroupFileError(f"not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise GroupFileError(f"not an exact rational: {value!r}") from exc
    raise GroupFileError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def document_to_group(doc, closure_budget: int = 10_000) -> CrystalGroup:
    if not isinstance(doc, dict):
        raise GroupFileError("group document must be a JSON object")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise GroupFileError("'name' must be a string")
    dim = doc.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise GroupFileError("'dimension' must be a nonnegative integer")
    raw_gens = doc.get("generators")
    if not isinstance(raw_gens, list):
        raise GroupFileError("'generators' must be a list")
    gens = []
    for pos, raw in enumerate(raw_gens):
        if not isinstance(raw, dict):
            raise GroupFileError(f"generator {pos} must be an object")
        matrix = raw.get("matrix")
        translation = raw.get("translation")
        if (
            not isinstance(matrix, list)
            or len(matrix) != dim
            or any(not isinstance(row, list) or len(row) != dim for row in matrix)
        ):
            raise GroupFileError(f"generator {pos}: 'matrix' must be {dim}x{dim}")
        for row in matrix:
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise GroupFileError(
                        f"generator {pos}: matrix entries must be integers"
                    )
        if not isinstance(translation, list) or len(translation) != dim:
            raise GroupFileError(
                f"generator {pos}: 'translation' must have {dim} entries"
            )
        shift = tuple(parse_rational(x) for x in translation)
        try:
            gens.append(AffineGen.of(matrix, shift) if dim else AffineGen.identity(0))
        except ValueError as exc:
            raise GroupFileError(f"generator {pos}: {exc}") from exc
    return build_group(dim, gens, name=name, closure_budget=closure_budget)


def group_to_document(group: CrystalGroup) -> dict:
    return {
        "name": group.name,
        "dimension": group.dim,
        "generators": [
            {
                "matrix": [list(row) for row in g.matrix],
                "translation": [format_rational(x) for x in g.translation],
            }
            for g in group.generators
        ],
    }


def load_group(path, closure_budget: int = 10_000) -> CrystalGroup:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GroupFileError(f"invalid JSON: {exc}") from exc
    return document_to_group(doc, closure_budget=closure_budget)


def dump_group(group: CrystalGroup, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(group_to_document(group), fh, indent=2)
        fh.write("\n")
