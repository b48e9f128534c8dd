"""The tuple-file JSON format: the toolkit's only interchange surface.

A tuple file is a JSON object with integer fields "d" and "dim", a
"matrices" array of shape d x dim x dim whose innermost entries are [re, im]
pairs, and optional "q" (integer list), "m" (integer), and "metadata" (object)
fields. For m-inverse audits the metadata may embed a partner tuple under
"left_inverse" or "right_inverse" as {"matrices": [...]} with the same
encoding and shape.

Serialization writes floats in Python's shortest round-trip form (at most 17
significant digits), so emit/parse is lossless and byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_TOL, ToleranceModel
from .tuples import OperatorTuple, make_tuple


class TupleFileError(ValueError):
    """Schema violation, reported with the JSON path of the offending node."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _require_int(value, path: str, minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TupleFileError(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise TupleFileError(path, f"expected an integer >= {minimum}, got {value}")
    return value


def _require_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TupleFileError(path, f"expected a number, got {value!r}")
    out = float(value)
    if not np.isfinite(out):
        raise TupleFileError(path, f"expected a finite number, got {value!r}")
    return out


def _parse_complex(value, path: str) -> complex:
    if not isinstance(value, list) or len(value) != 2:
        raise TupleFileError(path, f"expected an [re, im] pair, got {value!r}")
    return complex(_require_number(value[0], path + "/0"), _require_number(value[1], path + "/1"))


def parse_matrices(value, d: int, dim: int, path: str) -> list[np.ndarray]:
    if not isinstance(value, list) or len(value) != d:
        raise TupleFileError(path, f"expected {d} matrices")
    mats = []
    for j, rows in enumerate(value):
        mpath = f"{path}/{j}"
        if not isinstance(rows, list) or len(rows) != dim:
            raise TupleFileError(mpath, f"expected {dim} rows")
        mat = np.zeros((dim, dim), dtype=np.complex128)
        for r, row in enumerate(rows):
            rpath = f"{mpath}/{r}"
            if not isinstance(row, list) or len(row) != dim:
                raise TupleFileError(rpath, f"expected {dim} entries")
            for c, entry in enumerate(row):
                mat[r, c] = _parse_complex(entry, f"{rpath}/{c}")
        mats.append(mat)
    return mats


@dataclass(frozen=True)
class ParsedTupleFile:
    tuple: OperatorTuple
    m: int | None = None
    q: tuple[int, ...] | None = None
    metadata: dict = field(default_factory=dict)


def parse_tuple_file(text: str, tol: ToleranceModel = DEFAULT_TOL) -> ParsedTupleFile:
    """Parse and validate one tuple file; commutativity is enforced."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TupleFileError("/", f"not valid JSON ({exc.msg} at char {exc.pos})") from exc
    if not isinstance(doc, dict):
        raise TupleFileError("/", "top level must be a JSON object")
    for key in ("d", "dim", "matrices"):
        if key not in doc:
            raise TupleFileError(f"/{key}", "missing required field")
    for key in doc:
        if key not in ("d", "dim", "matrices", "q", "m", "metadata"):
            raise TupleFileError(f"/{key}", "unknown field")

    d = _require_int(doc["d"], "/d", minimum=1)
    dim = _require_int(doc["dim"], "/dim", minimum=1)
    mats = parse_matrices(doc["matrices"], d, dim, "/matrices")

    q = None
    if "q" in doc:
        if not isinstance(doc["q"], list) or len(doc["q"]) != d:
            raise TupleFileError("/q", f"expected a list of {d} integers")
        q = tuple(_require_int(v, f"/q/{i}", minimum=0) for i, v in enumerate(doc["q"]))

    m = _require_int(doc["m"], "/m", minimum=1) if "m" in doc else None

    metadata = {}
    if "metadata" in doc:
        if not isinstance(doc["metadata"], dict):
            raise TupleFileError("/metadata", "expected an object")
        metadata = doc["metadata"]

    return ParsedTupleFile(tuple=make_tuple(mats, tol), m=m, q=q, metadata=metadata)


def parse_partner(
    parsed: ParsedTupleFile, key: str, tol: ToleranceModel = DEFAULT_TOL
) -> OperatorTuple:
    """Extract a partner tuple ("left_inverse" or "right_inverse") from metadata."""
    if key not in parsed.metadata:
        raise TupleFileError(f"/metadata/{key}", "missing partner tuple for this audit")
    node = parsed.metadata[key]
    if not isinstance(node, dict) or "matrices" not in node:
        raise TupleFileError(f"/metadata/{key}", 'expected an object with a "matrices" field')
    mats = parse_matrices(
        node["matrices"], parsed.tuple.d, parsed.tuple.dim, f"/metadata/{key}/matrices"
    )
    return make_tuple(mats, tol)


def matrices_to_json(mats) -> list:
    return [
        [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]
        for m in mats
    ]


def serialize_tuple_file(
    t: OperatorTuple,
    m: int | None = None,
    q=None,
    metadata: dict | None = None,
    indent: int | None = 2,
) -> str:
    doc: dict = {"d": t.d, "dim": t.dim, "matrices": matrices_to_json(t.matrices)}
    if q is not None:
        doc["q"] = [int(v) for v in q]
    if m is not None:
        doc["m"] = int(m)
    if metadata:
        doc["metadata"] = metadata
    return json.dumps(doc, indent=indent, sort_keys=True)
