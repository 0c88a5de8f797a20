"""JSON input documents.

Two shapes are accepted::

    {"kind": "polygon", "vertices": [[x, y, ...], ...]}
    {"kind": "star", "center": [x, y, ...], "leaves": [[x, y, ...], ...]}

Floats are written with ``repr`` precision, so a dump followed by a load
returns the same bits.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import ValidationError
from .geometry import Polygon, StarGraph, validate_polygon, validate_star


class DocumentError(ValidationError):
    """Unreadable file, malformed JSON, or a document that breaks the schema."""


def _reject_constant(name: str):
    raise ValueError(f"non-finite literal {name} is not allowed")


def _coords(value, where: str) -> list[float]:
    if not isinstance(value, list) or not value:
        raise DocumentError(f"{where}: expected a non-empty list of numbers")
    out = []
    for k, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise DocumentError(f"{where}[{k}]: expected a number, got {x!r}")
        if not math.isfinite(x):
            raise DocumentError(f"{where}[{k}]: number is not finite")
        out.append(float(x))
    return out


def _points(value, where: str) -> list[list[float]]:
    if not isinstance(value, list):
        raise DocumentError(f"{where}: expected a list of coordinate lists")
    return [_coords(v, f"{where}[{k}]") for k, v in enumerate(value)]


def parse_document(text: str, source: str = "<input>") -> Polygon | StarGraph:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except ValueError as exc:
        raise DocumentError(f"{source}: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError(f"{source}: top level must be an object")
    kind = doc.get("kind")
    if kind == "polygon":
        extra = set(doc) - {"kind", "vertices"}
        if extra or "vertices" not in doc:
            raise DocumentError(f"{source}: polygon needs exactly the keys kind, vertices")
        return validate_polygon(_points(doc["vertices"], "vertices"))
    if kind == "star":
        extra = set(doc) - {"kind", "center", "leaves"}
        if extra or "center" not in doc or "leaves" not in doc:
            raise DocumentError(f"{source}: star needs exactly the keys kind, center, leaves")
        return validate_star(_coords(doc["center"], "center"), _points(doc["leaves"], "leaves"))
    raise DocumentError(f"{source}: kind must be \"polygon\" or \"star\", got {kind!r}")


def load_document(path: str | Path) -> Polygon | StarGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DocumentError(f"{path}: cannot read ({exc})") from None
    return parse_document(text, str(path))


def dump_document(shape: Polygon | StarGraph) -> str:
    if isinstance(shape, StarGraph):
        doc = {"kind": "star", "center": shape.center.tolist(), "leaves": shape.leaves.tolist()}
    else:
        doc = {"kind": "polygon", "vertices": shape.vertices.tolist()}
    return json.dumps(doc)
