"""JSON and CSV I/O. Rationals are always written as "num/den" strings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import IncidenceError, PointSet, as_rational

__all__ = [
    "MalformedInputError",
    "PointSetFile",
    "rational_str",
    "point_to_json",
    "point_set_to_json",
    "load_point_set",
    "loads_point_set",
    "dumps",
    "to_csv",
]


class MalformedInputError(IncidenceError):
    """A point-set document failed to parse; the message names the field."""


def rational_str(x) -> str:
    return str(Fraction(x))


def point_to_json(p) -> list:
    return [rational_str(c) for c in p]


def point_set_to_json(S: PointSet, claims: dict | None = None) -> dict:
    out = {"dim": S.dim, "points": [point_to_json(p) for p in S]}
    if claims:
        out["claims"] = claims
    return out


@dataclass
class PointSetFile:
    points: PointSet
    claims: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return point_set_to_json(self.points, self.claims)

    def dumps(self) -> str:
        return dumps(self.to_json())


def _parse_coord(value, where):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise MalformedInputError(f"{where}: expected a 'num/den' string, got {value!r}")
    try:
        return as_rational(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"{where}: {exc}") from None


def loads_point_set(text: str) -> PointSetFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return load_point_set(doc)


def load_point_set(doc: dict) -> PointSetFile:
    """Validate a parsed document and build the PointSet."""
    if not isinstance(doc, dict):
        raise MalformedInputError("top level: expected an object with 'dim' and 'points'")
    dim = doc.get("dim")
    if dim not in (2, 3):
        raise MalformedInputError(f"field 'dim': expected 2 or 3, got {dim!r}")
    raw = doc.get("points")
    if not isinstance(raw, list):
        raise MalformedInputError("field 'points': expected a list of coordinate arrays")
    pts = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise MalformedInputError(f"field 'points[{i}]': expected {dim} coordinates, got {row!r}")
        pts.append(tuple(_parse_coord(c, f"field 'points[{i}][{j}]'") for j, c in enumerate(row)))
    claims = doc.get("claims")
    if claims is None:
        claims = {}
    elif not isinstance(claims, dict):
        raise MalformedInputError("field 'claims': expected an object")
    return PointSetFile(PointSet(pts, dim=dim), claims)


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    """JSON with Fractions as strings; floats are refused."""
    _reject_floats(obj)
    return json.dumps(obj, indent=indent, default=_default)


def _reject_floats(obj):
    if isinstance(obj, float):
        raise TypeError("floats are never serialized; use Fraction")
    if isinstance(obj, dict):
        for v in obj.values():
            _reject_floats(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _reject_floats(v)


def to_csv(rows, columns=None) -> str:
    """Rows of dicts to CSV text; Fractions become "num/den"."""
    rows = list(rows)
    if columns is None:
        columns = []
        for row in rows:
            for key in row:
                if key not in columns:
                    columns.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: str(v) if isinstance(v, Fraction) else v for k, v in row.items()})
    return buf.getvalue()
