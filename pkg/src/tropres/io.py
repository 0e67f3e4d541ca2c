"""Arrangement documents and report serialization.

A document is JSON with a ``points`` field: a row-major list of rows, each
coordinate a ``[numerator, denominator]`` pair.  Unknown fields are ignored.
Writing always uses the pair encoding, so documents round-trip bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .tropical import Arrangement

__all__ = ["ArrangementDocument", "DocumentError", "parse_rational", "dumps_report"]

FORMAT = "tropres-arrangement"


class DocumentError(ValueError):
    """The input document is malformed."""


def parse_rational(x) -> Fraction:
    """Accept ``[num, den]``, an int, or a ``"p/q"`` string."""
    if isinstance(x, bool):
        raise DocumentError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"not a rational: {x!r}") from exc
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(v, int) and not isinstance(v, bool) for v in x
    ):
        if x[1] == 0:
            raise DocumentError("zero denominator")
        return Fraction(x[0], x[1])
    raise DocumentError(f"not a rational: {x!r}")


def _encode(q: Fraction) -> list[int]:
    return [q.numerator, q.denominator]


@dataclass
class ArrangementDocument:
    points: list[list[Fraction]]
    name: str = ""
    seed: int | None = None
    generic: bool | None = None
    extra: dict[str, Any] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.points:
            raise DocumentError("document has no points")
        d = len(self.points[0])
        if d == 0:
            raise DocumentError("points must have at least one coordinate")
        if any(len(r) != d for r in self.points):
            raise DocumentError("all points must have the same number of coordinates")
        self.points = [[parse_rational(x) if not isinstance(x, Fraction) else x for x in r]
                       for r in self.points]

    @classmethod
    def from_arrangement(cls, arr: Arrangement, **meta) -> "ArrangementDocument":
        return cls([list(r) for r in arr.raw], **meta)

    def arrangement(self) -> Arrangement:
        return Arrangement.from_points(self.points)

    def to_dict(self) -> dict:
        out = {
            "format": FORMAT,
            "name": self.name,
            "points": [[_encode(q) for q in row] for row in self.points],
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.generic is not None:
            out["generic"] = self.generic
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "ArrangementDocument":
        if not isinstance(data, dict) or "points" not in data:
            raise DocumentError("document must be an object with a 'points' field")
        rows = data["points"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise DocumentError("'points' must be a list of rows")
        points = [[parse_rational(x) for x in r] for r in rows]
        seed = data.get("seed")
        generic = data.get("generic")
        return cls(points, name=str(data.get("name", "")), seed=seed, generic=generic)

    @classmethod
    def loads(cls, text: str) -> "ArrangementDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "ArrangementDocument":
        return cls.loads(Path(path).read_text())


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(v) for v in obj)
    return obj


def dumps_report(report: dict) -> str:
    """Structured text with stable key ordering."""
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
