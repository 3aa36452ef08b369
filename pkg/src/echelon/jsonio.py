"""JSON documents for spaces, metrics, and coloured graphs.

Every document carries the format tag ``echelon/1`` and a ``kind``.
Ranks and colours travel as integers, rationals as "p/q" strings, so no
value ever passes through floating point.  Loading is strict about
structure and about a wrong format tag, silent about a missing one, and
ignores unknown keys.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .colgraph import ColouredGraph
from .errors import ValidationError
from .metrize import Metric, validate_metric
from .ramsey import OrderedEchelonedSpace
from .space import EchelonedSpace, from_rank_table

FORMAT = "echelon/1"


def fraction_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fraction_from_str(s: Any) -> Fraction:
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            pass
    elif isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    raise ValidationError("json/rational", f"expected a 'p/q' string, got {s!r}")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValidationError("json/schema", message)


def _check_header(doc: Any, kind: str) -> None:
    _require(isinstance(doc, dict), "document must be a JSON object")
    tag = doc.get("format")
    if tag is not None and tag != FORMAT:
        raise ValidationError("json/format", f"unsupported format tag {tag!r}")
    _require(doc.get("kind") == kind, f"expected kind {kind!r}, got {doc.get('kind')!r}")


def _int_grid(rows: Any, m: int, what: str) -> list[list[int]]:
    _require(isinstance(rows, list) and len(rows) == m - 1, f"{what} needs {m - 1} rows")
    out = []
    for i, row in enumerate(rows, start=1):
        _require(isinstance(row, list) and len(row) == i, f"{what} row {i} needs {i} entries")
        for x in row:
            _require(isinstance(x, int) and not isinstance(x, bool), f"{what} entries must be integers")
        out.append(list(row))
    return out


def space_to_json(space: EchelonedSpace, order: Optional[tuple[int, ...]] = None) -> dict:
    doc = {
        "format": FORMAT,
        "kind": "space",
        "points": space.m,
        "ranks": space.n,
        "eta": [[space.rank(i, j) for j in range(i)] for i in range(1, space.m)],
    }
    if order is not None:
        doc["order"] = list(order)
    return doc


def space_from_json(doc: Any) -> EchelonedSpace:
    _check_header(doc, "space")
    m = doc.get("points")
    _require(isinstance(m, int) and not isinstance(m, bool) and m >= 1, "points must be a positive integer")
    rows = _int_grid(doc.get("eta"), m, "eta")
    table = [[0] * m for _ in range(m)]
    for i in range(1, m):
        for j in range(i):
            table[i][j] = table[j][i] = rows[i - 1][j]
    space = from_rank_table(tuple(tuple(r) for r in table))
    declared = doc.get("ranks")
    if declared is not None:
        _require(declared == space.n, f"declared ranks {declared} but table has {space.n}")
    return space


def ordered_space_from_json(doc: Any) -> OrderedEchelonedSpace:
    space = space_from_json(doc)
    order = doc.get("order")
    if order is None:
        order = list(range(space.m))
    _require(
        isinstance(order, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in order),
        "order must be a list of integers",
    )
    return OrderedEchelonedSpace(space, tuple(order))


def metric_to_json(d: Metric) -> dict:
    d = validate_metric(d)
    m = len(d)
    return {
        "format": FORMAT,
        "kind": "metric",
        "points": m,
        "d": [[fraction_to_str(d[i][j]) for j in range(i)] for i in range(1, m)],
    }


def metric_from_json(doc: Any) -> Metric:
    _check_header(doc, "metric")
    m = doc.get("points")
    _require(isinstance(m, int) and not isinstance(m, bool) and m >= 1, "points must be a positive integer")
    rows = doc.get("d")
    _require(isinstance(rows, list) and len(rows) == m - 1, f"d needs {m - 1} rows")
    grid = [[Fraction(0)] * m for _ in range(m)]
    for i, row in enumerate(rows, start=1):
        _require(isinstance(row, list) and len(row) == i, f"d row {i} needs {i} entries")
        for j, cell in enumerate(row):
            grid[i][j] = grid[j][i] = fraction_from_str(cell)
    return validate_metric(grid)


def graph_to_json(g: ColouredGraph) -> dict:
    return {
        "format": FORMAT,
        "kind": "graph",
        "v": g.v,
        "colours": list(g.colours),
        "chi": [[g.colour(i, j) for j in range(i)] for i in range(1, g.v)],
    }


def graph_from_json(doc: Any) -> ColouredGraph:
    _check_header(doc, "graph")
    v = doc.get("v")
    _require(isinstance(v, int) and not isinstance(v, bool) and v >= 1, "v must be a positive integer")
    rows = _int_grid(doc.get("chi"), v, "chi")
    flat = []
    for i in range(1, v):
        flat.extend(rows[i - 1])
    return ColouredGraph(v, tuple(flat))


def load_document(doc: Any):
    """Dispatch a parsed document to its loader by kind."""
    _require(isinstance(doc, dict), "document must be a JSON object")
    kind = doc.get("kind")
    if kind == "space":
        if "order" in doc:
            return ordered_space_from_json(doc)
        return space_from_json(doc)
    if kind == "metric":
        return metric_from_json(doc)
    if kind == "graph":
        return graph_from_json(doc)
    raise ValidationError("json/schema", f"unknown kind {kind!r}")


def dumps(doc: dict) -> str:
    """Deterministic rendering: sorted keys, two-space indent, one trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
