"""Reading spaces, distances and points from JSON or CSV documents."""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

from .order import DEFAULT_EPS, CVMLError, InvalidInputError, as_complex, parse_complex
from .spaces import DistanceFn, FiniteSpace, sample_space, user_matrix


class ParseError(CVMLError):
    """Input text could not be parsed; the message carries the position."""


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def load_document(path: str):
    """JSON object, or ``{"space": ...}`` built from a CSV matrix file.

    Fixture files (``{"command", "input", "expect"}``) are unwrapped to
    their ``input`` document.
    """
    text = read_text(path)
    if path.lower().endswith(".csv"):
        return {"space": parse_space_csv(text)}
    doc = parse_json(text, path)
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    if "input" in doc and "expect" in doc:
        doc = doc["input"]
    return doc


def parse_json(text: str, name: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_space_csv(text: str, eps: float = DEFAULT_EPS) -> FiniteSpace:
    """Header row of labels, then ``n`` rows of ``n`` cells like ``1+2i``."""
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty CSV")
    labels = [c.strip() for c in rows[0]]
    matrix = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(labels):
            raise ParseError(f"CSV row {i}: expected {len(labels)} cells, got {len(row)}")
        cells = []
        for j, cell in enumerate(row, start=1):
            try:
                cells.append(parse_complex(cell))
            except InvalidInputError as exc:
                raise ParseError(f"CSV row {i} column {j}: {exc}") from None
        matrix.append(cells)
    return FiniteSpace(labels, matrix, eps=eps)


def parse_points(values) -> list:
    if not isinstance(values, list):
        raise InvalidInputError("points must be a list")
    return [v if isinstance(v, str) else as_complex(v) for v in values]


def space_from(doc, eps: float = DEFAULT_EPS) -> FiniteSpace | None:
    """The finite space described by ``doc``, if it describes one."""
    if isinstance(doc, FiniteSpace):
        return doc
    if not isinstance(doc, dict):
        raise InvalidInputError("input must be a JSON object")
    if "space" in doc:
        return space_from(doc["space"], eps)
    if "matrix" in doc:
        return FiniteSpace.from_json(doc, eps=eps)
    if "points" in doc and ("distance" in doc or "fn" in doc):
        return sample_space(distance_from(doc, eps), parse_points(doc["points"]), eps=eps)
    return None


def distance_from(doc, eps: float = DEFAULT_EPS) -> DistanceFn:
    if "distance" in doc:
        return DistanceFn.from_json(doc["distance"], eps=eps)
    if "fn" in doc:
        return DistanceFn.from_json(doc, eps=eps)
    space = space_from(doc, eps)
    if space is None:
        raise InvalidInputError('input needs a "distance" object or a "space"')
    return user_matrix(space)
