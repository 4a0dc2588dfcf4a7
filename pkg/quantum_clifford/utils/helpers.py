import csv
import io
import json
from collections.abc import Iterable, Mapping, Sequence
from hashlib import sha256
from typing import Any

from sympy.polys.matrices import DomainMatrix

from quantum_clifford.scalars import ScalarContext
from quantum_clifford.utils import linalg


def format_error_message(error_message: str, max_length: int | None = None) -> str:
    """
    Format the error message for display.
    Truncate if too long.
    """
    if max_length:
        if len(error_message) > max_length:
            error_message = error_message[:max_length] + " ..."
    return error_message


def canonical_json(data: Any, indent: int | None = None) -> str:
    """
    JSON with sorted keys, so identical payloads serialize to identical bytes.

    Example:
        >>> canonical_json({"b": 1, "a": [2, 3]})
        '{"a": [2, 3], "b": 1}'
    """
    return json.dumps(data, sort_keys=True, indent=indent, ensure_ascii=False, default=str)


def content_hash(data: Any) -> str:
    """sha256 hex digest of the canonical JSON of data."""
    return sha256(canonical_json(data).encode()).hexdigest()


def render_matrix(scalars: ScalarContext, matrix: DomainMatrix) -> list[list[str]]:
    """Dense rows of canonical field strings."""
    rows, cols = matrix.shape
    return [
        [scalars.render(linalg.entry(matrix, i, j)) for j in range(cols)] for i in range(rows)
    ]


def render_sparse(scalars: ScalarContext, matrix: DomainMatrix) -> dict[str, str]:
    """Nonzero entries keyed by "row,col"."""
    return {f"{i},{j}": scalars.render(value) for i, j, value in sorted(linalg.entries(matrix))}


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV text with a header row and Unix line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def to_pretty(data: Any, level: int = 0) -> str:
    """Indented plain-text rendering of a nested JSON payload."""
    pad = "  " * level
    if isinstance(data, Mapping):
        lines = []
        for key in sorted(data):
            value = data[key]
            if isinstance(value, Mapping | list) and value:
                lines.append(f"{pad}{key}:")
                lines.append(to_pretty(value, level + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(value)}")
        return "\n".join(lines)
    if isinstance(data, list):
        if all(not isinstance(item, Mapping | list) for item in data):
            return f"{pad}{', '.join(_scalar_text(item) for item in data)}"
        return "\n".join(to_pretty(item, level) for item in data)
    return f"{pad}{_scalar_text(data)}"


def _scalar_text(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, Mapping | list):
        return json.dumps(value)
    return str(value)
