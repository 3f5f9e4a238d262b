"""Space ingestion: pairs-json, matrix-text and info-table-csv documents."""

from __future__ import annotations

import csv
import io
import json
from typing import Optional

from .spaces import ToleranceSpace, build_space

FORMATS = ("pairs-json", "matrix-text", "info-table-csv")


def parse_pairs_json(text: str) -> ToleranceSpace:
    doc = json.loads(text)
    return build_space(
        doc["n"],
        [tuple(p) for p in doc["pairs"]],
        symmetrize=True,
        labels=doc.get("labels"),
    )


def parse_matrix_text(text: str) -> ToleranceSpace:
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and nonempty")
    if any(ch not in "01" for r in rows for ch in r):
        raise ValueError("matrix entries must be 0 or 1")
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"asymmetric matrix at ({i},{j})")
            if rows[i][j] == "1":
                pairs.append((i, j))
    return build_space(n, pairs)


def parse_info_table_csv(text: str, theta: float) -> ToleranceSpace:
    """Attribute table to tolerance: objects are rows, two objects are
    related when their share of equal attribute values is at least theta."""
    if not 0.0 <= theta <= 1.0:
        raise ValueError("theta must lie in [0, 1]")
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r]
    if len(rows) < 2:
        raise ValueError("info table needs a header and at least one object row")
    header, objects = rows[0], rows[1:]
    n_attrs = len(header) - 1
    if n_attrs < 1:
        raise ValueError("info table needs at least one attribute column")
    labels = [r[0] for r in objects]
    values = [r[1:] for r in objects]
    if any(len(v) != n_attrs for v in values):
        raise ValueError("ragged info table")
    n = len(objects)
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            same = sum(a == b for a, b in zip(values[i], values[j]))
            if same / n_attrs >= theta:
                pairs.append((i, j))
    return build_space(n, pairs, labels=labels if len(set(labels)) == n else None)


def parse_document(
    text: str, fmt: str, theta: Optional[float] = None
) -> ToleranceSpace:
    if fmt == "pairs-json":
        return parse_pairs_json(text)
    if fmt == "matrix-text":
        return parse_matrix_text(text)
    if fmt == "info-table-csv":
        if theta is None:
            raise ValueError("info-table-csv requires a theta threshold")
        return parse_info_table_csv(text, theta)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def block_graph_dot(space: ToleranceSpace, blocks) -> str:
    """DOT rendering of the relation graph with blocks as clusters."""
    def name(x: int) -> str:
        return space.labels[x] if space.labels else f"v{x}"

    lines = ["graph blocks {"]
    for i, b in enumerate(blocks):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="block {i}";')
        for x in sorted(b):
            lines.append(f'    "{name(x)}";')
        lines.append("  }")
    for i, j in space.pairs():
        lines.append(f'  "{name(i)}" -- "{name(j)}";')
    lines.append("}")
    return "\n".join(lines)
