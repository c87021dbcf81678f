"""CSV writers/readers with deterministic float formatting."""

from __future__ import annotations

from pathlib import Path

import numpy as np

__all__ = ["format_float", "write_csv", "read_csv", "write_rows"]


def format_float(x) -> str:
    # shortest repr round-trips exactly and is platform independent
    return repr(float(x))


def _comment_block(comments) -> str:
    if not comments:
        return ""
    return "".join(f"# {k} = {v}\n" for k, v in comments.items())


def write_csv(path, columns: dict, comments: dict | None = None) -> Path:
    """Write equal-length columns; ``comments`` become leading ``# key = value`` lines."""
    path = Path(path)
    names = list(columns)
    data = [np.asarray(columns[k], dtype=float) for k in names]
    n = len(data[0])
    if any(len(d) != n for d in data):
        raise ValueError("columns differ in length")
    lines = [_comment_block(comments), ",".join(names), "\n"]
    for i in range(n):
        lines.append(",".join(format_float(d[i]) for d in data))
        lines.append("\n")
    path.write_text("".join(lines))
    return path


def write_rows(path, header, rows, comments: dict | None = None) -> Path:
    """Write rows of mixed str/number cells."""
    path = Path(path)

    def cell(v):
        if isinstance(v, (float, np.floating)):
            return format_float(v)
        return str(v)

    out = [_comment_block(comments), ",".join(header), "\n"]
    for r in rows:
        out.append(",".join(cell(v) for v in r))
        out.append("\n")
    path.write_text("".join(out))
    return path


def read_csv(path) -> dict:
    """Read a CSV written by :func:`write_csv` or :func:`write_rows`, skipping ``#`` lines.

    Columns that do not parse as floats come back as string arrays.
    """
    header = None
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = [h.strip() for h in line.split(",")]
            continue
        cells = [v.strip() for v in line.split(",")]
        if len(cells) != len(header):
            raise ValueError(f"{path}: row has {len(cells)} cells, header has {len(header)}")
        rows.append(cells)
    if header is None:
        raise ValueError(f"{path}: no header line")
    out = {}
    for j, name in enumerate(header):
        col = [r[j] for r in rows]
        try:
            out[name] = np.array([float(v) for v in col], dtype=float)
        except ValueError:
            out[name] = np.array(col, dtype=str)
    return out
