"""Flat-file formats: matrix text files.

Format: first line is the dimension n, then n lines of n space-separated
integers.  Chirality files restrict entries to {-1, 0, 1}; ring files to
non-negative integers.  Parsing is strict apart from trailing whitespace.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence


class MatrixTextError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def parse_matrix_text(text: str, kind: str = "chirality") -> list[list[int]]:
    lines = text.rstrip().splitlines()
    if not lines:
        raise MatrixTextError("empty input")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise MatrixTextError(f"expected dimension, got {lines[0]!r}", line=1) from None
    if len(lines) != n + 1:
        raise MatrixTextError(f"expected {n} rows after the header, got {len(lines) - 1}")
    rows = []
    for ln, raw in enumerate(lines[1:], start=2):
        parts = raw.split()
        if len(parts) != n:
            raise MatrixTextError(f"expected {n} entries, got {len(parts)}", line=ln)
        try:
            row = [int(p) for p in parts]
        except ValueError:
            raise MatrixTextError(f"non-integer entry in {raw!r}", line=ln) from None
        for v in row:
            if kind == "chirality" and v not in (-1, 0, 1):
                raise MatrixTextError(f"entry {v} outside {{-1,0,1}}", line=ln)
            if kind == "ring" and v < 0:
                raise MatrixTextError(f"negative entry {v}", line=ln)
        rows.append(row)
    return rows


def read_matrix_text(path: str | Path, kind: str = "chirality") -> list[list[int]]:
    return parse_matrix_text(Path(path).read_text(), kind=kind)


def format_matrix_text(rows: Sequence[Sequence[int]]) -> str:
    out = [str(len(rows))]
    out += [" ".join(str(v) for v in row) for row in rows]
    return "\n".join(out) + "\n"


def write_matrix_text(path: str | Path, rows: Sequence[Sequence[int]]) -> None:
    Path(path).write_text(format_matrix_text(rows))
