"""Plain-text matrix format.

A matrix is written as a line holding its dimension followed by one line
per row; entries are ``re+imj`` (or ``re-imj``) separated by single
spaces. Several matrices may be concatenated in one file. Numbers use
``repr`` so a dump/load cycle is exact.
"""

from __future__ import annotations

import numpy as np

from .algebra import as_matrix

__all__ = ["dump_matrices", "format_matrix", "load_matrices", "parse_matrix"]


def _format_entry(z: complex) -> str:
    im = repr(float(z.imag))
    if not im.startswith("-"):
        im = "+" + im
    return f"{float(z.real)!r}{im}j"


def format_matrix(m) -> str:
    m = as_matrix(m)
    lines = [str(m.shape[0])]
    lines += [" ".join(_format_entry(z) for z in row) for row in m]
    return "\n".join(lines) + "\n"


def _parse_blocks(text: str) -> list[np.ndarray]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    out, i = [], 0
    while i < len(lines):
        try:
            dim = int(lines[i])
        except ValueError:
            raise ValueError(f"line {i + 1}: expected a dimension, got {lines[i]!r}") from None
        if dim < 1 or i + dim >= len(lines):
            raise ValueError(f"truncated matrix block starting at line {i + 1}")
        rows = []
        for r in range(dim):
            fields = lines[i + 1 + r].split(" ")
            if len(fields) != dim:
                raise ValueError(f"line {i + 2 + r}: expected {dim} entries, got {len(fields)}")
            try:
                rows.append([complex(f) for f in fields])
            except ValueError:
                raise ValueError(f"line {i + 2 + r}: malformed complex entry") from None
        out.append(np.array(rows, dtype=np.complex128))
        i += dim + 1
    return out


def parse_matrix(text: str) -> np.ndarray:
    blocks = _parse_blocks(text)
    if len(blocks) != 1:
        raise ValueError(f"expected exactly one matrix, found {len(blocks)}")
    return blocks[0]


def dump_matrices(path, matrices) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for m in matrices:
            fh.write(format_matrix(m))


def load_matrices(path) -> list[np.ndarray]:
    with open(path, encoding="ascii") as fh:
        return _parse_blocks(fh.read())
