"""Puncturing, column splitting (extension) and row splitting (nesting)."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .binmat import BitMatrix
from .codes import LdpcCode
from .errors import InvalidSplit, LineNotInCode
from .geometry import Line


@dataclass(frozen=True)
class SplitSpec:
    q: int
    direction: str  # "rows" | "columns"

    def __post_init__(self) -> None:
        if self.q < 1:
            raise InvalidSplit(f"split factor must be positive, got {self.q}")
        if self.direction not in ("rows", "columns"):
            raise InvalidSplit(f"direction must be 'rows' or 'columns', got {self.direction!r}")


def column_split_range(code: LdpcCode) -> tuple[int, int] | None:
    """Allowed ``q`` for extending a geometry code, or ``None`` if there is no stated range."""
    s = code.origin.s
    if code.origin.kind == "eg" and s is not None:
        return 2, 1 << s
    if code.origin.kind == "pg" and s is not None:
        return 2, (1 << s) + 1
    return None


def _round_robin(major: np.ndarray, q: int) -> np.ndarray:
    """Rank of each entry within its group (``major`` sorted), modulo ``q``."""
    if major.size == 0:
        return major
    starts = np.flatnonzero(np.r_[True, major[1:] != major[:-1]])
    lengths = np.diff(np.r_[starts, major.size])
    rank_in_group = np.arange(major.size) - np.repeat(starts, lengths)
    return rank_in_group % q


def split_columns(H: BitMatrix, q: int) -> BitMatrix:
    """Replace each column by ``q`` adjacent columns, dealing its ones out in turn.

    The ones of column ``c`` are taken in increasing row order; the t-th goes to
    new column ``c*q + (t mod q)``.
    """
    if q < 1:
        raise InvalidSplit(f"split factor must be positive, got {q}")
    if q == 1:
        return H
    r, c = H.nonzero()
    order = np.lexsort((r, c))
    r, c = r[order], c[order]
    return BitMatrix.from_coordinates(H.rows, H.cols * q, r, c * q + _round_robin(c, q))


def split_rows(H: BitMatrix, q: int) -> BitMatrix:
    """Replace each row by ``q`` adjacent rows, dealing its ones out in increasing column order.

    The q fragments of a row sum to that row, so the row space can only grow.
    """
    if q < 1:
        raise InvalidSplit(f"split factor must be positive, got {q}")
    if q == 1:
        return H
    r, c = H.nonzero()
    if np.any(H.row_weights() < q):
        warnings.warn(f"rows of weight below q={q} leave all-zero fragments", stacklevel=2)
    return BitMatrix.from_coordinates(H.rows * q, H.cols, r * q + _round_robin(r, q), c)


def _line_columns(code: LdpcCode, line: Line) -> np.ndarray:
    lookup = {int(label): j for j, label in enumerate(code.columns)}
    try:
        return np.array([lookup[p] for p in line.points], dtype=np.int64)
    except KeyError as exc:
        raise LineNotInCode(f"point {exc.args[0]} of the line is not a column of this code") from None


def puncture(code: LdpcCode, lines: Line | Sequence[Line]) -> LdpcCode:
    """Delete the columns on the given line(s), then the rows left all zero.

    Each line must appear as a row of ``H`` (its incidence vector, restricted to
    the remaining columns).  Several parallel lines may be removed at once.
    """
    if isinstance(lines, Line):
        lines = [lines]
    H = code.H
    supports = {tuple(s) for s in H.supports()}
    drop: list[np.ndarray] = []
    for line in lines:
        if line.contains_origin:
            raise LineNotInCode("lines through the origin have no row in H")
        cols = _line_columns(code, line)
        if tuple(sorted(cols.tolist())) not in supports:
            raise LineNotInCode(f"line {line.points} is not a row of the parity-check matrix")
        drop.append(cols)
    removed = np.unique(np.concatenate(drop)) if drop else np.zeros(0, np.int64)
    keep_cols = np.setdiff1d(np.arange(H.cols), removed)
    reduced = H.take_columns(keep_cols)
    keep_rows = np.flatnonzero(reduced.row_weights() > 0)
    step = "puncture:" + ";".join(",".join(map(str, ln.points)) for ln in lines)
    return LdpcCode(
        reduced.take_rows(keep_rows),
        code.origin.then(step),
        columns=code.columns[keep_cols],
    )


def extend_code(code: LdpcCode, q: int) -> LdpcCode:
    """Column-split extension of a code to length ``q * n``."""
    bounds = column_split_range(code)
    if bounds is not None and not bounds[0] <= q <= bounds[1]:
        raise InvalidSplit(f"q={q} outside {bounds[0]}..{bounds[1]} for {code.origin.describe()}")
    return LdpcCode(split_columns(code.H, q), code.origin.then(f"split_columns:{q}"))


def row_split_code(code: LdpcCode, q: int) -> LdpcCode:
    """The subcode cut out by the row-split matrix; nested inside ``code``."""
    return LdpcCode(split_rows(code.H, q), code.origin.then(f"split_rows:{q}"), columns=code.columns)
