"""Labeled real-valued matrices and their in-row difference structures.

A Matrix is immutable after load; every derivation here is a pure function
of it.  Two parallel views of the pairwise differences exist on purpose:

* statistics (``diff_histogram``, summary numbers) count *all* in-row pair
  differences, zeros included;
* the ordered level set (``sensible_differences``) excludes zero, because a
  level variable for a zero difference would be vacuous (a zero-shifting
  pattern is just a constant pattern).

Real differences are compared for equality only after half-up rounding to a
configurable number of decimals (default 6).  The value is taken at its
shortest decimal representation first, so artifacts of binary floating
point (``4.3 - 2.0``) do not split one level into two.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError, ParseError

DEFAULT_ROUND_DECIMALS = 6


def round_half_up(value: float, decimals: int = DEFAULT_ROUND_DECIMALS) -> float:
    """Round to ``decimals`` places, ties away from zero."""
    if decimals < 0:
        raise DomainError("decimals must be >= 0")
    quantum = Decimal(1).scaleb(-decimals)
    return float(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


class Matrix:
    """A dense labeled matrix of finite reals.

    Rows and columns are addressed by their labels in decoded patterns and
    in every output file; internally 0-based indices are used.
    """

    __slots__ = ("row_labels", "col_labels", "values", "_row_index", "_col_index")

    def __init__(self, row_labels: Sequence[str], col_labels: Sequence[str], values):
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 2:
            raise DomainError(f"matrix values must be 2-D, got shape {arr.shape}")
        n, m = arr.shape
        if n < 1 or m < 1:
            raise DomainError("matrix needs at least one row and one column")
        row_labels = tuple(str(x) for x in row_labels)
        col_labels = tuple(str(x) for x in col_labels)
        if len(row_labels) != n or len(col_labels) != m:
            raise DomainError("label counts do not match value shape")
        if len(set(row_labels)) != n:
            raise DomainError("row labels must be unique")
        if len(set(col_labels)) != m:
            raise DomainError("column labels must be unique")
        if not np.all(np.isfinite(arr)):
            raise DomainError("matrix values must all be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        self.row_labels = row_labels
        self.col_labels = col_labels
        self.values = arr
        self._row_index = {lab: i for i, lab in enumerate(self.row_labels)}
        self._col_index = {lab: j for j, lab in enumerate(self.col_labels)}

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def row_index(self, label: str) -> int:
        try:
            return self._row_index[label]
        except KeyError:
            raise DomainError(f"unknown row label {label!r}") from None

    def col_index(self, label: str) -> int:
        try:
            return self._col_index[label]
        except KeyError:
            raise DomainError(f"unknown column label {label!r}") from None

    def transpose(self) -> "Matrix":
        return Matrix(self.col_labels, self.row_labels, self.values.T)

    def __repr__(self):
        return f"Matrix({self.n_rows}x{self.n_cols})"


@dataclass(frozen=True)
class DeltaSet:
    """The ordered set of distinct nonzero in-row differences of a matrix.

    Strictly increasing and zero-free; these are exactly the thresholds at
    which mining results can change, so any other threshold is equivalent
    to the largest level at or below it.
    """

    levels: tuple[float, ...]

    def __post_init__(self):
        prev = 0.0
        for lv in self.levels:
            if lv <= prev:
                raise DomainError("levels must be strictly increasing and positive")
            prev = lv

    def __len__(self):
        return len(self.levels)

    def __iter__(self) -> Iterator[float]:
        return iter(self.levels)

    def __getitem__(self, k: int) -> float:
        return self.levels[k]

    def __contains__(self, value: float) -> bool:
        return value in self.levels

    def index_of(self, value: float) -> int:
        try:
            return self.levels.index(value)
        except ValueError:
            raise DomainError(f"{value} is not a sensible difference level") from None

    def largest_leq(self, threshold: float) -> int | None:
        """Index of the largest level <= threshold, or None when below all."""
        best = None
        for k, lv in enumerate(self.levels):
            if lv <= threshold:
                best = k
        return best


def _open_text(source, encoding="utf-8"):
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding=encoding, newline="")
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(source.decode(encoding))
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode(encoding)
        return io.StringIO(data)
    raise DomainError(f"unsupported matrix source {type(source).__name__}")


def load_matrix(
    source,
    format: str = "csv",
    has_header: bool = True,
    has_row_labels: bool = True,
) -> Matrix:
    """Parse a delimited UTF-8 matrix into a Matrix.

    ``source`` may be a path, a byte string, or a (text or binary) file
    object.  Labels come from the header row / first column when present
    and are auto-generated as r1..rn / c1..cm otherwise.  With both header
    and row labels the top-left corner cell is ignored.

    Raises ParseError (with line and field position) on ragged rows, cells
    that do not parse as finite reals, or empty input.
    """
    if format not in ("csv", "tsv"):
        raise DomainError(f"unknown format {format!r}; expected 'csv' or 'tsv'")
    delim = "," if format == "csv" else "\t"
    fh = _open_text(source)
    try:
        reader = csv.reader(fh, delimiter=delim)
        rows = []
        for record in reader:
            if not record or all(cell.strip() == "" for cell in record):
                continue  # tolerate blank lines; they carry no cells
            rows.append((reader.line_num, [cell.strip() for cell in record]))
    finally:
        if isinstance(source, (str, Path)):
            fh.close()
    if not rows:
        raise ParseError("empty input: no matrix rows found")

    header = None
    if has_header:
        header = rows[0][1]
        rows = rows[1:]
        if not rows:
            raise ParseError("header present but no data rows")

    width = len(rows[0][1])
    n_value_cols = width - 1 if has_row_labels else width
    if n_value_cols < 1:
        raise ParseError("no value columns found", line=rows[0][0])

    row_labels = []
    data = []
    for line_num, cells in rows:
        if len(cells) != width:
            raise ParseError(
                f"ragged row: expected {width} fields, got {len(cells)}",
                line=line_num,
            )
        if has_row_labels:
            row_labels.append(cells[0])
            cells = cells[1:]
        offset = 2 if has_row_labels else 1
        parsed = []
        for k, cell in enumerate(cells):
            try:
                x = float(cell)
            except ValueError:
                raise ParseError(
                    f"cell {cell!r} is not a number", line=line_num, column=k + offset
                ) from None
            if not math.isfinite(x):
                raise ParseError(
                    f"cell {cell!r} is not finite", line=line_num, column=k + offset
                )
            parsed.append(x)
        data.append(parsed)

    if header is not None:
        labels = header[1:] if len(header) == n_value_cols + 1 else header
        if len(labels) != n_value_cols:
            raise ParseError(
                f"header has {len(header)} fields for {n_value_cols} value columns",
                line=1,
            )
        col_labels = [lab.strip() for lab in labels]
    else:
        col_labels = [f"c{j + 1}" for j in range(n_value_cols)]
    if not has_row_labels:
        row_labels = [f"r{i + 1}" for i in range(len(data))]
    return Matrix(row_labels, col_labels, data)


def inrow_pairs(m: Matrix) -> Iterator[tuple[int, int, int, float]]:
    """Yield (row, colA, colB, |difference|) for every in-row column pair.

    colA < colB by index; the stream has exactly n*m*(m-1)/2 entries.
    """
    values = m.values
    n, cols = values.shape
    for i in range(n):
        vi = values[i]
        for a in range(cols - 1):
            va = vi[a]
            for b in range(a + 1, cols):
                yield i, a, b, abs(va - vi[b])


def pair_count(m: Matrix) -> int:
    n, cols = m.shape
    return n * cols * (cols - 1) // 2


def rounded_inrow_pairs(
    m: Matrix, round_decimals: int = DEFAULT_ROUND_DECIMALS
) -> list[tuple[int, int, int, float]]:
    """inrow_pairs with differences rounded half-up to ``round_decimals``.

    Every consumer that compares differences for equality or against a
    threshold goes through this single rounding point, so encoders, the
    miner and the brute-force oracle all agree on level identities.
    """
    return [(i, a, b, round_half_up(d, round_decimals)) for i, a, b, d in inrow_pairs(m)]


def sensible_differences(
    m: Matrix, round_decimals: int = DEFAULT_ROUND_DECIMALS
) -> DeltaSet:
    """Distinct nonzero in-row differences, rounded, ascending."""
    seen = {d for _, _, _, d in rounded_inrow_pairs(m, round_decimals) if d != 0.0}
    return DeltaSet(tuple(sorted(seen)))


def diff_histogram(m: Matrix, bin_width: float) -> list[tuple[float, int]]:
    """Histogram of all raw in-row differences (zeros included).

    Half-open bins [k*w, (k+1)*w); returns contiguous (lower_bound, count)
    entries from 0 up to the bin holding the largest difference.  Counts
    sum to n*m*(m-1)/2.
    """
    if not bin_width > 0:
        raise DomainError("bin width must be positive")
    n, cols = m.shape
    if cols < 2:
        return []
    ia, ib = np.triu_indices(cols, k=1)
    diffs = np.abs(m.values[:, ia] - m.values[:, ib]).ravel()
    # resolve bin edges at 9-decimal quotient precision so a difference that
    # decimally equals k*w lands in bin k, not k-1
    idx = np.floor(np.round(diffs / bin_width, 9)).astype(np.int64)
    counts = np.bincount(idx)
    return [(k * bin_width, int(c)) for k, c in enumerate(counts)]
