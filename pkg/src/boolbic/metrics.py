"""Quality measures for biclusters.

Mean squared residue follows the classic double-centering definition:
residue(i,j) = w_ij - rowmean_i - colmean_j + overallmean, MSR = mean of
squared residues.  It is zero for constant biclusters and for perfect
additive shifting patterns (w_ij = pi_j + beta_i), which double-centering
annihilates.

Arithmetic contract: IEEE double precision throughout, with sums
accumulated in row-major cell order, so results are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .matrixio import Matrix


@dataclass(frozen=True)
class Score:
    msr: float
    harmonic_diameter: float
    area: int
    range_coverage: tuple[tuple[str, float], ...]


def _submatrix(b, m: Matrix) -> tuple[list[int], list[int]]:
    rows = sorted(m.row_index(lab) for lab in b.rows)
    cols = sorted(m.col_index(lab) for lab in b.cols)
    return rows, cols


def msr(b, m: Matrix) -> float:
    """Mean squared residue of the bicluster's cells within ``m``."""
    rows, cols = _submatrix(b, m)
    if not rows or not cols:
        raise DomainError("mean squared residue requires a nonempty bicluster")
    values = m.values
    nr, nc = len(rows), len(cols)
    row_means = []
    col_sums = [0.0] * nc
    total = 0.0
    for i in rows:
        s = 0.0
        for k, j in enumerate(cols):
            v = values[i, j]
            s += v
            col_sums[k] += v
        row_means.append(s / nc)
        total += s
    col_means = [s / nr for s in col_sums]
    overall = total / (nr * nc)
    acc = 0.0
    for ri, i in enumerate(rows):
        for k, j in enumerate(cols):
            res = values[i, j] - row_means[ri] - col_means[k] + overall
            acc += res * res
    return acc / (nr * nc)


def harmonic_diameter(rows: int, cols: int) -> float:
    """Harmonic-mean size 2/(1/rows + 1/cols); balances pattern shape."""
    if rows < 1 or cols < 1:
        raise DomainError("harmonic diameter requires positive dimensions")
    return 2.0 / (1.0 / rows + 1.0 / cols)


def range_coverage(b, m: Matrix) -> list[tuple[str, float]]:
    """Per column: fraction of its full-matrix value range spanned inside b.

    Columns that are constant over the whole matrix get 0 by convention, so
    reports never abort on flat columns.  Output follows matrix column
    order.
    """
    rows, cols = _submatrix(b, m)
    values = m.values
    out = []
    for j in cols:
        full = values[:, j]
        full_range = float(full.max() - full.min())
        if not rows or full_range == 0.0:
            frac = 0.0
        else:
            inside = [values[i, j] for i in rows]
            frac = (max(inside) - min(inside)) / full_range
        out.append((m.col_labels[j], frac))
    return out


def area(b) -> int:
    return len(b.rows) * len(b.cols)


def score(b, m: Matrix) -> Score:
    """All quality measures at once; requires a nonempty bicluster."""
    return Score(
        msr=msr(b, m),
        harmonic_diameter=harmonic_diameter(len(b.rows), len(b.cols)),
        area=area(b),
        range_coverage=tuple(range_coverage(b, m)),
    )
