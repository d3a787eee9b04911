"""Decoding implicants into biclusters and mining them end to end.

A prime implicant names exactly the rows and columns whose removal makes
the pattern condition hold everywhere, so the bicluster it encodes is the
complement: all rows and columns absent from the implicant.  Level
variables in the implicant form a prefix of the matrix's ordered
difference set; the largest one is the pattern's tolerance bound.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

from .boolcore import Implicant, VarKind, prime_implicants, DEFAULT_MAX_TERMS
from .encode import EncodingSpec, Mode, build_cnf
from .errors import DomainError
from .matrixio import DEFAULT_ROUND_DECIMALS, DeltaSet, Matrix, round_half_up
from .metrics import Score, score


@dataclass(frozen=True)
class Bicluster:
    """A row subset and a column subset, by label; either may be empty."""

    rows: frozenset[str]
    cols: frozenset[str]

    def __post_init__(self):
        if not isinstance(self.rows, frozenset):
            object.__setattr__(self, "rows", frozenset(self.rows))
        if not isinstance(self.cols, frozenset):
            object.__setattr__(self, "cols", frozenset(self.cols))

    def ordered_rows(self, m: Matrix) -> tuple[str, ...]:
        return tuple(lab for lab in m.row_labels if lab in self.rows)

    def ordered_cols(self, m: Matrix) -> tuple[str, ...]:
        return tuple(lab for lab in m.col_labels if lab in self.cols)


_EMPTY_SCORE = Score(msr=0.0, harmonic_diameter=0.0, area=0, range_coverage=())


@dataclass(frozen=True)
class PatternRecord:
    """A decoded bicluster with its tolerance bound and quality scores.

    ``bound`` is the largest difference level named by the source
    implicant (0 when none); the miner overrides it with the requested
    delta in the delta and global modes.  ``measured_diff`` is the actual
    maximal in-row difference inside the bicluster, reported alongside the
    bound.  Records with an empty side carry zero scores.
    """

    bicluster: Bicluster
    bound: float
    source_implicant: Implicant
    measured_diff: float
    score: Score

    @property
    def msr(self) -> float:
        return self.score.msr

    @property
    def harmonic_diameter(self) -> float:
        return self.score.harmonic_diameter

    @property
    def area(self) -> int:
        return self.score.area


def max_inrow_diff(
    b: Bicluster, m: Matrix, round_decimals: int = DEFAULT_ROUND_DECIMALS
) -> float:
    """Largest rounded in-row difference inside the bicluster (0 if no pairs)."""
    rows = [m.row_index(lab) for lab in b.rows]
    cols = [m.col_index(lab) for lab in b.cols]
    values = m.values
    worst = 0.0
    for i in rows:
        for a, c in combinations(cols, 2):
            d = abs(values[i, a] - values[i, c])
            if d > worst:
                worst = d
    return round_half_up(worst, round_decimals)


def is_delta_shifting(
    b: Bicluster,
    m: Matrix,
    delta: float,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
) -> bool:
    """True iff every in-row column pair inside b differs by at most delta.

    Vacuously true for biclusters with an empty side or a single column.
    """
    rows = [m.row_index(lab) for lab in b.rows]
    cols = [m.col_index(lab) for lab in b.cols]
    values = m.values
    for i in rows:
        for a, c in combinations(cols, 2):
            if round_half_up(abs(values[i, a] - values[i, c]), round_decimals) > delta:
                return False
    return True


def is_global_bandwidth(
    b: Bicluster,
    m: Matrix,
    delta: float,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
) -> bool:
    """True iff all cells inside b span at most delta (legacy global mode)."""
    rows = [m.row_index(lab) for lab in b.rows]
    cols = [m.col_index(lab) for lab in b.cols]
    if not rows or not cols:
        return True
    cells = [m.values[i, j] for i in rows for j in cols]
    return round_half_up(max(cells) - min(cells), round_decimals) <= delta


def is_inclusion_maximal(
    b: Bicluster,
    m: Matrix,
    delta: float,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
    predicate=is_delta_shifting,
) -> bool:
    """True iff no single row or column extends b while keeping the predicate.

    Raises DomainError when b itself does not satisfy the predicate.
    """
    if not predicate(b, m, delta, round_decimals):
        raise DomainError("bicluster does not satisfy the pattern predicate")
    for lab in m.row_labels:
        if lab not in b.rows:
            wider = Bicluster(b.rows | {lab}, b.cols)
            if predicate(wider, m, delta, round_decimals):
                return False
    for lab in m.col_labels:
        if lab not in b.cols:
            wider = Bicluster(b.rows, b.cols | {lab})
            if predicate(wider, m, delta, round_decimals):
                return False
    return True


def decode(
    implicant: Implicant,
    m: Matrix,
    delta_set: DeltaSet | None = None,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
) -> PatternRecord:
    """Complement an implicant into its bicluster.

    Rows and columns of the pattern are exactly those whose variables are
    absent from the implicant; the bound is the largest level variable
    present, or 0 when there is none.
    """
    row_hits = set()
    col_hits = set()
    top_alpha = -1
    for v in implicant.vars:
        if v.kind == VarKind.ROW:
            if v.index >= m.n_rows:
                raise DomainError(f"{v.label()} outside matrix with {m.n_rows} rows")
            row_hits.add(v.index)
        elif v.kind == VarKind.COL:
            if v.index >= m.n_cols:
                raise DomainError(f"{v.label()} outside matrix with {m.n_cols} columns")
            col_hits.add(v.index)
        else:
            if delta_set is None or v.index >= len(delta_set):
                raise DomainError(f"{v.label()} outside the difference level set")
            top_alpha = max(top_alpha, v.index)
    b = Bicluster(
        frozenset(lab for i, lab in enumerate(m.row_labels) if i not in row_hits),
        frozenset(lab for j, lab in enumerate(m.col_labels) if j not in col_hits),
    )
    bound = delta_set[top_alpha] if top_alpha >= 0 else 0.0
    measured = max_inrow_diff(b, m, round_decimals)
    sc = score(b, m) if b.rows and b.cols else _EMPTY_SCORE
    return PatternRecord(
        bicluster=b,
        bound=bound,
        source_implicant=implicant,
        measured_diff=measured,
        score=sc,
    )


def _sort_key(rec: PatternRecord):
    return (
        -rec.harmonic_diameter,
        rec.msr,
        tuple(sorted(rec.bicluster.rows)),
        tuple(sorted(rec.bicluster.cols)),
    )


def mine(
    m: Matrix,
    spec: EncodingSpec,
    min_rows: int = 0,
    min_cols: int = 0,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
    max_terms: int = DEFAULT_MAX_TERMS,
    max_seconds: float | None = None,
) -> list[PatternRecord]:
    """Encode, enumerate prime implicants, decode, filter and rank.

    Every returned record is an inclusion-maximal pattern of the requested
    mode at its bound.  The size filter is a reporting convenience applied
    after decoding; correctness properties hold for the unfiltered set.
    Ordering: harmonic diameter descending, then MSR ascending, then
    lexicographic labels.
    """
    cnf, delta_set = build_cnf(m, spec, round_decimals)
    pis = prime_implicants(cnf, max_terms=max_terms, max_seconds=max_seconds)
    records = []
    for term in pis:
        rec = decode(term, m, delta_set, round_decimals)
        if spec.mode in (Mode.DELTA, Mode.GLOBAL):
            rec = replace(rec, bound=spec.require_delta())
        if len(rec.bicluster.rows) < min_rows or len(rec.bicluster.cols) < min_cols:
            continue
        records.append(rec)
    records.sort(key=_sort_key)
    return records
