"""Builders for the difference-encoding Boolean functions.

Each encoder walks the in-row column pairs of a matrix and emits one
monotone clause per pair that violates the mode's tolerance condition; the
clause names the row and the two columns (plus, for the level-aware modes,
a difference-level variable).  Removing all clause variables from the
matrix is then exactly what restores the violated condition, which is why
prime implicants of these functions decode into maximal patterns.

Modes:

* constant   - clause per pair with unequal values
* delta      - clause per pair with |difference| > delta
* exhaustive - clause per pair and per level at or below its difference
* pruned     - exhaustive, but pairs exceeding delta get a bare clause and
               levels above delta never appear
* global     - legacy bandwidth mode over all cell pairs, not just in-row
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .boolcore import Cnf, Universe
from .errors import DomainError
from .matrixio import (
    DEFAULT_ROUND_DECIMALS,
    DeltaSet,
    Matrix,
    round_half_up,
    rounded_inrow_pairs,
    sensible_differences,
)


class Mode(str, Enum):
    CONSTANT = "constant"
    DELTA = "delta"
    EXHAUSTIVE = "exhaustive"
    PRUNED = "pruned"
    GLOBAL = "global"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EncodingSpec:
    """Which function to build and its parameters.

    ``delta`` is required by the delta, pruned and global modes; pruned
    additionally requires it to be a sensible level or 0.  ``delta_set``
    may be left None for the level-aware modes and is then derived from
    the matrix.
    """

    mode: Mode
    delta: float | None = None
    delta_set: DeltaSet | None = None

    def __post_init__(self):
        if self.delta is not None and self.delta < 0:
            raise DomainError("delta must be >= 0")

    def require_delta(self) -> float:
        if self.delta is None:
            raise DomainError(f"mode {self.mode} requires a delta value")
        return self.delta


def _check_delta_set(m: Matrix, delta_set: DeltaSet, round_decimals: int) -> DeltaSet:
    expected = sensible_differences(m, round_decimals)
    if delta_set.levels != expected.levels:
        raise DomainError(
            "delta set inconsistent with matrix: "
            f"given {delta_set.levels}, derived {expected.levels}"
        )
    return delta_set


def encode_constant(m: Matrix, round_decimals: int = DEFAULT_ROUND_DECIMALS) -> Cnf:
    """One clause (r | c | c') per in-row pair with unequal values."""
    u = Universe(m.n_rows, m.n_cols)
    masks = [
        (1 << i) | (1 << (m.n_rows + a)) | (1 << (m.n_rows + b))
        for i, a, b, d in rounded_inrow_pairs(m, round_decimals)
        if d != 0.0
    ]
    return Cnf._from_masks(u, masks)


def encode_delta(
    m: Matrix, delta: float, round_decimals: int = DEFAULT_ROUND_DECIMALS
) -> Cnf:
    """One clause (r | c | c') per in-row pair with |difference| > delta.

    Any real delta is accepted; results coincide with those at the largest
    sensible level <= delta.  At delta = 0 this is the constant encoding.
    """
    if delta < 0:
        raise DomainError("delta must be >= 0")
    u = Universe(m.n_rows, m.n_cols)
    masks = [
        (1 << i) | (1 << (m.n_rows + a)) | (1 << (m.n_rows + b))
        for i, a, b, d in rounded_inrow_pairs(m, round_decimals)
        if d > delta
    ]
    return Cnf._from_masks(u, masks)


def encode_exhaustive(
    m: Matrix,
    delta_set: DeltaSet | None = None,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
) -> Cnf:
    """One clause (r | c | c' | a_k) per pair and per level a_k <= |difference|.

    Level comparison is inclusive: a pair whose difference equals a level
    does emit that level's clause.  The level set must be the matrix's own
    ordered difference set; passing anything else is a domain error.
    """
    if delta_set is None:
        delta_set = sensible_differences(m, round_decimals)
    else:
        _check_delta_set(m, delta_set, round_decimals)
    levels = delta_set.levels
    u = Universe(m.n_rows, m.n_cols, len(levels))
    base_alpha = m.n_rows + m.n_cols
    masks = []
    for i, a, b, d in rounded_inrow_pairs(m, round_decimals):
        if d == 0.0:
            continue
        pair = (1 << i) | (1 << (m.n_rows + a)) | (1 << (m.n_rows + b))
        for k, level in enumerate(levels):
            if level > d:
                break
            masks.append(pair | (1 << (base_alpha + k)))
    return Cnf._from_masks(u, masks)


def encode_pruned(
    m: Matrix,
    delta_set: DeltaSet | None,
    delta: float,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
) -> Cnf:
    """Exhaustive encoding with every level above delta fixed to false.

    Pairs whose difference exceeds delta contribute a bare (r | c | c')
    clause; pairs at or below delta contribute their level clauses as in
    the exhaustive mode.  ``delta`` must equal a sensible level or 0, so
    the level strata stay well defined.

    The universe still spans all levels of the matrix (the pruned-away
    ones simply never occur in a clause), keeping pruned and exhaustive
    formulas directly comparable.
    """
    if delta_set is None:
        delta_set = sensible_differences(m, round_decimals)
    else:
        _check_delta_set(m, delta_set, round_decimals)
    snapped = round_half_up(delta, round_decimals)
    if snapped != 0.0 and snapped not in delta_set.levels:
        raise DomainError(
            f"pruned mode delta {delta} is neither 0 nor a sensible level "
            f"{delta_set.levels}"
        )
    levels = delta_set.levels
    u = Universe(m.n_rows, m.n_cols, len(levels))
    base_alpha = m.n_rows + m.n_cols
    masks = []
    for i, a, b, d in rounded_inrow_pairs(m, round_decimals):
        if d == 0.0:
            continue
        pair = (1 << i) | (1 << (m.n_rows + a)) | (1 << (m.n_rows + b))
        if d > snapped:
            masks.append(pair)
            continue
        for k, level in enumerate(levels):
            if level > d:
                break
            masks.append(pair | (1 << (base_alpha + k)))
    return Cnf._from_masks(u, masks)


def encode_global(
    m: Matrix, delta: float, round_decimals: int = DEFAULT_ROUND_DECIMALS
) -> Cnf:
    """Legacy bandwidth mode: clause per cell pair anywhere with diff > delta.

    The clause is the set union of both cells' coordinates, so it has three
    literals when the cells share a row or column and four otherwise.
    """
    if delta < 0:
        raise DomainError("delta must be >= 0")
    u = Universe(m.n_rows, m.n_cols)
    values = m.values
    cells = [(i, j) for i in range(m.n_rows) for j in range(m.n_cols)]
    masks = []
    for (i1, j1), (i2, j2) in combinations(cells, 2):
        d = round_half_up(abs(values[i1, j1] - values[i2, j2]), round_decimals)
        if d > delta:
            masks.append(
                (1 << i1)
                | (1 << i2)
                | (1 << (m.n_rows + j1))
                | (1 << (m.n_rows + j2))
            )
    return Cnf._from_masks(u, masks)


def build_cnf(
    m: Matrix,
    spec: EncodingSpec,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
) -> tuple[Cnf, DeltaSet | None]:
    """Dispatch to the mode's encoder; returns the CNF and the level set used."""
    if spec.mode == Mode.CONSTANT:
        return encode_constant(m, round_decimals), None
    if spec.mode == Mode.DELTA:
        return encode_delta(m, spec.require_delta(), round_decimals), None
    if spec.mode == Mode.GLOBAL:
        return encode_global(m, spec.require_delta(), round_decimals), None
    delta_set = spec.delta_set
    if delta_set is None:
        delta_set = sensible_differences(m, round_decimals)
    if spec.mode == Mode.EXHAUSTIVE:
        return encode_exhaustive(m, delta_set, round_decimals), delta_set
    if spec.mode == Mode.PRUNED:
        return encode_pruned(m, delta_set, spec.require_delta(), round_decimals), delta_set
    raise DomainError(f"unknown mode {spec.mode!r}")
