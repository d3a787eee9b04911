"""Brute-force pattern enumeration and executable correspondence checks.

The oracle enumerates inclusion-maximal patterns directly, by sweeping all
column subsets: for a fixed column subset the valid rows are determined
row by row (the in-row condition couples columns, never rows), so each
subset yields at most one candidate, which is maximal exactly when no
further column keeps all its rows valid.  This is independent of the
clause-multiplication path and is what turns the correspondence theorems
(implicants <-> patterns, prime implicants <-> inclusion-maximal patterns)
into runnable checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .boolcore import (
    DEFAULT_MAX_TERMS,
    Implicant,
    alpha,
    col,
    is_implicant,
    prime_implicants,
    row,
)
from .encode import EncodingSpec, Mode, build_cnf
from .errors import DomainError
from .matrixio import (
    DEFAULT_ROUND_DECIMALS,
    DeltaSet,
    Matrix,
    round_half_up,
    sensible_differences,
)
from .patterns import (
    Bicluster,
    decode,
    is_inclusion_maximal,
    max_inrow_diff,
)

#: Column-subset sweeps are 2^m; refuse anything wider than this.
MAX_ORACLE_COLS = 16


@dataclass(frozen=True)
class OracleResult:
    """Directly enumerated inclusion-maximal patterns with their bounds."""

    patterns: frozenset[tuple[Bicluster, float]]
    source: str = "column-subset-sweep"

    def __len__(self):
        return len(self.patterns)

    def biclusters(self) -> frozenset[Bicluster]:
        return frozenset(b for b, _ in self.patterns)


def _pair_diffs(m: Matrix, round_decimals: int) -> list[dict[tuple[int, int], float]]:
    values = m.values
    out = []
    for i in range(m.n_rows):
        vi = values[i]
        out.append(
            {
                (a, b): round_half_up(abs(vi[a] - vi[b]), round_decimals)
                for a, b in combinations(range(m.n_cols), 2)
            }
        )
    return out


def brute_force_delta(
    m: Matrix,
    delta: float,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
) -> OracleResult:
    """All inclusion-maximal patterns with in-row differences <= delta.

    For every nonempty column subset J the maximal valid row set I(J) is
    computed; (I(J), J) is kept exactly when no missing column keeps all of
    I(J) valid (with I(J) empty this only survives for the full column
    set, giving the one possible empty maximal bicluster).  Bounds on the
    returned patterns equal the requested delta.
    """
    if m.n_cols > MAX_ORACLE_COLS:
        raise DomainError(
            f"brute force refuses matrices wider than {MAX_ORACLE_COLS} columns"
        )
    diffs = _pair_diffs(m, round_decimals)
    n, n_cols = m.shape
    found = set()
    for jmask in range(1, 1 << n_cols):
        cols = [j for j in range(n_cols) if jmask >> j & 1]
        pairs = list(combinations(cols, 2))
        valid = [i for i in range(n) if all(diffs[i][p] <= delta for p in pairs)]
        maximal = True
        for c in range(n_cols):
            if jmask >> c & 1:
                continue
            added = [(min(j, c), max(j, c)) for j in cols]
            if all(all(diffs[i][p] <= delta for p in added) for i in valid):
                maximal = False
                break
        if maximal:
            b = Bicluster(
                frozenset(m.row_labels[i] for i in valid),
                frozenset(m.col_labels[j] for j in cols),
            )
            found.add((b, delta))
    return OracleResult(frozenset(found))


def _measured_union(
    m: Matrix, levels: list[float], round_decimals: int
) -> OracleResult:
    found = {}
    for level in levels:
        for b, _ in brute_force_delta(m, level, round_decimals).patterns:
            if b not in found:
                found[b] = max_inrow_diff(b, m, round_decimals)
    return OracleResult(frozenset((b, bound) for b, bound in found.items()))


def brute_force_exhaustive(
    m: Matrix, round_decimals: int = DEFAULT_ROUND_DECIMALS
) -> OracleResult:
    """Union of brute_force_delta over level 0 and every sensible level.

    Each pattern's bound is its measured maximal in-row difference, the
    level its decoded implicant would name; duplicates across levels
    collapse.
    """
    levels = [0.0] + list(sensible_differences(m, round_decimals))
    return _measured_union(m, levels, round_decimals)


def brute_force_pruned(
    m: Matrix, delta: float, round_decimals: int = DEFAULT_ROUND_DECIMALS
) -> OracleResult:
    """Like brute_force_exhaustive but only levels at or below delta."""
    snapped = round_half_up(delta, round_decimals)
    levels = [0.0] + [lv for lv in sensible_differences(m, round_decimals) if lv <= snapped]
    return _measured_union(m, levels, round_decimals)


def corresponding_implicant(
    b: Bicluster,
    m: Matrix,
    delta_set: DeltaSet | None = None,
    bound: float | None = None,
) -> Implicant:
    """The variable set encoding a pattern: complement rows and columns,
    plus (when a level set is given) the prefix of levels up to ``bound``."""
    vars = [row(i) for i, lab in enumerate(m.row_labels) if lab not in b.rows]
    vars += [col(j) for j, lab in enumerate(m.col_labels) if lab not in b.cols]
    if delta_set is not None and bound is not None:
        vars += [alpha(k) for k, lv in enumerate(delta_set.levels) if lv <= bound]
    return Implicant(frozenset(vars))


@dataclass
class Check:
    name: str
    passed: bool
    failures: int = 0
    counterexamples: list[str] = field(default_factory=list)


@dataclass
class TheoremReport:
    """Outcome of the correspondence checks for one matrix and mode.

    Failed runs carry the offending matrix inline so randomized
    counterexamples survive into the JSON report.
    """

    mode: str
    delta: float | None
    n_primes: int
    n_oracle: int
    checks: list[Check]
    matrix_name: str | None = None
    counterexample_matrix: dict | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        doc = {
            "matrix": self.matrix_name,
            "mode": self.mode,
            "delta": self.delta,
            "passed": self.passed,
            "n_primes": self.n_primes,
            "n_oracle": self.n_oracle,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "failures": c.failures,
                    "counterexamples": c.counterexamples,
                }
                for c in self.checks
            ],
        }
        if self.counterexample_matrix is not None:
            doc["counterexample_matrix"] = self.counterexample_matrix
        return doc


def _describe(b: Bicluster, bound: float) -> str:
    rows = ",".join(sorted(b.rows)) or "-"
    cols = ",".join(sorted(b.cols)) or "-"
    return f"rows={{{rows}}} cols={{{cols}}} bound={bound:g}"


_MAX_EXAMPLES = 5


def verify_theorems(
    m: Matrix,
    spec: EncodingSpec,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
    max_terms: int = DEFAULT_MAX_TERMS,
    max_seconds: float | None = None,
    matrix_name: str | None = None,
) -> TheoremReport:
    """Run the correspondence checks for one mode on a desk-scale matrix.

    Checks, for the mode's function f:
      a. every prime implicant decodes to a pattern satisfying the mode's
         predicate at its bound;
      b. every decoded pattern is inclusion-maximal at its bound;
      c. every oracle pattern's corresponding variable set is an implicant
         of f;
      d. decoded primes and oracle maximal patterns are in bijection.

    Failures become report content, never exceptions.
    """
    if spec.mode == Mode.GLOBAL:
        raise DomainError("correspondence theorems cover the in-row modes only")
    cnf, delta_set = build_cnf(m, spec, round_decimals)
    pis = prime_implicants(cnf, max_terms=max_terms, max_seconds=max_seconds)
    with_levels = spec.mode in (Mode.EXHAUSTIVE, Mode.PRUNED)

    if spec.mode == Mode.CONSTANT:
        oracle = brute_force_delta(m, 0.0, round_decimals)
    elif spec.mode == Mode.DELTA:
        oracle = brute_force_delta(m, spec.require_delta(), round_decimals)
    elif spec.mode == Mode.EXHAUSTIVE:
        oracle = brute_force_exhaustive(m, round_decimals)
    else:
        oracle = brute_force_pruned(m, spec.require_delta(), round_decimals)

    records = [decode(t, m, delta_set, round_decimals) for t in pis]

    def check_bound(rec) -> float:
        if spec.mode == Mode.DELTA:
            return spec.require_delta()
        return rec.bound  # constant: 0; exhaustive/pruned: top level named

    sat = Check("primes-satisfy-predicate", True)
    maxi = Check("primes-are-inclusion-maximal", True)
    for rec in records:
        bound = check_bound(rec)
        ok = rec.measured_diff <= bound
        if ok and spec.mode == Mode.PRUNED:
            ok = bound <= round_half_up(spec.require_delta(), round_decimals)
        if not ok:
            sat.passed = False
            sat.failures += 1
            if len(sat.counterexamples) < _MAX_EXAMPLES:
                sat.counterexamples.append(_describe(rec.bicluster, bound))
            continue
        if not is_inclusion_maximal(rec.bicluster, m, bound, round_decimals):
            maxi.passed = False
            maxi.failures += 1
            if len(maxi.counterexamples) < _MAX_EXAMPLES:
                maxi.counterexamples.append(_describe(rec.bicluster, bound))

    backward = Check("oracle-patterns-are-implicants", True)
    for b, bound in oracle.patterns:
        term = corresponding_implicant(
            b, m, delta_set if with_levels else None, bound if with_levels else None
        )
        if not is_implicant(term, cnf):
            backward.passed = False
            backward.failures += 1
            if len(backward.counterexamples) < _MAX_EXAMPLES:
                backward.counterexamples.append(_describe(b, bound))

    if with_levels:
        mined_keys = {(rec.bicluster, check_bound(rec)) for rec in records}
        oracle_keys = set(oracle.patterns)
    else:
        mined_keys = {(rec.bicluster, None) for rec in records}
        oracle_keys = {(b, None) for b, _ in oracle.patterns}
    bijection = Check("primes-biject-oracle-patterns", True)
    for b, bound in sorted(
        mined_keys ^ oracle_keys,
        key=lambda kb: (sorted(kb[0].rows), sorted(kb[0].cols)),
    ):
        bijection.passed = False
        bijection.failures += 1
        if len(bijection.counterexamples) < _MAX_EXAMPLES:
            side = "mined-only" if (b, bound) in mined_keys else "oracle-only"
            bijection.counterexamples.append(
                f"{side}: " + _describe(b, bound if bound is not None else -1.0)
            )

    checks = [sat, maxi, backward, bijection]
    failed = not all(c.passed for c in checks)
    return TheoremReport(
        mode=str(spec.mode),
        delta=spec.delta,
        n_primes=len(pis),
        n_oracle=len(oracle),
        checks=checks,
        matrix_name=matrix_name,
        counterexample_matrix=(
            {
                "row_labels": list(m.row_labels),
                "col_labels": list(m.col_labels),
                "values": m.values.tolist(),
            }
            if failed
            else None
        ),
    )


def applicable_specs(m: Matrix, round_decimals: int = DEFAULT_ROUND_DECIMALS) -> list[EncodingSpec]:
    """Every theorem-covered mode/threshold combination for a matrix:
    constant, delta at 0 and each sensible level, exhaustive, and pruned
    at each sensible level."""
    levels = list(sensible_differences(m, round_decimals))
    specs = [EncodingSpec(Mode.CONSTANT)]
    specs += [EncodingSpec(Mode.DELTA, delta=d) for d in [0.0] + levels]
    specs.append(EncodingSpec(Mode.EXHAUSTIVE))
    specs += [EncodingSpec(Mode.PRUNED, delta=d) for d in levels]
    return specs


def random_matrix(
    rng: random.Random,
    max_rows: int = 5,
    max_cols: int = 5,
    low: int = 0,
    high: int = 3,
) -> Matrix:
    """A small random integer matrix for randomized theorem runs."""
    n = rng.randint(1, max_rows)
    m = rng.randint(1, max_cols)
    values = [[rng.randint(low, high) for _ in range(m)] for _ in range(n)]
    return Matrix(
        [f"r{i + 1}" for i in range(n)],
        [f"c{j + 1}" for j in range(m)],
        values,
    )
