"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.  The
final criterion needs the external expression dataset and is skipped unless
the BOOLBIC_CNS environment variable points at it.
"""

import os
import random
import time

import numpy as np
import pytest

from boolbic import (
    EncodingSpec,
    Matrix,
    Mode,
    builtin,
    encode_constant,
    harmonic_diameter,
    load_matrix,
    mine,
    msr,
    pair_count,
    prime_implicants,
    sensible_differences,
    verify_theorems,
)
from boolbic.oracle import applicable_specs, random_matrix
from boolbic.patterns import Bicluster
from boolbic.report import stats_summary
from util import bic, vset


def _report(num, name, t0, limit):
    elapsed = time.perf_counter() - t0
    assert elapsed < limit, f"criterion {num} took {elapsed:.2f}s (limit {limit}s)"
    print(f"ACCEPTANCE {num} {name}: PASS ({elapsed:.2f}s)")


def test_criterion_1_global_mode_reproduces_table_3():
    t0 = time.perf_counter()
    records = mine(builtin("M1"), EncodingSpec(Mode.GLOBAL, delta=3))
    got = {r.bicluster for r in records}
    assert got == {
        bic("r2", "c1 c2 c3"),
        bic("r1 r2", "c2 c3"),
        bic("r1", "c1 c2 c3"),
        bic("r1 r2", "c1 c2"),
    }
    _report(1, "global-mode table 3", t0, 1.0)


def test_criterion_2_constant_formula_and_primes_of_m2():
    t0 = time.perf_counter()
    cnf = encode_constant(builtin("M2"))
    expected_clauses = {
        vset(s)
        for s in [
            "r1 c1 c3", "r1 c2 c3", "r2 c1 c3", "r2 c2 c3",
            "r3 c1 c2", "r3 c1 c3", "r3 c2 c3", "r4 c1 c3",
            "r4 c2 c3", "r5 c1 c3", "r5 c2 c3", "r6 c1 c2",
            "r6 c1 c3", "r6 c2 c3",
        ]
    }
    assert {c.vars for c in cnf.clauses} == expected_clauses
    assert prime_implicants(cnf).as_var_sets() == {
        vset("c1 c2"),
        vset("r1 r2 r3 r4 r5 r6"),
        vset("r3 r6 c3"),
        vset("c1 c3"),
        vset("c2 c3"),
    }
    _report(2, "constant-mode formula of M2", t0, 1.0)


def test_criterion_3_delta_mode_reproduces_table_6():
    t0 = time.perf_counter()
    from boolbic import build_cnf

    m = builtin("M3")
    cnf, _ = build_cnf(m, EncodingSpec(Mode.DELTA, delta=2))
    assert prime_implicants(cnf).as_var_sets() == {
        vset("r2 r3"), vset("r3 c1"), vset("c1 c2"), vset("c3"),
    }
    records = mine(m, EncodingSpec(Mode.DELTA, delta=2))
    assert {r.bicluster for r in records} == {
        bic("r1", "c1 c2 c3"),
        bic("r1 r2", "c2 c3"),
        bic("r1 r2 r3", "c3"),
        bic("r1 r2 r3", "c1 c2"),
    }
    _report(3, "delta-mode table 6", t0, 1.0)


def test_criterion_4_exhaustive_and_pruned_primes_of_m4():
    t0 = time.perf_counter()
    import boolbic as bb

    m = builtin("M4")
    exhaustive = prime_implicants(bb.encode_exhaustive(m))
    assert exhaustive.as_var_sets() == {
        vset("c1"), vset("c2"), vset("r2 r3 r4"),
        vset("r2 r4 a1"), vset("r4 a1 a2"), vset("a1 a2 a3"),
    }
    pruned = prime_implicants(bb.encode_pruned(m, None, 1.2))
    assert pruned.as_var_sets() == {
        vset("c1"), vset("c2"), vset("r2 r3 r4"), vset("r2 r4 a1"),
    }
    records = mine(m, EncodingSpec(Mode.PRUNED, delta=1.2))
    target = [r for r in records if r.source_implicant.vars == vset("r2 r4 a1")]
    assert len(target) == 1
    assert target[0].bicluster == bic("r1 r3", "c1 c2")
    assert target[0].bound == 1.2
    _report(4, "exhaustive and pruned primes of M4", t0, 1.0)


def test_criterion_5_theorem_suite():
    t0 = time.perf_counter()
    failures = []
    for name in ("M0", "M1", "M2", "M3", "M4"):
        m = builtin(name)
        for spec in applicable_specs(m):
            report = verify_theorems(m, spec, matrix_name=name)
            if not report.passed:
                failures.append((name, spec))
    rng = random.Random(20260810)
    for trial in range(500):
        m = random_matrix(rng, max_rows=5, max_cols=5, low=0, high=3)
        for spec in applicable_specs(m):
            report = verify_theorems(m, spec)
            if not report.passed:
                failures.append((f"random-{trial}", spec, m.values.tolist()))
    assert not failures, failures[:3]
    _report(5, "theorem suite (worked matrices + 500 random)", t0, 120.0)


def test_criterion_6_metric_anchors():
    t0 = time.perf_counter()
    assert harmonic_diameter(1, 20) == pytest.approx(1.90, abs=0.01)
    assert harmonic_diameter(2, 10) == pytest.approx(3.33, abs=0.01)
    assert harmonic_diameter(4, 5) == pytest.approx(4.44, abs=0.01)
    rng = np.random.default_rng(20260810)
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        m = int(rng.integers(1, 9))
        pi = rng.uniform(-50, 50, size=m)
        beta = rng.uniform(-50, 50, size=n)
        mat = Matrix(
            [f"r{i + 1}" for i in range(n)],
            [f"c{j + 1}" for j in range(m)],
            pi[None, :] + beta[:, None],
        )
        whole = Bicluster(frozenset(mat.row_labels), frozenset(mat.col_labels))
        assert abs(msr(whole, mat)) <= 1e-9
    _report(6, "metric anchors", t0, 10.0)


def test_criterion_7_cross_mode_consistency():
    t0 = time.perf_counter()
    rng = random.Random(777)
    for _ in range(200):
        m = random_matrix(rng, max_rows=5, max_cols=5, low=0, high=3)
        levels = list(sensible_differences(m))
        top = levels[-1] if levels else 0.0
        exhaustive = {
            (r.bicluster, r.bound) for r in mine(m, EncodingSpec(Mode.EXHAUSTIVE))
        }
        pruned_top = {
            (r.bicluster, r.bound)
            for r in mine(m, EncodingSpec(Mode.PRUNED, delta=top))
        }
        assert pruned_top == exhaustive
        if not levels:
            continue
        delta = rng.choice(levels)
        delta_set = {r.bicluster for r in mine(m, EncodingSpec(Mode.DELTA, delta=delta))}
        pruned_set = {
            r.bicluster for r in mine(m, EncodingSpec(Mode.PRUNED, delta=delta))
        }
        assert delta_set <= pruned_set
    _report(7, "cross-mode consistency (200 trials)", t0, 120.0)


CNS_ENV = "BOOLBIC_CNS"


@pytest.mark.skipif(
    CNS_ENV not in os.environ,
    reason=f"set {CNS_ENV} to the expression dataset file to run this criterion",
)
def test_criterion_8_expression_dataset_reproduction():
    t0 = time.perf_counter()
    m = load_matrix(os.environ[CNS_ENV])
    if m.shape == (112, 9):
        m = m.transpose()
    assert m.shape == (9, 112), f"expected 9x112 after orientation, got {m.shape}"
    assert pair_count(m) == 55944
    summary = stats_summary(m)
    assert summary["max"] == pytest.approx(27.69, abs=0.01)
    assert summary["mean"] == pytest.approx(0.88, abs=0.01)
    expected = {0.0: (27, 0.0), 0.1: (1027, 0.00226), 0.2: (2487, 0.00951),
                0.3: (4027, 0.02102), 0.4: (6943, 0.02976)}
    for delta, (count, max_msr) in expected.items():
        records = mine(
            m, EncodingSpec(Mode.DELTA, delta=delta), min_rows=2, min_cols=2
        )
        assert len(records) == count, (delta, len(records))
        worst = max((r.msr for r in records), default=0.0)
        assert worst <= max_msr * 1.1 + 1e-12, (delta, worst)
    print(f"ACCEPTANCE 8 expression dataset: PASS ({time.perf_counter() - t0:.1f}s)")
