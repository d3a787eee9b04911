import random
from itertools import combinations

import pytest

from boolbic import (
    DomainError,
    EncodingSpec,
    Matrix,
    Mode,
    build_cnf,
    builtin,
    encode_constant,
    encode_delta,
    encode_exhaustive,
    encode_global,
    encode_pruned,
    mine,
    sensible_differences,
)
from util import vset


def clause_sets(cnf):
    return {c.vars for c in cnf.clauses}


def random_int_matrix(rng, max_rows=4, max_cols=4, high=3):
    n, m = rng.randint(1, max_rows), rng.randint(1, max_cols)
    return Matrix(
        [f"r{i + 1}" for i in range(n)],
        [f"c{j + 1}" for j in range(m)],
        [[rng.randint(0, high) for _ in range(m)] for _ in range(n)],
    )


class TestEncodeConstant:
    def test_m2_gives_the_fourteen_clauses(self):
        expected = {
            vset(s)
            for s in [
                "r1 c1 c3", "r1 c2 c3", "r2 c1 c3", "r2 c2 c3",
                "r3 c1 c2", "r3 c1 c3", "r3 c2 c3", "r4 c1 c3",
                "r4 c2 c3", "r5 c1 c3", "r5 c2 c3", "r6 c1 c2",
                "r6 c1 c3", "r6 c2 c3",
            ]
        }
        assert clause_sets(encode_constant(builtin("M2"))) == expected

    def test_constant_matrix_gives_true(self):
        m = Matrix(["r1", "r2"], ["c1", "c2"], [[1.0, 1.0], [1.0, 1.0]])
        assert encode_constant(m).is_true()

    def test_m4_unequal_pairs_only(self):
        # oracle: scan the four pairs directly; rows 2..4 differ, row 1 not
        values = builtin("M4").values
        expected = {
            vset(f"r{i + 1} c1 c2")
            for i in range(4)
            if values[i, 0] != values[i, 1]
        }
        assert expected == {vset("r2 c1 c2"), vset("r3 c1 c2"), vset("r4 c1 c2")}
        assert clause_sets(encode_constant(builtin("M4"))) == expected


class TestEncodeDelta:
    def test_m3_at_two(self):
        cnf = encode_delta(builtin("M3"), 2)
        assert clause_sets(cnf) == {
            vset("r2 c1 c3"), vset("r3 c1 c3"), vset("r3 c2 c3"),
        }

    def test_threshold_above_max_diff_gives_true(self):
        assert encode_delta(builtin("M3"), 4.0).is_true()

    def test_delta_zero_equals_constant(self):
        m = builtin("M2")
        assert encode_delta(m, 0.0) == encode_constant(m)

    def test_negative_delta_rejected(self):
        with pytest.raises(DomainError):
            encode_delta(builtin("M3"), -0.5)

    def test_any_threshold_snaps_to_largest_level_below(self):
        rng = random.Random(9)
        for _ in range(20):
            m = random_int_matrix(rng)
            levels = list(sensible_differences(m))
            delta = rng.uniform(0.0, (levels[-1] + 1) if levels else 2.0)
            k = sensible_differences(m).largest_leq(delta)
            snapped = levels[k] if k is not None else 0.0
            assert encode_delta(m, delta) == encode_delta(m, snapped)

    def test_restriction_of_constant_clauses(self):
        rng = random.Random(1)
        for _ in range(30):
            m = random_int_matrix(rng)
            delta = rng.choice([0, 1, 2])
            base = clause_sets(encode_constant(m))
            got = clause_sets(encode_delta(m, delta))
            assert got <= base
            # oracle: re-derive the restriction by direct pair scan
            expected = set()
            for i in range(m.n_rows):
                for a, b in combinations(range(m.n_cols), 2):
                    if abs(m.values[i, a] - m.values[i, b]) > delta:
                        expected.add(vset(f"r{i + 1} c{a + 1} c{b + 1}"))
            assert got == expected


class TestEncodeExhaustive:
    def test_m4_gives_the_six_clauses(self):
        cnf = encode_exhaustive(builtin("M4"))
        assert clause_sets(cnf) == {
            vset("r2 c1 c2 a1"), vset("r2 c1 c2 a2"), vset("r3 c1 c2 a1"),
            vset("r4 c1 c2 a1"), vset("r4 c1 c2 a2"), vset("r4 c1 c2 a3"),
        }

    def test_constant_matrix_gives_true(self):
        m = Matrix(["r1"], ["c1", "c2"], [[2.0, 2.0]])
        assert encode_exhaustive(m).is_true()

    def test_level_comparison_is_inclusive(self):
        # row 2 of M4 differs by exactly the second level and must emit it
        cnf = encode_exhaustive(builtin("M4"))
        assert vset("r2 c1 c2 a2") in clause_sets(cnf)

    def test_inconsistent_delta_set_rejected(self):
        from boolbic import DeltaSet

        with pytest.raises(DomainError):
            encode_exhaustive(builtin("M4"), DeltaSet((1.0, 2.0)))

    def test_m3_per_level_clause_derivation(self):
        # oracle: emit clauses per pair and per level by direct scan
        m = builtin("M3")
        levels = [1.0, 2.0, 3.0, 4.0]
        expected = set()
        for i in range(3):
            for a, b in combinations(range(3), 2):
                d = abs(m.values[i, a] - m.values[i, b])
                for k, lv in enumerate(levels):
                    if lv <= d:
                        expected.add(vset(f"r{i + 1} c{a + 1} c{b + 1} a{k + 1}"))
        assert clause_sets(encode_exhaustive(m)) == expected


class TestEncodePruned:
    def test_m4_at_first_level(self):
        cnf = encode_pruned(builtin("M4"), None, 1.2)
        assert clause_sets(cnf) == {
            vset("r2 c1 c2"), vset("r3 c1 c2 a1"), vset("r4 c1 c2"),
        }

    def test_at_max_level_equals_exhaustive(self):
        m = builtin("M4")
        assert encode_pruned(m, None, 3.1) == encode_exhaustive(m)

    def test_at_zero_equals_constant_clauses(self):
        m = builtin("M2")
        # universes differ (pruned keeps level variables); clauses must not
        assert clause_sets(encode_pruned(m, None, 0.0)) == clause_sets(
            encode_constant(m)
        )

    def test_non_level_delta_rejected(self):
        with pytest.raises(DomainError):
            encode_pruned(builtin("M4"), None, 1.5)

    def test_equals_exhaustive_with_high_levels_dropped(self):
        # oracle simplification: remove level variables above delta from the
        # exhaustive clauses, drop clauses that lost their level, absorb
        rng = random.Random(2)
        for _ in range(30):
            m = random_int_matrix(rng)
            levels = list(sensible_differences(m))
            if not levels:
                continue
            delta = rng.choice(levels)
            keep = {f"a{k + 1}" for k, lv in enumerate(levels) if lv <= delta}
            simplified = set()
            for c in encode_exhaustive(m).clauses:
                alpha_labels = {v.label() for v in c.vars if v.label().startswith("a")}
                rest = frozenset(v for v in c.vars if not v.label().startswith("a"))
                if alpha_labels <= keep:
                    simplified.add(c.vars)
                else:
                    simplified.add(rest)
            minimal = {
                s for s in simplified
                if not any(t < s for t in simplified)
            }
            assert clause_sets(encode_pruned(m, None, delta)) == minimal


class TestEncodeGlobal:
    def test_m1_at_three_single_clause(self):
        cnf = encode_global(builtin("M1"), 3)
        assert clause_sets(cnf) == {vset("r1 c1 r2 c3")}

    def test_threshold_above_spread_gives_true(self):
        assert encode_global(builtin("M1"), 4.0).is_true()

    def test_m1_at_two_matches_cell_pair_scan(self):
        # oracle: scan all 15 cell pairs, keep diffs > 2, absorb pairwise
        m = builtin("M1")
        cells = [(i, j) for i in range(2) for j in range(3)]
        raw = set()
        for (i1, j1), (i2, j2) in combinations(cells, 2):
            if abs(m.values[i1, j1] - m.values[i2, j2]) > 2:
                raw.add(vset(" ".join(
                    sorted({f"r{i1 + 1}", f"r{i2 + 1}"})
                    + sorted({f"c{j1 + 1}", f"c{j2 + 1}"})
                )))
        expected = {s for s in raw if not any(t < s for t in raw)}
        assert clause_sets(encode_global(m, 2)) == expected

    def test_same_row_cells_give_three_literals(self):
        m = Matrix(["r1"], ["c1", "c2"], [[0.0, 9.0]])
        cnf = encode_global(m, 1)
        assert clause_sets(cnf) == {vset("r1 c1 c2")}


class TestBuildCnf:
    def test_dispatch_matches_direct_encoders(self):
        m = builtin("M3")
        assert build_cnf(m, EncodingSpec(Mode.CONSTANT))[0] == encode_constant(m)
        assert build_cnf(m, EncodingSpec(Mode.DELTA, delta=2))[0] == encode_delta(m, 2)
        cnf, ds = build_cnf(m, EncodingSpec(Mode.EXHAUSTIVE))
        assert cnf == encode_exhaustive(m)
        assert ds.levels == (1.0, 2.0, 3.0, 4.0)

    def test_missing_delta_rejected(self):
        with pytest.raises(DomainError):
            build_cnf(builtin("M3"), EncodingSpec(Mode.DELTA))

    def test_negative_delta_rejected_in_spec(self):
        with pytest.raises(DomainError):
            EncodingSpec(Mode.DELTA, delta=-1.0)


def test_row_permutation_leaves_decoded_label_sets_unchanged():
    rng = random.Random(3)
    for _ in range(15):
        m = random_int_matrix(rng, max_rows=4, max_cols=3)
        perm = list(range(m.n_rows))
        rng.shuffle(perm)
        shuffled = Matrix(
            [m.row_labels[i] for i in perm],
            m.col_labels,
            m.values[perm, :],
        )
        for mode, delta in [(Mode.CONSTANT, None), (Mode.DELTA, 1.0)]:
            spec = EncodingSpec(mode, delta=delta)
            a = {(r.bicluster.rows, r.bicluster.cols) for r in mine(m, spec)}
            b = {(r.bicluster.rows, r.bicluster.cols) for r in mine(shuffled, spec)}
            assert a == b
