"""Shared helpers for the test suite.

The brute-force routines here are deliberately independent of the package
internals: they enumerate subsets directly so they can serve as oracles
for the clause-multiplication path.
"""

from itertools import combinations

from boolbic import Bicluster, Clause, Implicant, Var, VarKind

_KINDS = {"r": VarKind.ROW, "c": VarKind.COL, "a": VarKind.ALPHA}


def V(label: str) -> Var:
    """Parse 'r3' / 'c1' / 'a2' (1-based) into a Var."""
    return Var(_KINDS[label[0]], int(label[1:]) - 1)


def vset(text: str) -> frozenset:
    """Parse 'r3 r6 c3' into a frozenset of Vars."""
    return frozenset(V(tok) for tok in text.split())


def clause(text: str) -> Clause:
    return Clause(vset(text))


def term(text: str) -> Implicant:
    return Implicant(vset(text))


def bic(rows: str, cols: str) -> Bicluster:
    """Bicluster from space-separated label lists ('' for an empty side)."""
    return Bicluster(frozenset(rows.split()), frozenset(cols.split()))


def brute_minimal_hitting_sets(n_vars: int, clause_masks) -> set[int]:
    """All minimal hitting sets by full subset enumeration.

    Minimality is established by pairwise comparison against every other
    hitting set, with no monotonicity shortcut, so this stays independent
    of the enumeration under test.  Exponential twice over; keep n_vars
    small.
    """
    hitting = [s for s in range(1 << n_vars) if all(s & c for c in clause_masks)]
    return {
        s
        for s in hitting
        if not any(h != s and h & s == h for h in hitting)
    }


def inrow_diff_scan(values, rows, cols):
    """Largest absolute in-row difference of a submatrix, by direct scan."""
    worst = 0.0
    for i in rows:
        for a, b in combinations(cols, 2):
            worst = max(worst, abs(values[i][a] - values[i][b]))
    return worst
