"""Monotone Boolean formulas and prime implicant enumeration.

Formulas here are negation-free CNFs over three kinds of positive variables
(row, column, difference level), so an implicant is exactly a hitting set of
the clause family and a prime implicant is a minimal hitting set.  Computing
all of them yields the Blake canonical form of the function.

All types are immutable after construction and every operation is pure, so
the module is safe for concurrent readers.  Variable sets are represented
internally as Python integers used as bitsets over a fixed universe; subset
tests dominate the runtime and are single mask operations.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator

from .errors import DomainError, ResourceCapError

#: Default ceiling on intermediate terms kept during enumeration.  Output is
#: exponential in the worst case; hitting the cap raises ResourceCapError
#: instead of silently truncating.
DEFAULT_MAX_TERMS = 10_000_000


class VarKind(IntEnum):
    """Variable families, in canonical order: rows < columns < levels."""

    ROW = 0
    COL = 1
    ALPHA = 2


_KIND_PREFIX = {VarKind.ROW: "r", VarKind.COL: "c", VarKind.ALPHA: "a"}


@dataclass(frozen=True, order=True)
class Var:
    """A positive Boolean variable tagged with its family and 0-based index.

    Ordering is total: all rows, then all columns, then all difference
    levels, each family by index.  Printed labels are 1-based (``r1``,
    ``c2``, ``a3``) to match the usual presentation.
    """

    kind: VarKind
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise DomainError(f"variable index must be >= 0, got {self.index}")

    def label(self) -> str:
        return f"{_KIND_PREFIX[self.kind]}{self.index + 1}"

    def __repr__(self):
        return f"Var({self.label()})"


def row(i: int) -> Var:
    return Var(VarKind.ROW, i)


def col(j: int) -> Var:
    return Var(VarKind.COL, j)


def alpha(k: int) -> Var:
    return Var(VarKind.ALPHA, k)


@dataclass(frozen=True)
class Universe:
    """Fixed variable universe: counts of row, column and level variables.

    Maps every in-range Var to a bit position (rows first, then columns,
    then levels) and back.
    """

    n_rows: int
    n_cols: int
    n_alphas: int = 0

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0 or self.n_alphas < 0:
            raise DomainError("universe counts must be nonnegative")

    @property
    def size(self) -> int:
        return self.n_rows + self.n_cols + self.n_alphas

    def _count(self, kind: VarKind) -> int:
        if kind == VarKind.ROW:
            return self.n_rows
        if kind == VarKind.COL:
            return self.n_cols
        return self.n_alphas

    def __contains__(self, var: Var) -> bool:
        return 0 <= var.index < self._count(var.kind)

    def bit(self, var: Var) -> int:
        """Bit position of ``var``; DomainError when outside the universe."""
        if var not in self:
            raise DomainError(f"{var.label()} outside universe {self}")
        if var.kind == VarKind.ROW:
            return var.index
        if var.kind == VarKind.COL:
            return self.n_rows + var.index
        return self.n_rows + self.n_cols + var.index

    def var_at(self, bit: int) -> Var:
        if not 0 <= bit < self.size:
            raise DomainError(f"bit {bit} outside universe {self}")
        if bit < self.n_rows:
            return Var(VarKind.ROW, bit)
        bit -= self.n_rows
        if bit < self.n_cols:
            return Var(VarKind.COL, bit)
        return Var(VarKind.ALPHA, bit - self.n_cols)

    def mask(self, vars: Iterable[Var]) -> int:
        m = 0
        for v in vars:
            m |= 1 << self.bit(v)
        return m

    def vars(self, mask: int) -> frozenset[Var]:
        out = []
        bit = 0
        while mask:
            if mask & 1:
                out.append(self.var_at(bit))
            mask >>= 1
            bit += 1
        return frozenset(out)


def _vars_key(vars: Iterable[Var]):
    """Canonical sort key for a variable set: size, then var order."""
    ordered = tuple(sorted(vars))
    return (len(ordered), ordered)


@dataclass(frozen=True)
class Clause:
    """A disjunction of positive literals; never empty."""

    vars: frozenset[Var]

    def __post_init__(self):
        if not isinstance(self.vars, frozenset):
            object.__setattr__(self, "vars", frozenset(self.vars))
        if not self.vars:
            raise DomainError("clause must contain at least one variable")

    @classmethod
    def of(cls, *vars: Var) -> "Clause":
        return cls(frozenset(vars))

    def __len__(self):
        return len(self.vars)

    def __iter__(self) -> Iterator[Var]:
        return iter(sorted(self.vars))

    def label(self) -> str:
        return " ".join(v.label() for v in self)

    def __repr__(self):
        return f"Clause({self.label()})"


@dataclass(frozen=True)
class Implicant:
    """A conjunction of positive literals; may be empty (constant true)."""

    vars: frozenset[Var]

    def __post_init__(self):
        if not isinstance(self.vars, frozenset):
            object.__setattr__(self, "vars", frozenset(self.vars))

    @classmethod
    def of(cls, *vars: Var) -> "Implicant":
        return cls(frozenset(vars))

    def __len__(self):
        return len(self.vars)

    def __iter__(self) -> Iterator[Var]:
        return iter(sorted(self.vars))

    def label(self) -> str:
        return " ".join(v.label() for v in self) if self.vars else "<true>"

    def __repr__(self):
        return f"Implicant({self.label()})"


def absorb(clauses: Iterable[Clause]) -> list[Clause]:
    """Reduce a clause collection to its minimal antichain.

    Keeps exactly the clauses with no proper-or-equal subset among the
    inputs (one representative per duplicate).  Output order is
    deterministic: by size, then canonical variable order.  Idempotent.
    """
    unique = sorted({c.vars for c in clauses}, key=_vars_key)
    kept: list[frozenset[Var]] = []
    for vs in unique:
        # sorted by size, so any absorber already sits in `kept`
        if not any(k <= vs for k in kept):
            kept.append(vs)
    return [Clause(vs) for vs in kept]


class Cnf:
    """An absorbed, canonically ordered monotone CNF over a fixed universe.

    The empty CNF (no clauses) is the constant-true function.  Clauses are
    stored as bitmasks; the ``clauses`` property materializes them as
    Clause objects on demand.
    """

    __slots__ = ("universe", "_masks")

    def __init__(self, universe: Universe, clauses: Iterable[Clause | Iterable[Var]] = ()):
        masks = []
        for c in clauses:
            vs = c.vars if isinstance(c, Clause) else frozenset(c)
            if not vs:
                raise DomainError("clause must contain at least one variable")
            masks.append(universe.mask(vs))
        self.universe = universe
        self._masks = tuple(_absorb_masks(masks, universe))

    @classmethod
    def _from_masks(cls, universe: Universe, masks: Iterable[int]) -> "Cnf":
        cnf = cls.__new__(cls)
        cnf.universe = universe
        cnf._masks = tuple(_absorb_masks(list(masks), universe))
        return cnf

    @property
    def clause_masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def clauses(self) -> tuple[Clause, ...]:
        return tuple(Clause(self.universe.vars(m)) for m in self._masks)

    def is_true(self) -> bool:
        return not self._masks

    def __len__(self):
        return len(self._masks)

    def __eq__(self, other):
        return (
            isinstance(other, Cnf)
            and self.universe == other.universe
            and self._masks == other._masks
        )

    def __hash__(self):
        return hash((self.universe, self._masks))

    def dump(self) -> str:
        """Debug text form: one clause per line, 1-based variable labels."""
        return "\n".join(c.label() for c in self.clauses)

    def __repr__(self):
        return f"Cnf({len(self._masks)} clauses over {self.universe})"


@dataclass(frozen=True)
class PrimeImplicantSet:
    """All prime implicants of a CNF, canonically ordered.

    Forms an antichain; for the monotone formulas built here it equals the
    set of minimal hitting sets of the clause hypergraph.
    """

    terms: tuple[Implicant, ...]

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Implicant]:
        return iter(self.terms)

    def __contains__(self, term: Implicant) -> bool:
        return term in self.terms

    def as_var_sets(self) -> set[frozenset[Var]]:
        return {t.vars for t in self.terms}

    def dump(self) -> str:
        """Debug text form: one term per line, 1-based variable labels."""
        return "\n".join(t.label() for t in self.terms)


def _mask_key(mask: int):
    bits = []
    bit = 0
    m = mask
    while m:
        if m & 1:
            bits.append(bit)
        m >>= 1
        bit += 1
    return (len(bits), tuple(bits))


def _absorb_masks(masks: list[int], universe: Universe) -> list[int]:
    limit = 1 << universe.size
    for m in masks:
        if m >= limit:
            raise DomainError("clause mask outside universe")
    kept: list[int] = []
    for m in sorted(set(masks), key=_mask_key):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def is_implicant(term: Implicant, cnf: Cnf) -> bool:
    """True iff ``term`` intersects every clause of ``cnf``.

    Raises DomainError when a term variable falls outside the CNF universe.
    """
    mask = cnf.universe.mask(term.vars)
    return all(mask & c for c in cnf.clause_masks)


def is_prime(term: Implicant, cnf: Cnf) -> bool:
    """True iff ``term`` is an implicant no single removal can shrink.

    Single-variable removals suffice because implicants of a monotone CNF
    are upward closed: minimality equals local minimality.
    """
    mask = cnf.universe.mask(term.vars)
    if not all(mask & c for c in cnf.clause_masks):
        return False
    for v in term.vars:
        reduced = mask & ~(1 << cnf.universe.bit(v))
        if all(reduced & c for c in cnf.clause_masks):
            return False
    return True


def prime_implicants(
    cnf: Cnf,
    max_terms: int = DEFAULT_MAX_TERMS,
    max_seconds: float | None = None,
) -> PrimeImplicantSet:
    """Enumerate every prime implicant of a monotone CNF.

    Iterative clause multiplication with inter-step absorption: the running
    DNF always holds the minimal hitting sets of the clauses processed so
    far, and clauses are folded in smallest-first.  A term that misses the
    next clause is branched on each clause variable; the extended term
    survives unless an already-hitting term absorbs it.  Terms produced
    from the same step are pairwise incomparable by construction, so no
    global re-absorption is needed.

    The empty CNF yields a single empty implicant (constant true).  Going
    past ``max_terms`` intermediate terms or ``max_seconds`` wall time
    raises ResourceCapError; results are never silently truncated.
    """
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    clauses = cnf.clause_masks  # already absorbed, smallest-first
    dnf: list[int] = [0]
    for done, clause in enumerate(clauses):
        hit = []
        miss = []
        for t in dnf:
            (hit if t & clause else miss).append(t)
        bits = []
        m = clause
        b = 0
        while m:
            if m & 1:
                bits.append(b)
            m >>= 1
            b += 1
        # absorbers of t|{v} must contain v: index hitters by clause bit
        hit_by_bit = {b: [u for u in hit if u >> b & 1] for b in bits}
        new = []
        for t in miss:
            for b in bits:
                cand = t | (1 << b)
                for u in hit_by_bit[b]:
                    if u & ~cand == 0:
                        break
                else:
                    new.append(cand)
        dnf = hit + new
        if len(dnf) > max_terms:
            raise ResourceCapError(
                f"prime implicant enumeration exceeded {max_terms} terms",
                terms_seen=len(dnf),
                clauses_done=done + 1,
                clauses_total=len(clauses),
            )
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceCapError(
                f"prime implicant enumeration exceeded {max_seconds} s",
                terms_seen=len(dnf),
                clauses_done=done + 1,
                clauses_total=len(clauses),
            )
    dnf.sort(key=_mask_key)
    u = cnf.universe
    return PrimeImplicantSet(tuple(Implicant(u.vars(m)) for m in dnf))
