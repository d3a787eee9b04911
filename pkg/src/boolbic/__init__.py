"""boolbic: bicluster mining through monotone Boolean reasoning.

Real-valued matrices are translated into monotone CNFs whose prime
implicants decode, by variable complementation, into all inclusion-maximal
constant and shifting patterns at the requested tolerance.
"""

from .boolcore import (
    DEFAULT_MAX_TERMS,
    Clause,
    Cnf,
    Implicant,
    PrimeImplicantSet,
    Universe,
    Var,
    VarKind,
    absorb,
    alpha,
    col,
    is_implicant,
    is_prime,
    prime_implicants,
    row,
)
from .datasets import BUILTIN_NAMES, builtin
from .encode import (
    EncodingSpec,
    Mode,
    build_cnf,
    encode_constant,
    encode_delta,
    encode_exhaustive,
    encode_global,
    encode_pruned,
)
from .errors import BoolbicError, DomainError, ParseError, ResourceCapError
from .matrixio import (
    DEFAULT_ROUND_DECIMALS,
    DeltaSet,
    Matrix,
    diff_histogram,
    inrow_pairs,
    load_matrix,
    pair_count,
    round_half_up,
    sensible_differences,
)
from .metrics import Score, area, harmonic_diameter, msr, range_coverage, score
from .oracle import (
    OracleResult,
    TheoremReport,
    brute_force_delta,
    brute_force_exhaustive,
    brute_force_pruned,
    corresponding_implicant,
    verify_theorems,
)
from .patterns import (
    Bicluster,
    PatternRecord,
    decode,
    is_delta_shifting,
    is_global_bandwidth,
    is_inclusion_maximal,
    max_inrow_diff,
    mine,
)

__version__ = "0.1.0"
