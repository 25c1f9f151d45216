"""Exact enumeration and verification of vacillating parking functions.

Under the vacillating rule with offset k, a car preferring spot p tries p,
then p-k, then p+k (existing spots only).  This package simulates the rule,
counts the lists that park via exhaustive scan, coupled recurrences, a
product formula over residue classes, and exact closed forms, and
cross-checks that every counting path agrees.
"""

from .closed_forms import (
    NONINC_NUMERIC_CEILING,
    Convergent,
    CubicRoots,
    ZSqrt2,
    count_nondecreasing_closed,
    count_nonincreasing_numeric,
    cubic_roots,
    nonincreasing_series,
    sqrt2_convergent,
)
from .errors import GuardError, InputError
from .exhaustive import (
    FULL_SCAN_CEILING,
    INVARIANT_SCAN_CEILING,
    MONOTONE_SCAN_CEILING,
    WORKERS_ENV,
    Filter,
    LastSpotTally,
    count_brute,
    default_workers,
    parking_functions,
    permutation_invariant_members,
    tally_last_spot,
)
from .recurrences import (
    DEFAULT_TABLE_CEILING,
    CountTable,
    count_k_vacillating,
    count_last_spot_car,
    count_last_spot_direct,
    count_last_spot_forward,
    count_nondecreasing,
    count_nonincreasing,
    count_vacillating,
    interleaving_count,
    load_table,
    save_table,
)
from .rules import (
    CLASSICAL,
    LastSpot,
    Outcome,
    Rule,
    is_parking_function,
    last_spot_occupant,
    simulate,
    vacillating,
)
from .verification import (
    A001333_PREFIX,
    CheckResult,
    VerificationReport,
    sequence_table,
    verify_suite,
)

__version__ = "0.1.0"

__all__ = [
    "A001333_PREFIX",
    "CLASSICAL",
    "CheckResult",
    "Convergent",
    "CountTable",
    "CubicRoots",
    "DEFAULT_TABLE_CEILING",
    "FULL_SCAN_CEILING",
    "Filter",
    "GuardError",
    "INVARIANT_SCAN_CEILING",
    "InputError",
    "LastSpot",
    "LastSpotTally",
    "MONOTONE_SCAN_CEILING",
    "NONINC_NUMERIC_CEILING",
    "Outcome",
    "Rule",
    "VerificationReport",
    "WORKERS_ENV",
    "ZSqrt2",
    "count_brute",
    "count_k_vacillating",
    "count_last_spot_car",
    "count_last_spot_direct",
    "count_last_spot_forward",
    "count_nondecreasing",
    "count_nondecreasing_closed",
    "count_nonincreasing",
    "count_nonincreasing_numeric",
    "count_vacillating",
    "cubic_roots",
    "default_workers",
    "interleaving_count",
    "is_parking_function",
    "last_spot_occupant",
    "load_table",
    "nonincreasing_series",
    "parking_functions",
    "permutation_invariant_members",
    "save_table",
    "sequence_table",
    "simulate",
    "sqrt2_convergent",
    "tally_last_spot",
    "vacillating",
    "verify_suite",
    "__version__",
]
