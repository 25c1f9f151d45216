"""Cross-checks between every counting path the package provides.

Each identity (scan vs recurrence, recurrence vs closed form, product
formula vs scan, structure bounds, published sequence prefixes) becomes one
check per parameter tuple.  Checks never abort the suite; a failed identity
is data, recorded next to its parameters so a discrepancy is localized in
one run.  Counts are compared and serialized as decimal strings, which keeps
the report lossless at any magnitude.
"""

import time
from dataclasses import dataclass
from typing import Callable

from .closed_forms import (
    count_nondecreasing_closed,
    count_nonincreasing_numeric,
    nonincreasing_series,
    sqrt2_convergent,
    NONINC_NUMERIC_CEILING,
)
from .errors import InputError
from .exhaustive import FULL_SCAN_CEILING, Filter, count_brute, parking_functions, tally_last_spot
from .recurrences import (
    count_k_vacillating,
    count_last_spot_direct,
    count_last_spot_forward,
    count_nondecreasing,
    count_nonincreasing,
    count_vacillating,
)
from .rules import CLASSICAL, simulate, vacillating

__all__ = [
    "A001333_PREFIX",
    "CheckResult",
    "VerificationReport",
    "sequence_table",
    "verify_suite",
]

# Numerators of the sqrt(2) convergents (OEIS A001333, offset 1), the
# published sequence the non-decreasing counts must reproduce.
A001333_PREFIX = (1, 3, 7, 17, 41, 99, 239, 577)


@dataclass(frozen=True)
class CheckResult:
    """One verified identity: id, parameters, both values, verdict, timing."""

    check_id: str
    parameters: dict[str, int]
    expected: str
    actual: str
    passed: bool
    elapsed: float


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    overall: bool

    @classmethod
    def from_checks(cls, checks: list[CheckResult]) -> "VerificationReport":
        ordered = sorted(checks, key=lambda c: (c.check_id, sorted(c.parameters.items())))
        return cls(checks=tuple(ordered), overall=all(c.passed for c in ordered))

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def verify_suite(
    n_brute_max: int = 7,
    n_rec_max: int = 40,
    k_max: int = 7,
    *,
    workers: int | None = None,
    max_n: int | None = None,
) -> VerificationReport:
    """Run the full cross-check matrix and return the report.

    ``n_brute_max`` bounds every exhaustive scan, ``n_rec_max`` the
    recurrence/closed-form comparisons, ``k_max`` the offsets tried against
    the product formula.  Check failures are reported, never raised.
    """
    ceiling = max_n if max_n is not None else FULL_SCAN_CEILING
    if not isinstance(n_brute_max, int) or not 1 <= n_brute_max <= ceiling:
        raise InputError(
            f"n_brute_max must satisfy 1 <= n_brute_max <= {ceiling}, got {n_brute_max!r}"
        )
    if not isinstance(n_rec_max, int) or n_rec_max < n_brute_max:
        raise InputError(
            f"n_rec_max must be an integer >= n_brute_max, got {n_rec_max!r}"
        )
    if not isinstance(k_max, int) or k_max < 1:
        raise InputError(f"k_max must be a positive integer, got {k_max!r}")

    checks: list[CheckResult] = []

    def run(check_id: str, params: dict[str, int], fn: Callable[[], tuple[str, str, bool]]) -> None:
        start = time.perf_counter()
        try:
            expected, actual, passed = fn()
        except Exception as exc:  # a broken path is a failed check, not an abort
            expected, actual, passed = "", f"error: {exc}", False
        checks.append(
            CheckResult(
                check_id=check_id,
                parameters=params,
                expected=expected,
                actual=actual,
                passed=passed,
                elapsed=time.perf_counter() - start,
            )
        )

    def eq(expected: int, actual: int) -> tuple[str, str, bool]:
        return str(expected), str(actual), expected == actual

    brute_cache: dict[int, int] = {}

    def brute_total(n: int) -> int:
        if n not in brute_cache:
            brute_cache[n] = count_brute(
                n, vacillating(1), Filter.ALL, max_n=max_n, workers=workers
            )
        return brute_cache[n]

    # Exhaustive scan vs the coupled recurrences, totals and per-car split.
    for n in range(1, n_brute_max + 1):
        run("brute_vs_recurrence_total", {"n": n}, lambda n=n: eq(brute_total(n), count_vacillating(n)))
        tally = tally_last_spot(n, max_n=max_n, workers=workers)
        run(
            "subset_partition_identity",
            {"n": n},
            lambda n=n, t=tally: eq(brute_total(n), t.total()),
        )
        for i in range(1, n + 1):
            run(
                "tally_vs_recurrence_direct",
                {"n": n, "i": i},
                lambda n=n, i=i, t=tally: eq(t.direct[i], count_last_spot_direct(n, i)),
            )
            run(
                "tally_vs_recurrence_forward",
                {"n": n, "i": i},
                lambda n=n, i=i, t=tally: eq(t.forward[i], count_last_spot_forward(n, i)),
            )

    # Product formula for every offset vs a fresh scan.
    for n in range(1, n_brute_max + 1):
        for k in range(1, min(n, k_max) + 1):
            run(
                "brute_vs_product_formula",
                {"n": n, "k": k},
                lambda n=n, k=k: eq(
                    count_brute(n, vacillating(k), Filter.ALL, max_n=max_n, workers=workers),
                    count_k_vacillating(n, k),
                ),
            )

    # Monotone recurrences vs generative scans.
    for n in range(1, n_brute_max + 1):
        run(
            "brute_vs_nondecreasing_recurrence",
            {"n": n},
            lambda n=n: eq(
                count_brute(n, vacillating(1), Filter.NONDECREASING, max_n=max_n),
                count_nondecreasing(n),
            ),
        )
        run(
            "brute_vs_nonincreasing_recurrence",
            {"n": n},
            lambda n=n: eq(
                count_brute(n, vacillating(1), Filter.NONINCREASING, max_n=max_n),
                count_nonincreasing(n),
            ),
        )

    # Classical scan against the published (n+1)^(n-1) formula.
    for n in range(1, n_brute_max + 1):
        run(
            "classical_count_formula",
            {"n": n},
            lambda n=n: eq(
                (n + 1) ** (n - 1),
                count_brute(n, CLASSICAL, Filter.ALL, max_n=max_n, workers=workers),
            ),
        )

    # Exact towers: recurrence vs ring arithmetic vs convergent numerators.
    for n in range(1, n_rec_max + 1):
        run(
            "nondecreasing_closed_form",
            {"n": n},
            lambda n=n: eq(count_nondecreasing(n), count_nondecreasing_closed(n)),
        )
        run(
            "nondecreasing_convergent_numerator",
            {"n": n},
            lambda n=n: eq(count_nondecreasing(n), sqrt2_convergent(n).p),
        )

    series = nonincreasing_series(n_rec_max)
    for n in range(1, n_rec_max + 1):
        run(
            "nonincreasing_series",
            {"n": n},
            lambda n=n: eq(count_nonincreasing(n), series[n]),
        )
    for n in range(1, min(n_rec_max, NONINC_NUMERIC_CEILING) + 1):
        def numeric(n: int = n) -> tuple[str, str, bool]:
            exact = count_nonincreasing(n)
            approx = count_nonincreasing_numeric(n)
            rel = abs(approx - exact) / exact
            return str(exact), repr(approx), rel < 1e-6
        run("nonincreasing_numeric_closed_form", {"n": n}, numeric)

    # Structure bounds satisfied by every monotone member.
    for n in range(1, n_brute_max + 1):
        def nondec_bounds(n: int = n) -> tuple[str, str, bool]:
            for prefs in parking_functions(n, vacillating(1), Filter.NONDECREASING, max_n=max_n):
                for i, a in enumerate(prefs, start=1):
                    if not i - 1 <= a <= i + 1:
                        return "all within [i-1, i+1]", f"violation at {prefs}", False
            return "all within [i-1, i+1]", "all within [i-1, i+1]", True

        def noninc_bounds(n: int = n) -> tuple[str, str, bool]:
            for prefs in parking_functions(n, vacillating(1), Filter.NONINCREASING, max_n=max_n):
                for i, b in enumerate(prefs, start=1):
                    if not n - i <= b <= n + 2 - i:
                        return "all within [n-i, n+2-i]", f"violation at {prefs}", False
            return "all within [n-i, n+2-i]", "all within [n-i, n+2-i]", True

        run("nondecreasing_structure_bounds", {"n": n}, nondec_bounds)
        run("nonincreasing_structure_bounds", {"n": n}, noninc_bounds)

    # Worked example pair: one list parks under offset 2, its variant strands car 4.
    def example_success() -> tuple[str, str, bool]:
        outcome = simulate((4, 1, 1, 4), vacillating(2))
        actual = f"spots {outcome.spots}" if outcome.success else f"failure at car {outcome.failing_car}"
        return "spots (4, 1, 3, 2)", actual, actual == "spots (4, 1, 3, 2)"

    def example_failure() -> tuple[str, str, bool]:
        outcome = simulate((4, 1, 1, 1), vacillating(2))
        actual = f"failure at car {outcome.failing_car}" if not outcome.success else f"spots {outcome.spots}"
        return "failure at car 4", actual, actual == "failure at car 4"

    run("rule_example_success", {}, example_success)
    run("rule_example_failure", {}, example_failure)

    # Published prefix of the convergent-numerator sequence.
    for n in range(1, len(A001333_PREFIX) + 1):
        run(
            "nondecreasing_known_prefix",
            {"n": n},
            lambda n=n: eq(A001333_PREFIX[n - 1], count_nondecreasing(n)),
        )

    return VerificationReport.from_checks(checks)


_SEQUENCE_FAMILIES = ("total", "nondecreasing", "nonincreasing")


def sequence_table(family: str, n_max: int) -> list[tuple[int, str]]:
    """The exact count sequence for n = 1..n_max, as decimal strings."""
    if family not in _SEQUENCE_FAMILIES:
        raise InputError(
            f"unknown family {family!r}; expected one of: {', '.join(_SEQUENCE_FAMILIES)}"
        )
    if not isinstance(n_max, int) or n_max < 1:
        raise InputError(f"n_max must be a positive integer, got {n_max!r}")
    if family == "total":
        counter = count_vacillating
    elif family == "nondecreasing":
        counter = count_nondecreasing
    else:
        counter = count_nonincreasing
    return [(n, str(counter(n))) for n in range(1, n_max + 1)]
