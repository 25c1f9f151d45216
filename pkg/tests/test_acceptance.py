"""Acceptance gate: every exit criterion at its stated tolerance.

Each test prints one PASS line on success (run with ``pytest -s`` to see
them); a failure raises with the offending values.  Counts are exact
integer comparisons throughout; the only tolerances are the float checks
on the three-term closed form and the stated wall-clock budgets.
"""

import math
import time

from vacpark import (
    CLASSICAL,
    A001333_PREFIX,
    count_brute,
    count_k_vacillating,
    count_last_spot_direct,
    count_last_spot_forward,
    count_nondecreasing,
    count_nondecreasing_closed,
    count_nonincreasing,
    count_nonincreasing_numeric,
    count_vacillating,
    nonincreasing_series,
    parking_functions,
    permutation_invariant_members,
    simulate,
    sqrt2_convergent,
    tally_last_spot,
    vacillating,
    verify_suite,
)

NONDEC_TOWER = (1, 3, 7, 17, 41, 99, 239, 577, 1393, 3363, 8119, 19601)
NONINC_PREFIX = (1, 3, 6, 13, 29, 64)


def test_criterion_1_worked_example_pair():
    outcome = simulate((4, 1, 1, 4), vacillating(2))
    assert outcome.success and outcome.spots == (4, 1, 3, 2)
    outcome = simulate((4, 1, 1, 1), vacillating(2))
    assert not outcome.success and outcome.failing_car == 4

    start = time.perf_counter()
    repeats = 100
    for _ in range(repeats):
        simulate((4, 1, 1, 4), vacillating(2))
        simulate((4, 1, 1, 1), vacillating(2))
    per_call = (time.perf_counter() - start) / (2 * repeats)
    assert per_call < 1e-3, f"simulate took {per_call:.2e}s per call"
    print(f"ACCEPTANCE 1 PASS: example pair exact, {per_call * 1e6:.1f}us per simulate")


def test_criterion_2_classical_counts():
    start = time.perf_counter()
    for n in range(1, 7):
        assert count_brute(n, CLASSICAL, workers=1) == (n + 1) ** (n - 1)
    t7 = time.perf_counter()
    assert count_brute(7, CLASSICAL, workers=1) == 8**6
    elapsed7 = time.perf_counter() - t7
    assert elapsed7 < 5.0, f"n=7 classical scan took {elapsed7:.2f}s"
    print(
        f"ACCEPTANCE 2 PASS: classical counts = (n+1)^(n-1) for n=1..7, "
        f"n=7 scan {elapsed7:.2f}s single-threaded"
    )


def test_criterion_3_recurrence_oracle_equivalence():
    for n in range(1, 8):
        assert count_vacillating(n) == count_brute(n, vacillating(1), workers=1)
        tally = tally_last_spot(n, workers=1)
        for i in range(1, n + 1):
            assert count_last_spot_direct(n, i) == tally.direct[i]
            assert count_last_spot_forward(n, i) == tally.forward[i]
    # published base table, verbatim
    assert count_last_spot_direct(1, 1) == 1
    assert count_last_spot_direct(2, 2) == 1
    assert count_last_spot_direct(2, 1) == 2
    assert count_last_spot_direct(3, 1) == 7
    assert count_last_spot_direct(3, 2) == 5
    assert count_last_spot_direct(3, 3) == 4
    assert count_last_spot_forward(1, 1) == 0
    assert count_last_spot_forward(2, 1) == 0
    assert count_last_spot_forward(3, 1) == 0
    assert count_last_spot_forward(3, 2) == 0
    assert count_last_spot_forward(2, 2) == 1
    assert count_last_spot_forward(3, 3) == 4
    print("ACCEPTANCE 3 PASS: recurrence = brute force for n=1..7, per-car families included")


def test_criterion_4_product_formula_matrix():
    start = time.perf_counter()
    for n in range(1, 8):
        for k in range(1, n + 1):
            assert count_k_vacillating(n, k) == count_brute(
                n, vacillating(k), workers=4
            ), f"mismatch at n={n}, k={k}"
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"full matrix took {elapsed:.1f}s"
    for n in range(1, 13):
        assert count_k_vacillating(n, n) == math.factorial(n)
        assert count_k_vacillating(n, 1) == count_vacillating(n)
    print(f"ACCEPTANCE 4 PASS: product formula = brute for all k<=n<=7 in {elapsed:.1f}s (4 workers)")


def test_criterion_5_nondecreasing_tower():
    assert NONDEC_TOWER[:8] == A001333_PREFIX
    for n in range(1, 13):
        expected = NONDEC_TOWER[n - 1]
        assert count_nondecreasing(n) == expected
        assert count_nondecreasing_closed(n) == expected
        assert sqrt2_convergent(n).p == expected
    for n in range(1, 9):
        assert count_nondecreasing(n) == count_brute(n, vacillating(1), "nondecreasing")
    print("ACCEPTANCE 5 PASS: non-decreasing tower exact for n=1..12, brute-checked to n=8")


def test_criterion_6_nonincreasing_tower():
    series = nonincreasing_series(40)
    for n in range(1, 13):
        assert count_nonincreasing(n) == series[n]
    assert tuple(series[1:7]) == NONINC_PREFIX
    for n in range(1, 9):
        assert count_nonincreasing(n) == count_brute(n, vacillating(1), "nonincreasing")
    for n in range(1, 41):
        exact = count_nonincreasing(n)
        # raises if the conjugate terms leave an imaginary residue >= 1e-8
        approx = count_nonincreasing_numeric(n)
        rel = abs(approx - exact) / exact
        assert rel < 1e-6, f"n={n}: relative error {rel:.2e}"
    print("ACCEPTANCE 6 PASS: non-increasing tower exact; numeric closed form within 1e-6 to n=40")


def test_criterion_7_structure_bounds():
    for n in range(1, 9):
        for prefs in parking_functions(n, vacillating(1), "nondecreasing"):
            assert all(i - 1 <= a <= i + 1 for i, a in enumerate(prefs, start=1)), prefs
        for prefs in parking_functions(n, vacillating(1), "nonincreasing"):
            assert all(n - i <= b <= n + 2 - i for i, b in enumerate(prefs, start=1)), prefs
    print("ACCEPTANCE 7 PASS: structure bounds hold for every monotone member, n<=8")


def test_criterion_8_invariance_scan():
    members = permutation_invariant_members(3, 1)
    assert (1, 1, 2) not in members
    start = time.perf_counter()
    sizes = [len(permutation_invariant_members(n, 1)) for n in range(1, 6)]
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"scan to n=5 took {elapsed:.1f}s"
    assert sizes[0] == 1 and sizes[1] == 4
    print(f"ACCEPTANCE 8 PASS: invariance scan to n=5 in {elapsed:.2f}s, sizes {sizes}")


def test_criterion_9_default_verify_suite():
    start = time.perf_counter()
    report = verify_suite(7, 40, 7)
    elapsed = time.perf_counter() - start
    assert report.overall, f"failed checks: {report.failed()}"
    assert elapsed < 300.0, f"suite took {elapsed:.1f}s"
    print(
        f"ACCEPTANCE 9 PASS: verify_suite(7, 40, 7) all {len(report.checks)} "
        f"checks green in {elapsed:.1f}s"
    )
