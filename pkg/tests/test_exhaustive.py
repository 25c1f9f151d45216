"""Exhaustive scans: counts, streams, tallies, guards, and parallelism."""

import itertools

import pytest

from vacpark import (
    CLASSICAL,
    Filter,
    GuardError,
    InputError,
    count_brute,
    default_workers,
    is_parking_function,
    parking_functions,
    permutation_invariant_members,
    simulate,
    tally_last_spot,
    vacillating,
)


def brute_by_direct_simulation(n, rule, flt=Filter.ALL):
    """Trivially independent oracle: simulate every tuple in [n]^n."""
    total = 0
    for prefs in itertools.product(range(1, n + 1), repeat=n):
        if flt is Filter.NONDECREASING and any(a > b for a, b in zip(prefs, prefs[1:])):
            continue
        if flt is Filter.NONINCREASING and any(a < b for a, b in zip(prefs, prefs[1:])):
            continue
        total += is_parking_function(prefs, rule)
    return total


class TestCountBrute:
    def test_known_small_counts(self):
        assert count_brute(2, vacillating(1)) == 4
        assert count_brute(3, vacillating(1)) == 20
        assert count_brute(3, vacillating(1), Filter.NONINCREASING) == 6
        assert count_brute(2, vacillating(1), Filter.NONDECREASING) == 3
        assert count_brute(5, CLASSICAL) == 1296

    def test_empty_street(self):
        assert count_brute(0, CLASSICAL) == 1
        assert count_brute(0, vacillating(1)) == 1

    @pytest.mark.parametrize("n", range(1, 6))
    @pytest.mark.parametrize("flt", list(Filter))
    def test_matches_plain_product_scan(self, n, flt):
        for rule in (CLASSICAL, vacillating(1), vacillating(max(1, n // 2))):
            assert count_brute(n, rule, flt) == brute_by_direct_simulation(n, rule, flt)

    def test_guard_refuses_large_n(self):
        with pytest.raises(GuardError):
            count_brute(10, vacillating(1))
        with pytest.raises(GuardError):
            count_brute(13, vacillating(1), Filter.NONDECREASING)

    def test_guard_override(self):
        # a monotone scan well past the full-scan ceiling is still fast
        assert count_brute(13, vacillating(1), Filter.NONINCREASING, max_n=13) > 0

    def test_bad_arguments(self):
        with pytest.raises(InputError):
            count_brute(-1, CLASSICAL)
        with pytest.raises(InputError):
            count_brute(3, vacillating(4))
        with pytest.raises(InputError):
            count_brute(3, CLASSICAL, "sorted")
        with pytest.raises(InputError):
            count_brute(3, CLASSICAL, workers=0)

    def test_filter_accepts_plain_strings(self):
        assert count_brute(3, vacillating(1), "nonincreasing") == 6


class TestParallelDeterminism:
    def test_counts_independent_of_worker_count(self):
        for workers in (1, 2, 3):
            assert count_brute(6, vacillating(1), workers=workers) == 11488
            assert count_brute(6, CLASSICAL, workers=workers) == 7**5

    def test_stream_independent_of_worker_count(self):
        seq = list(parking_functions(6, vacillating(2), workers=1))
        par = list(parking_functions(6, vacillating(2), workers=2))
        assert seq == par

    def test_pooled_stream_respects_limit(self):
        seq = list(parking_functions(6, vacillating(1), workers=1, limit=50))
        par = list(parking_functions(6, vacillating(1), workers=2, limit=50))
        assert seq == par and len(par) == 50

    def test_tally_independent_of_worker_count(self):
        assert tally_last_spot(6, workers=2) == tally_last_spot(6, workers=1)


class TestStream:
    def test_nonincreasing_three(self):
        got = list(parking_functions(3, vacillating(1), Filter.NONINCREASING))
        assert got == [(2, 2, 2), (3, 1, 1), (3, 2, 1), (3, 2, 2), (3, 3, 1), (3, 3, 2)]

    def test_single_car(self):
        assert list(parking_functions(1, vacillating(1))) == [(1,)]

    def test_limit(self):
        assert list(parking_functions(3, vacillating(1), limit=2)) == [(1, 1, 2), (1, 1, 3)]
        assert list(parking_functions(3, vacillating(1), limit=0)) == []

    def test_empty_street_yields_empty_tuple(self):
        assert list(parking_functions(0, CLASSICAL)) == [()]

    @pytest.mark.parametrize("flt", list(Filter))
    def test_lexicographic_and_complete(self, flt):
        rule = vacillating(1)
        items = list(parking_functions(4, rule, flt))
        assert items == sorted(items)
        assert len(items) == len(set(items)) == count_brute(4, rule, flt)
        assert all(is_parking_function(p, rule) for p in items)

    def test_eager_validation(self):
        with pytest.raises(GuardError):
            parking_functions(10, vacillating(1))
        with pytest.raises(InputError):
            parking_functions(3, vacillating(1), limit=-1)


class TestTally:
    def test_published_three_car_table(self):
        tally = tally_last_spot(3)
        assert tally.direct == {1: 7, 2: 5, 3: 4}
        assert tally.forward == {1: 0, 2: 0, 3: 4}

    def test_published_two_car_table(self):
        tally = tally_last_spot(2)
        assert tally.direct == {1: 2, 2: 1}
        assert tally.forward == {1: 0, 2: 1}

    @pytest.mark.parametrize("n", range(1, 6))
    def test_partition_identity(self, n):
        tally = tally_last_spot(n)
        assert tally.total() == count_brute(n, vacillating(1))
        for i in range(1, n + 1):
            assert tally.by_car[i] == tally.direct[i] + tally.forward[i]

    def test_guards(self):
        with pytest.raises(InputError):
            tally_last_spot(0)
        with pytest.raises(GuardError):
            tally_last_spot(10)


class TestStructureBounds:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_nondecreasing_members_stay_near_diagonal(self, n):
        for prefs in parking_functions(n, vacillating(1), Filter.NONDECREASING):
            assert all(i - 1 <= a <= i + 1 for i, a in enumerate(prefs, start=1))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_nonincreasing_members_stay_near_antidiagonal(self, n):
        for prefs in parking_functions(n, vacillating(1), Filter.NONINCREASING):
            assert all(n - i <= b <= n + 2 - i for i, b in enumerate(prefs, start=1))


class TestResidueStructure:
    @pytest.mark.parametrize("k", [2, 3])
    def test_spots_preserve_preference_residues(self, k):
        rule = vacillating(k)
        for prefs in parking_functions(5, rule):
            outcome = simulate(prefs, rule)
            assert all((s - p) % k == 0 for p, s in zip(prefs, outcome.spots))

    @pytest.mark.parametrize("k", [2, 3])
    def test_residue_classes_decompose_into_offset_one_lists(self, k):
        # Re-indexing the cars of one residue class turns their sub-list into
        # an offset-1 parking list on a street of the class size.
        n = 5
        for prefs in parking_functions(n, vacillating(k)):
            for j in range(1, k + 1):
                sub = [(p - j) // k + 1 for p in prefs if (p - 1) % k == j - 1]
                if sub:
                    assert is_parking_function(sub, vacillating(1))


class TestInvarianceScan:
    def test_single_car(self):
        assert permutation_invariant_members(1, 1) == [(1,)]

    def test_two_cars_fully_invariant(self):
        assert permutation_invariant_members(2, 1) == [(1, 1), (1, 2), (2, 1), (2, 2)]

    def test_counterexample_excluded(self):
        members = permutation_invariant_members(3, 1)
        assert (1, 1, 2) not in members
        assert (2, 1, 1) not in members

    def test_members_really_are_invariant(self):
        members = set(permutation_invariant_members(3, 1))
        for prefs in itertools.product(range(1, 4), repeat=3):
            invariant = all(
                is_parking_function(p, vacillating(1))
                for p in itertools.permutations(prefs)
            )
            assert (prefs in members) == invariant

    def test_sorted_output(self):
        members = permutation_invariant_members(4, 2)
        assert members == sorted(members)

    def test_guard(self):
        with pytest.raises(GuardError):
            permutation_invariant_members(7, 1)
        with pytest.raises(InputError):
            permutation_invariant_members(0, 1)
        with pytest.raises(InputError):
            permutation_invariant_members(3, 4)


class TestWorkerResolution:
    def test_env_variable(self, monkeypatch):
        monkeypatch.setenv("VACPARK_WORKERS", "3")
        assert default_workers() == 3

    def test_env_absent_falls_back_to_cpus(self, monkeypatch):
        monkeypatch.delenv("VACPARK_WORKERS", raising=False)
        assert default_workers() >= 1

    def test_env_invalid(self, monkeypatch):
        monkeypatch.setenv("VACPARK_WORKERS", "zero")
        with pytest.raises(InputError):
            default_workers()
        monkeypatch.setenv("VACPARK_WORKERS", "0")
        with pytest.raises(InputError):
            default_workers()
