"""Closed forms: exact ring arithmetic, convergents, series, cubic roots."""

import math

import pytest
from hypothesis import given, strategies as st

from vacpark import (
    GuardError,
    InputError,
    ZSqrt2,
    count_nondecreasing,
    count_nondecreasing_closed,
    count_nonincreasing,
    count_nonincreasing_numeric,
    cubic_roots,
    nonincreasing_series,
    sqrt2_convergent,
)


class TestZSqrt2:
    def test_multiplication(self):
        assert ZSqrt2(1, 1) * ZSqrt2(1, 1) == ZSqrt2(3, 2)
        assert ZSqrt2(1, 2) * ZSqrt2(3, -1) == ZSqrt2(3 - 4, 6 - 1)

    def test_power_examples(self):
        assert ZSqrt2(1, 1) ** 0 == ZSqrt2(1, 0)
        assert ZSqrt2(1, 1) ** 3 == ZSqrt2(7, 5)

    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(0, 12))
    def test_power_matches_repeated_multiplication(self, x, y, e):
        value = ZSqrt2(x, y)
        expected = ZSqrt2(1, 0)
        for _ in range(e):
            expected = expected * value
        assert value**e == expected

    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(0, 12))
    def test_conjugation_commutes_with_powers(self, x, y, e):
        value = ZSqrt2(x, y)
        assert (value**e).conjugate() == value.conjugate() ** e

    def test_negative_exponent_rejected(self):
        with pytest.raises(InputError):
            ZSqrt2(1, 1) ** -1


class TestNondecreasingClosed:
    def test_base_values(self):
        assert count_nondecreasing_closed(1) == 1
        assert count_nondecreasing_closed(2) == 3
        assert count_nondecreasing_closed(3) == 7
        assert count_nondecreasing_closed(10) == 3363

    @pytest.mark.parametrize("n", range(1, 61))
    def test_agrees_with_recurrence(self, n):
        assert count_nondecreasing_closed(n) == count_nondecreasing(n)

    def test_rejects_nonpositive(self):
        with pytest.raises(InputError):
            count_nondecreasing_closed(0)


class TestConvergents:
    def test_initial_values(self):
        assert sqrt2_convergent(1) == (1, 1)
        assert sqrt2_convergent(2) == (3, 2)
        assert sqrt2_convergent(5) == (41, 29)

    @pytest.mark.parametrize("n", range(1, 61))
    def test_numerator_counts_nondecreasing_lists(self, n):
        assert sqrt2_convergent(n).p == count_nondecreasing(n)

    @pytest.mark.parametrize("n", range(1, 61))
    def test_reduced_fraction(self, n):
        conv = sqrt2_convergent(n)
        assert math.gcd(conv.p, conv.q) == 1
        assert conv.p > 0 and conv.q > 0

    @pytest.mark.parametrize("n", range(1, 61))
    def test_quadratic_approximation_quality(self, n):
        # |p/q - sqrt2| < 1/q^2 without floats: with d = p^2 - 2q^2 the
        # condition is q|d| < p + q*sqrt2, squared if the left side exceeds p.
        p, q = sqrt2_convergent(n)
        d = abs(p * p - 2 * q * q)
        assert d == 1  # convergents of sqrt2 solve the +-1 Pell equation
        lhs = q * d - p
        assert lhs <= 0 or lhs * lhs < 2 * q * q

    def test_value_helper(self):
        assert float(sqrt2_convergent(8).value()) == pytest.approx(math.sqrt(2), abs=1e-5)

    def test_rejects_nonpositive(self):
        with pytest.raises(InputError):
            sqrt2_convergent(0)


class TestNonincreasingSeries:
    def test_prefix(self):
        assert nonincreasing_series(6) == [0, 1, 3, 6, 13, 29, 64]

    def test_no_constant_term(self):
        assert nonincreasing_series(0) == [0]

    def test_agrees_with_recurrence_far_out(self):
        series = nonincreasing_series(200)
        for n in range(1, 201):
            assert series[n] == count_nonincreasing(n)

    def test_rejects_negative(self):
        with pytest.raises(InputError):
            nonincreasing_series(-1)


class TestCubicRoots:
    def test_real_root_residual(self):
        roots = cubic_roots()
        assert 0 < roots.r < 1
        assert roots.r == pytest.approx(0.4533976515, abs=1e-9)
        assert abs(roots.r**3 + 2 * roots.r - 1) <= 1e-12

    def test_conjugate_pair_residual(self):
        z, zbar = cubic_roots().conjugate_pair
        assert abs(z**3 + 2 * z - 1) <= 1e-12
        assert abs(zbar**3 + 2 * zbar - 1) <= 1e-12

    def test_vieta_product(self):
        roots = cubic_roots()
        assert abs(roots.r * (roots.alpha**2 + roots.beta**2) - 1) <= 1e-10

    def test_deterministic(self):
        assert cubic_roots() == cubic_roots()


class TestNonincreasingNumeric:
    def test_base_values(self):
        assert count_nonincreasing_numeric(1) == pytest.approx(1.0, abs=1e-6)
        assert count_nonincreasing_numeric(3) == pytest.approx(6.0, abs=1e-6)

    @pytest.mark.parametrize("n", range(1, 41))
    def test_relative_error_within_tolerance(self, n):
        exact = count_nonincreasing(n)
        approx = count_nonincreasing_numeric(n)
        assert abs(approx - exact) / exact < 1e-6

    def test_precision_ceiling(self):
        with pytest.raises(GuardError):
            count_nonincreasing_numeric(41)
        # raised ceiling still evaluates, albeit with more float noise
        assert count_nonincreasing_numeric(45, max_n=45) > 0

    def test_rejects_nonpositive(self):
        with pytest.raises(InputError):
            count_nonincreasing_numeric(0)
