"""Closed-form and generating-function counterparts of the recurrences.

The non-decreasing count has the closed form ((1+sqrt2)^n + (1-sqrt2)^n)/2,
evaluated here exactly in the ring of integers extended by sqrt(2) (the
conjugate term underflows in floats long before n gets interesting).  The
same numbers are the numerators of the convergents of the continued
fraction of sqrt(2).

The non-increasing count has the rational generating function
(x + x^2) / (1 - 2x - x^3); its coefficients are extracted by an exact
linear recurrence, and a three-term numeric closed form built from the
roots of x^3 + 2x - 1 exists for cross-validation at moderate n.
"""

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import GuardError, InputError

__all__ = [
    "NONINC_NUMERIC_CEILING",
    "Convergent",
    "CubicRoots",
    "ZSqrt2",
    "count_nondecreasing_closed",
    "count_nonincreasing_numeric",
    "cubic_roots",
    "nonincreasing_series",
    "sqrt2_convergent",
]

NONINC_NUMERIC_CEILING = 40


@dataclass(frozen=True, slots=True)
class ZSqrt2:
    """Exact element x + y*sqrt(2) of the quadratic integer ring Z[sqrt2]."""

    x: int
    y: int

    def __add__(self, other: "ZSqrt2") -> "ZSqrt2":
        return ZSqrt2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "ZSqrt2") -> "ZSqrt2":
        return ZSqrt2(self.x - other.x, self.y - other.y)

    def __mul__(self, other: "ZSqrt2") -> "ZSqrt2":
        return ZSqrt2(
            self.x * other.x + 2 * self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    def __pow__(self, exponent: int) -> "ZSqrt2":
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError(f"exponent must be a nonnegative integer, got {exponent!r}")
        result = ZSqrt2(1, 0)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "ZSqrt2":
        return ZSqrt2(self.x, -self.y)

    def __str__(self) -> str:
        return f"{self.x}{self.y:+}*sqrt2"


def count_nondecreasing_closed(n: int) -> int:
    """Non-decreasing count via ((1+sqrt2)^n + (1-sqrt2)^n) / 2, exactly.

    With (1+sqrt2)^n = x + y*sqrt2 the conjugate power is x - y*sqrt2, so
    the sum is 2x and the result is just the rational part x.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    return (ZSqrt2(1, 1) ** n).x


class Convergent(NamedTuple):
    """Numerator and denominator of a continued-fraction convergent."""

    p: int
    q: int

    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def sqrt2_convergent(n: int) -> Convergent:
    """The nth convergent p/q of sqrt(2) = [1; 2, 2, 2, ...].

    Both sequences satisfy v(n) = 2 v(n-1) + v(n-2), from (p1, q1) = (1, 1)
    and (p2, q2) = (3, 2).  The numerators equal the non-decreasing counts.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    p_prev, q_prev = 1, 1
    p_cur, q_cur = 3, 2
    if n == 1:
        return Convergent(p_prev, q_prev)
    for _ in range(n - 2):
        p_prev, p_cur = p_cur, 2 * p_cur + p_prev
        q_prev, q_cur = q_cur, 2 * q_cur + q_prev
    return Convergent(p_cur, q_cur)


def nonincreasing_series(n_max: int) -> list[int]:
    """Coefficients c_0..c_n_max of (x + x^2) / (1 - 2x - x^3).

    Clearing the denominator gives c_n = 2 c_(n-1) + c_(n-3) plus numerator
    taps at n = 1 and n = 2; c_n is the non-increasing count for n >= 1.
    """
    if not isinstance(n_max, int) or n_max < 0:
        raise InputError(f"n_max must be a nonnegative integer, got {n_max!r}")
    coeffs = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        c = 2 * coeffs[n - 1]
        if n >= 3:
            c += coeffs[n - 3]
        if n in (1, 2):
            c += 1
        coeffs[n] = c
    return coeffs


@dataclass(frozen=True, slots=True)
class CubicRoots:
    """Roots of x^3 + 2x - 1: one real root r and a conjugate pair."""

    r: float
    alpha: float
    beta: float

    @property
    def conjugate_pair(self) -> tuple[complex, complex]:
        z = complex(self.alpha, self.beta)
        return z, z.conjugate()


def _cubic(x: float) -> float:
    return x * x * x + 2 * x - 1


@functools.cache
def cubic_roots() -> CubicRoots:
    """Locate the roots of x^3 + 2x - 1 deterministically.

    The real root lies in (0, 1) since the cubic is increasing with values
    -1 and 2 at the ends; bisection pins it down and two Newton steps polish
    to machine precision.  The conjugate pair comes from deflating to the
    quadratic x^2 + r x + 1/r whose roots they are, never from a general
    complex solver.
    """
    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = (lo + hi) / 2
        if _cubic(mid) <= 0:
            lo = mid
        else:
            hi = mid
    r = (lo + hi) / 2
    for _ in range(3):
        r -= _cubic(r) / (3 * r * r + 2)
    alpha = -r / 2
    beta = math.sqrt(4 / r - r * r) / 2
    return CubicRoots(r=r, alpha=alpha, beta=beta)


def count_nonincreasing_numeric(n: int, *, max_n: int = NONINC_NUMERIC_CEILING) -> float:
    """Non-increasing count from the three-term root expansion, in floats.

    This path exists to validate the closed form itself; past ``max_n`` the
    1/r power outgrows float precision and the call is refused in favor of
    :func:`nonincreasing_series`.  The two conjugate terms must cancel to a
    tiny imaginary residue, which is checked.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    if n > max_n:
        raise GuardError(
            f"numeric evaluation at n={n} exceeds the float-precision ceiling "
            f"({max_n}); use nonincreasing_series for exact values"
        )
    roots = cubic_roots()
    r = roots.r
    z, zbar = roots.conjugate_pair
    delta1 = (r**3 + r**2) / (2 * r**3 + 1)
    a, b = roots.alpha, roots.beta
    num = complex(a * a - b * b + a, b * (2 * a + 1))
    den = complex(-2 * b * b, 2 * (a - r) * b)
    delta2 = num / den
    delta3 = num.conjugate() / den.conjugate()
    value = (
        delta1 * (1 / r) ** (n + 1)
        + delta2 * (1 / z) ** (n + 1)
        + delta3 * (1 / zbar) ** (n + 1)
    )
    if abs(value.imag) >= 1e-8:
        raise ArithmeticError(
            f"conjugate terms failed to cancel at n={n}: imaginary residue "
            f"{value.imag!r}"
        )
    return value.real
