"""Deterministic simulation of parking rules on a one-way street.

A street has spots 1..n and cars 1..n arrive in order, car ``i`` carrying a
preferred spot ``prefs[i-1]``.  Two rules are implemented:

* classical: a car takes the first free spot at or past its preference and
  fails if every spot from there to ``n`` is taken;
* vacillating with offset ``k``: a car takes its preferred spot ``p`` if
  free, otherwise backs up to ``p - k`` (if that spot exists and is free),
  otherwise drives on to ``p + k`` (same proviso), otherwise fails.

Spots and cars are 1-indexed everywhere.  All functions are pure and safe
for concurrent use.
"""

from dataclasses import dataclass
from typing import Literal, NamedTuple, Sequence

from .errors import InputError

__all__ = [
    "CLASSICAL",
    "LastSpot",
    "Outcome",
    "Rule",
    "is_parking_function",
    "last_spot_occupant",
    "simulate",
    "vacillating",
]


@dataclass(frozen=True, slots=True)
class Rule:
    """A parking rule: ``classical`` or ``vacillating`` with offset ``k``.

    The offset must satisfy ``1 <= k <= n``; the upper bound is checked at
    simulation time once the street length is known.
    """

    kind: Literal["classical", "vacillating"]
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "classical":
            if self.k is not None:
                raise InputError("the classical rule takes no offset")
        elif self.kind == "vacillating":
            if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
                raise InputError(f"offset k must be a positive integer, got {self.k!r}")
        else:
            raise InputError(f"unknown rule kind {self.kind!r}")

    def validate_for(self, n: int) -> None:
        """Reject offsets larger than the street length."""
        if self.kind == "vacillating" and self.k is not None and self.k > n:
            raise InputError(f"offset k={self.k} exceeds street length n={n}")

    def __str__(self) -> str:
        if self.kind == "classical":
            return "classical"
        return f"vacillating(k={self.k})"


CLASSICAL = Rule("classical")


def vacillating(k: int) -> Rule:
    """Rule under which a car tries spots ``p``, ``p - k``, ``p + k``."""
    return Rule("vacillating", k)


@dataclass(frozen=True, slots=True)
class Outcome:
    """Result of running a rule over one preference list.

    ``spots[i-1]`` is the spot taken by car ``i``.  On success the tuple
    covers all n cars and is a permutation of 1..n; on failure it covers
    exactly the cars before ``failing_car``, the first car unable to park.
    """

    spots: tuple[int, ...]
    failing_car: int | None = None

    @property
    def success(self) -> bool:
        return self.failing_car is None

    def assignment(self) -> dict[int, int]:
        """The (partial) car -> spot map as a plain dict."""
        return {car: spot for car, spot in enumerate(self.spots, start=1)}


class LastSpot(NamedTuple):
    """Which car ended up in spot ``n``, and what it had asked for."""

    car: int
    pref: int


def _checked_prefs(prefs: Sequence[int]) -> tuple[int, ...]:
    prefs = tuple(prefs)
    n = len(prefs)
    if n == 0:
        raise InputError("preference list must contain at least one car")
    for car, p in enumerate(prefs, start=1):
        if not isinstance(p, int) or isinstance(p, bool) or not 1 <= p <= n:
            raise InputError(
                f"car {car} prefers {p!r}, outside the street 1..{n}"
            )
    return prefs


def simulate(prefs: Sequence[int], rule: Rule) -> Outcome:
    """Park the cars of ``prefs`` one by one under ``rule``.

    Returns an :class:`Outcome`; a stranded car is reported there, not
    raised.  Raises :class:`InputError` for malformed preferences or an
    offset outside ``1..n``.
    """
    prefs = _checked_prefs(prefs)
    n = len(prefs)
    rule.validate_for(n)

    taken = 0  # occupancy bitmask, spot s = bit s-1
    spots: list[int] = []
    if rule.kind == "classical":
        full = (1 << n) - 1
        for car, p in enumerate(prefs, start=1):
            free = full & ~taken
            ahead = free >> (p - 1)
            if not ahead:
                return Outcome(tuple(spots), failing_car=car)
            s = p + ((ahead & -ahead).bit_length() - 1)
            taken |= 1 << (s - 1)
            spots.append(s)
    else:
        k = rule.k
        assert k is not None
        for car, p in enumerate(prefs, start=1):
            bit = 1 << (p - 1)
            if not taken & bit:
                s = p
            elif p - k >= 1 and not taken & (bit >> k):
                s = p - k
            elif p + k <= n and not taken & (bit << k):
                s = p + k
            else:
                return Outcome(tuple(spots), failing_car=car)
            taken |= 1 << (s - 1)
            spots.append(s)
    return Outcome(tuple(spots))


def is_parking_function(prefs: Sequence[int], rule: Rule) -> bool:
    """True iff every car parks under ``rule``."""
    return simulate(prefs, rule).success


def last_spot_occupant(prefs: Sequence[int], rule: Rule) -> LastSpot:
    """Identify the car holding spot ``n`` after a successful run.

    Under the vacillating rule the occupant's preference is always ``n``
    or ``n - k``: spot ``n`` is reachable only directly or by a forward
    step of ``k``.  Raises :class:`InputError` if the list does not park.
    """
    outcome = simulate(prefs, rule)
    if not outcome.success:
        raise InputError(
            f"car {outcome.failing_car} cannot park; statistics are defined "
            "only for lists where every car parks"
        )
    car = outcome.spots.index(len(outcome.spots)) + 1
    return LastSpot(car=car, pref=prefs[car - 1])
