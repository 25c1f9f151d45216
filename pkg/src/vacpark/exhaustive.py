"""Exhaustive scans over preference lists.

Counts and streams the preference lists in [n]^n that park under a rule,
optionally restricted to non-decreasing or non-increasing lists.  The scan
is a depth-first walk over prefixes that abandons a branch as soon as a car
is stranded (a stranded car strands every extension, so pruning is exact),
and monotone filters are applied generatively, shrinking the search space
from n^n to C(2n-1, n).

Work can be split across processes by fixing a prefix of the tuple; the
sub-cubes are scanned independently and merged in prefix order, so counts
and stream order never depend on the worker count.
"""

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .errors import GuardError, InputError
from .rules import Rule, is_parking_function

__all__ = [
    "FULL_SCAN_CEILING",
    "INVARIANT_SCAN_CEILING",
    "MONOTONE_SCAN_CEILING",
    "WORKERS_ENV",
    "Filter",
    "LastSpotTally",
    "count_brute",
    "default_workers",
    "parking_functions",
    "permutation_invariant_members",
    "tally_last_spot",
]

WORKERS_ENV = "VACPARK_WORKERS"

# Default refusal ceilings; every entry point takes a max_n override.
FULL_SCAN_CEILING = 9        # cost grows like n^n
MONOTONE_SCAN_CEILING = 12   # cost grows like C(2n-1, n)
INVARIANT_SCAN_CEILING = 6   # cost grows like C(2n-1, n) * n!


class Filter(str, Enum):
    """Which preference lists a scan considers."""

    ALL = "all"
    NONDECREASING = "nondecreasing"
    NONINCREASING = "nonincreasing"


_ALL, _NONDEC, _NONINC = 0, 1, 2
_FILTER_CODE = {Filter.ALL: _ALL, Filter.NONDECREASING: _NONDEC, Filter.NONINCREASING: _NONINC}


def _coerce_filter(flt: Filter | str) -> Filter:
    try:
        return Filter(flt)
    except ValueError:
        valid = ", ".join(f.value for f in Filter)
        raise InputError(f"unknown filter {flt!r}; expected one of: {valid}") from None


def default_workers() -> int:
    """Worker count from ``VACPARK_WORKERS``, else the logical CPU count."""
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        workers = int(raw)
    except ValueError:
        workers = 0
    if workers < 1:
        raise InputError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return workers


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        return default_workers()
    if not isinstance(workers, int) or workers < 1:
        raise InputError(f"workers must be a positive integer, got {workers!r}")
    return workers


def _check_scan_args(n: int, rule: Rule, flt: Filter, max_n: int | None) -> None:
    if not isinstance(n, int) or n < 0:
        raise InputError(f"street length n must be a nonnegative integer, got {n!r}")
    if n >= 1:
        rule.validate_for(n)
    ceiling = max_n if max_n is not None else (
        FULL_SCAN_CEILING if flt is Filter.ALL else MONOTONE_SCAN_CEILING
    )
    if n > ceiling:
        space = f"{n}^{n}" if flt is Filter.ALL else f"C({2 * n - 1}, {n})"
        raise GuardError(
            f"scan of n={n} refused: {space} lists exceeds the ceiling of "
            f"n={ceiling}; pass max_n={n} to run it anyway"
        )


# ---------------------------------------------------------------------------
# Core depth-first scans.  depth counts cars still to park; (lo, hi) is the
# preference range permitted by the filter at the current position.

def _count_vac(n: int, k: int, flt: int, depth: int, taken: int, lo: int, hi: int) -> int:
    count = 0
    for p in range(lo, hi + 1):
        bit = 1 << (p - 1)
        if not taken & bit:
            s = bit
        elif p > k and not taken & (bit >> k):
            s = bit >> k
        elif p + k <= n and not taken & (bit << k):
            s = bit << k
        else:
            continue
        if depth == 1:
            count += 1
        elif flt == _ALL:
            count += _count_vac(n, k, flt, depth - 1, taken | s, 1, n)
        elif flt == _NONDEC:
            count += _count_vac(n, k, flt, depth - 1, taken | s, p, n)
        else:
            count += _count_vac(n, k, flt, depth - 1, taken | s, 1, p)
    return count


def _count_classical(n: int, full: int, flt: int, depth: int, taken: int, lo: int, hi: int) -> int:
    count = 0
    free = full & ~taken
    for p in range(lo, hi + 1):
        ahead = free >> (p - 1)
        if not ahead:
            continue
        s = (ahead & -ahead) << (p - 1)
        if depth == 1:
            count += 1
        elif flt == _ALL:
            count += _count_classical(n, full, flt, depth - 1, taken | s, 1, n)
        elif flt == _NONDEC:
            count += _count_classical(n, full, flt, depth - 1, taken | s, p, n)
        else:
            count += _count_classical(n, full, flt, depth - 1, taken | s, 1, p)
    return count


def _park_bit(n: int, rule: Rule, taken: int, p: int) -> int:
    """Bit of the spot car would take, or 0 if it is stranded."""
    if rule.kind == "classical":
        ahead = (((1 << n) - 1) & ~taken) >> (p - 1)
        return (ahead & -ahead) << (p - 1) if ahead else 0
    k = rule.k
    assert k is not None
    bit = 1 << (p - 1)
    if not taken & bit:
        return bit
    if p > k and not taken & (bit >> k):
        return bit >> k
    if p + k <= n and not taken & (bit << k):
        return bit << k
    return 0


def _seed_prefix(n: int, rule: Rule, prefix: Sequence[int]) -> int | None:
    """Occupancy after parking the prefix cars, or None if one is stranded."""
    taken = 0
    for p in prefix:
        s = _park_bit(n, rule, taken, p)
        if not s:
            return None
        taken |= s
    return taken


def _child_bounds(fcode: int, n: int, prefix: Sequence[int]) -> tuple[int, int]:
    if not prefix or fcode == _ALL:
        return 1, n
    return (prefix[-1], n) if fcode == _NONDEC else (1, prefix[-1])


def _count_suffixes(n: int, rule: Rule, fcode: int, prefix: Sequence[int]) -> int:
    taken = _seed_prefix(n, rule, prefix)
    if taken is None:
        return 0
    depth = n - len(prefix)
    if depth == 0:
        return 1
    lo, hi = _child_bounds(fcode, n, prefix)
    if rule.kind == "classical":
        return _count_classical(n, (1 << n) - 1, fcode, depth, taken, lo, hi)
    return _count_vac(n, rule.k, fcode, depth, taken, lo, hi)


def _list_suffixes(n: int, rule: Rule, fcode: int, prefix: tuple[int, ...]) -> list[tuple[int, ...]]:
    taken = _seed_prefix(n, rule, prefix)
    if taken is None:
        return []
    out: list[tuple[int, ...]] = []
    stack = list(prefix)

    def walk(depth: int, taken: int, lo: int, hi: int) -> None:
        for p in range(lo, hi + 1):
            s = _park_bit(n, rule, taken, p)
            if not s:
                continue
            stack.append(p)
            if depth == 1:
                out.append(tuple(stack))
            else:
                nlo, nhi = (1, n) if fcode == _ALL else ((p, n) if fcode == _NONDEC else (1, p))
                walk(depth - 1, taken | s, nlo, nhi)
            stack.pop()

    depth = n - len(prefix)
    if depth == 0:
        out.append(tuple(prefix))
    else:
        lo, hi = _child_bounds(fcode, n, prefix)
        walk(depth, taken, lo, hi)
    return out


def _tally_suffixes(
    n: int, prefix: tuple[int, ...]
) -> tuple[dict[int, int], dict[int, int]]:
    """Per-car (direct, forward) counts of lists putting that car in spot n.

    Offset fixed at 1: "direct" means the occupant preferred spot n,
    "forward" means it preferred spot n-1 and stepped up.
    """
    rule = Rule("vacillating", 1)
    direct = {i: 0 for i in range(1, n + 1)}
    forward = {i: 0 for i in range(1, n + 1)}
    last_bit = 1 << (n - 1)

    taken = 0
    car_n, pref_n = 0, 0
    for car, p in enumerate(prefix, start=1):
        s = _park_bit(n, rule, taken, p)
        if not s:
            return direct, forward
        if s == last_bit:
            car_n, pref_n = car, p
        taken |= s

    def walk(car: int, taken: int, car_n: int, pref_n: int) -> None:
        if car > n:
            if pref_n == n:
                direct[car_n] += 1
            else:
                forward[car_n] += 1
            return
        for p in range(1, n + 1):
            s = _park_bit(n, rule, taken, p)
            if not s:
                continue
            if s == last_bit:
                walk(car + 1, taken | s, car, p)
            else:
                walk(car + 1, taken | s, car_n, pref_n)

    walk(len(prefix) + 1, taken, car_n, pref_n)
    return direct, forward


# ---------------------------------------------------------------------------
# Prefix partitioning for multi-process scans.

def _prefix_depth(n: int, workers: int) -> int:
    if workers <= 1 or n <= 1:
        return 0
    target = workers * 64
    depth = 1
    while n**depth < target and depth < n:
        depth += 1
    return depth


def _prefixes(n: int, fcode: int, depth: int) -> list[tuple[int, ...]]:
    if fcode == _ALL:
        return list(itertools.product(range(1, n + 1), repeat=depth))
    chains: list[tuple[int, ...]] = [()]
    for _ in range(depth):
        step = []
        for c in chains:
            lo, hi = _child_bounds(fcode, n, c)
            step.extend(c + (p,) for p in range(lo, hi + 1))
        chains = step
    return chains


def _count_job(args: tuple[int, Rule, int, tuple[int, ...]]) -> int:
    return _count_suffixes(*args)


def _list_job(args: tuple[int, Rule, int, tuple[int, ...]]) -> list[tuple[int, ...]]:
    return _list_suffixes(*args)


def _tally_job(args: tuple[int, tuple[int, ...]]) -> tuple[dict[int, int], dict[int, int]]:
    return _tally_suffixes(*args)


def _use_pool(workers: int, n: int, flt: Filter) -> bool:
    # Pool startup only pays off once the sub-cubes carry real work.
    return workers > 1 and ((flt is Filter.ALL and n >= 6) or n >= 10)


# ---------------------------------------------------------------------------
# Public operations.

def count_brute(
    n: int,
    rule: Rule,
    flt: Filter | str = Filter.ALL,
    *,
    max_n: int | None = None,
    workers: int | None = None,
) -> int:
    """Exact number of lists in [n]^n passing ``flt`` that park under ``rule``.

    Derived purely by simulating the rule, so it serves as the independent
    check on every formula-based counter.  ``n = 0`` counts the empty list.
    Refuses n above the filter's ceiling unless ``max_n`` raises it.
    """
    flt = _coerce_filter(flt)
    _check_scan_args(n, rule, flt, max_n)
    if n == 0:
        return 1
    workers = _resolve_workers(workers)
    fcode = _FILTER_CODE[flt]
    if not _use_pool(workers, n, flt):
        return _count_suffixes(n, rule, fcode, ())
    depth = _prefix_depth(n, workers)
    jobs = [(n, rule, fcode, pre) for pre in _prefixes(n, fcode, depth)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(jobs) // (workers * 8))
        return sum(pool.map(_count_job, jobs, chunksize=chunk))


def parking_functions(
    n: int,
    rule: Rule,
    flt: Filter | str = Filter.ALL,
    *,
    limit: int | None = None,
    max_n: int | None = None,
    workers: int | None = 1,
) -> Iterator[tuple[int, ...]]:
    """Stream the passing lists in strict lexicographic order.

    Without ``limit`` the stream has exactly ``count_brute(n, rule, flt)``
    items.  ``workers`` defaults to 1 here since callers usually consume
    lazily; with more workers the sub-cube results are merged in prefix
    order, so the stream is identical.
    """
    flt = _coerce_filter(flt)
    _check_scan_args(n, rule, flt, max_n)
    if limit is not None and (not isinstance(limit, int) or limit < 0):
        raise InputError(f"limit must be a nonnegative integer, got {limit!r}")
    workers = _resolve_workers(workers)
    return _stream(n, rule, _FILTER_CODE[flt], flt, limit, workers)


def _stream(
    n: int, rule: Rule, fcode: int, flt: Filter, limit: int | None, workers: int
) -> Iterator[tuple[int, ...]]:
    if limit == 0:
        return
    if n == 0:
        yield ()
        return
    emitted = 0
    if not _use_pool(workers, n, flt):
        for item in _list_suffixes(n, rule, fcode, ()):
            yield item
            emitted += 1
            if limit is not None and emitted >= limit:
                return
        return
    depth = _prefix_depth(n, workers)
    jobs = [(n, rule, fcode, pre) for pre in _prefixes(n, fcode, depth)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        try:
            for block in pool.map(_list_job, jobs):
                for item in block:
                    yield item
                    emitted += 1
                    if limit is not None and emitted >= limit:
                        return
        finally:
            pool.shutdown(wait=False, cancel_futures=True)


@dataclass(frozen=True)
class LastSpotTally:
    """How often each car ends up in the last spot, split by how it got there.

    ``by_car[i]`` counts the length-n lists that park (offset-1 vacillating
    rule) with car ``i`` in spot n; ``direct[i]`` are those where car ``i``
    preferred spot n, ``forward[i]`` those where it preferred spot n-1 and
    stepped forward.  ``by_car[i] == direct[i] + forward[i]`` and the
    ``by_car`` values sum to the total count.
    """

    n: int
    by_car: dict[int, int]
    direct: dict[int, int]
    forward: dict[int, int]

    def total(self) -> int:
        return sum(self.by_car.values())


def tally_last_spot(
    n: int, *, max_n: int | None = None, workers: int | None = None
) -> LastSpotTally:
    """Tally last-spot occupancy over every parking list, by simulation."""
    if not isinstance(n, int) or n < 1:
        raise InputError(f"tally needs a street length n >= 1, got {n!r}")
    _check_scan_args(n, Rule("vacillating", 1), Filter.ALL, max_n)
    workers = _resolve_workers(workers)
    if not _use_pool(workers, n, Filter.ALL):
        direct, forward = _tally_suffixes(n, ())
    else:
        depth = _prefix_depth(n, workers)
        jobs = [(n, pre) for pre in _prefixes(n, _ALL, depth)]
        direct = {i: 0 for i in range(1, n + 1)}
        forward = {i: 0 for i in range(1, n + 1)}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(jobs) // (workers * 8))
            for d, f in pool.map(_tally_job, jobs, chunksize=chunk):
                for i in range(1, n + 1):
                    direct[i] += d[i]
                    forward[i] += f[i]
    by_car = {i: direct[i] + forward[i] for i in range(1, n + 1)}
    return LastSpotTally(n=n, by_car=by_car, direct=direct, forward=forward)


def permutation_invariant_members(
    n: int, k: int, *, max_n: int | None = None
) -> list[tuple[int, ...]]:
    """Lists that park under the offset-k rule in *every* rearrangement.

    Classical parking functions are closed under rearrangement; vacillating
    ones are not, so this scan gathers the closed subset.  Membership is
    decided per multiset (all orderings share one), and the literal
    every-rearrangement test is applied for all k.  Members are returned in
    lexicographic order.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"scan needs a street length n >= 1, got {n!r}")
    ceiling = max_n if max_n is not None else INVARIANT_SCAN_CEILING
    if n > ceiling:
        raise GuardError(
            f"invariance scan of n={n} refused: up to C({2 * n - 1}, {n}) * {n}! "
            f"simulations exceeds the ceiling of n={ceiling}; pass max_n={n} "
            "to run it anyway"
        )
    rule = Rule("vacillating", k)
    rule.validate_for(n)
    members: list[tuple[int, ...]] = []
    for rep in itertools.combinations_with_replacement(range(1, n + 1), n):
        orderings = set(itertools.permutations(rep))
        if all(is_parking_function(p, rule) for p in orderings):
            members.extend(orderings)
    members.sort()
    return members
