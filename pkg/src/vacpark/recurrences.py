"""Exact counting of vacillating parking lists via coupled recurrences.

Counting the offset-1 lists splits over which car ends up in the last spot
and whether it asked for that spot ("direct") or for the one before it and
stepped forward ("forward").  Those two per-car families satisfy recurrences
in terms of shorter streets, with a small hand-checked base table for
lengths 1 and 2; summing over cars gives the total.  The offset-k count then
follows from the k=1 totals of the per-residue classes times an exact
interleaving multinomial.

Values are built bottom-up into a :class:`CountTable`.  Each new length
only needs range sums over earlier rows, which are served from cached
prefix sums, so length n costs O(n) big-integer operations per entry and
the table stays polynomial overall.  All arithmetic is on Python ints, so
counts never overflow or round.
"""

import math
import os
import threading
from pathlib import Path

from .errors import GuardError, InputError

__all__ = [
    "DEFAULT_TABLE_CEILING",
    "CountTable",
    "count_k_vacillating",
    "count_last_spot_car",
    "count_last_spot_direct",
    "count_last_spot_forward",
    "count_nondecreasing",
    "count_nonincreasing",
    "count_vacillating",
    "interleaving_count",
    "load_table",
    "save_table",
]

DEFAULT_TABLE_CEILING = 512

# Base rows, index 0 padded: direct/forward counts for streets of length 1, 2.
_SEED_DIRECT = {1: [0, 1], 2: [0, 2, 1]}
_SEED_FORWARD = {1: [0, 0], 2: [0, 0, 1]}


def _range_sum(prefix_rows: list[list[int]], m: int, a: int, b: int) -> int:
    """Sum of weighted entries at street length m over positions a..b.

    Positions are clamped to 1..m; an empty or out-of-range window is 0,
    matching the convention that families at nonexistent lengths or
    positions contribute nothing.
    """
    if m < 1 or m >= len(prefix_rows):
        return 0
    row = prefix_rows[m]
    a, b = max(a, 1), min(b, m)
    if a > b:
        return 0
    return row[b] - row[a - 1]


class CountTable:
    """Grow-on-demand memo for the last-spot counting families.

    Immutable once a length is built; growth is serialized by an internal
    lock, so a shared table may be read from many threads.  Growth past
    ``max_len`` raises :class:`GuardError` (the recurrences have no known
    closed form, so runaway requests are refused rather than left to churn).
    """

    def __init__(self, max_len: int = DEFAULT_TABLE_CEILING):
        if not isinstance(max_len, int) or max_len < 2:
            raise InputError(f"max_len must be an integer >= 2, got {max_len!r}")
        self.max_len = max_len
        self._lock = threading.Lock()
        self._total: list[int] = [1]  # the empty street parks itself
        pad = [0]
        self._direct: list[list[int]] = [pad]
        self._forward: list[list[int]] = [pad]
        self._by_car: list[list[int]] = [pad]
        self._d0: list[list[int]] = [pad]  # prefix sums of direct
        self._d1: list[list[int]] = [pad]  # position-weighted
        self._d2: list[list[int]] = [pad]  # position^2-weighted
        self._f0: list[list[int]] = [pad]
        self._c0: list[list[int]] = [pad]
        for m in (1, 2):
            self._append(_SEED_DIRECT[m], _SEED_FORWARD[m])

    @property
    def built(self) -> int:
        """Largest street length with materialized rows."""
        return len(self._direct) - 1

    def _append(self, direct_row: list[int], forward_row: list[int]) -> None:
        m = len(direct_row) - 1
        by_car = [0] * (m + 1)
        d0 = [0] * (m + 1)
        d1 = [0] * (m + 1)
        d2 = [0] * (m + 1)
        f0 = [0] * (m + 1)
        c0 = [0] * (m + 1)
        for j in range(1, m + 1):
            d = direct_row[j]
            by_car[j] = d + forward_row[j]
            d0[j] = d0[j - 1] + d
            d1[j] = d1[j - 1] + j * d
            d2[j] = d2[j - 1] + j * j * d
            f0[j] = f0[j - 1] + forward_row[j]
            c0[j] = c0[j - 1] + by_car[j]
        self._direct.append(direct_row)
        self._forward.append(forward_row)
        self._by_car.append(by_car)
        self._d0.append(d0)
        self._d1.append(d1)
        self._d2.append(d2)
        self._f0.append(f0)
        self._c0.append(c0)
        self._total.append(c0[m])

    def _tot(self, m: int) -> int:
        return self._total[m] if m >= 0 else 0

    def _next_rows(self) -> tuple[list[int], list[int]]:
        m = self.built + 1
        t1, t2, t3 = self._tot(m - 1), self._tot(m - 2), self._tot(m - 3)
        direct_row = [0] * (m + 1)
        forward_row = [0] * (m + 1)
        for i in range(1, m + 1):
            # Occupant of the last spot asked for it: either it was the only
            # car to do so, or a later car also did (and a car wanting the
            # spot before may trail them both).
            tail = _range_sum(self._d1, m - 2, i, m - 2) + (1 - i) * _range_sum(
                self._d0, m - 2, i, m - 2
            )
            direct_row[i] = t1 + (m - i) * t2 + tail

            # Occupant asked for the spot before and stepped forward: split
            # by how many cars in total wanted that spot (one, two, three).
            pairs = (i - 1) * (i - 2) // 2
            w = pairs * t3
            w += _range_sum(self._f0, m - 1, 1, i - 1)
            w += (i - 1) * _range_sum(self._c0, m - 2, 1, i - 2)
            # sum of l(l+1)/2 weights; l(l+1) is even so the halving is exact
            w += (
                _range_sum(self._d2, m - 3, 1, i - 3)
                + _range_sum(self._d1, m - 3, 1, i - 3)
            ) // 2
            w += pairs * _range_sum(self._d0, m - 3, i - 2, m - 3)
            forward_row[i] = w
        return direct_row, forward_row

    def ensure(self, n: int) -> None:
        """Materialize all lengths up to ``n``."""
        if n <= self.built:
            return
        with self._lock:
            if n > self.max_len:
                raise GuardError(
                    f"count table growth to n={n} refused (ceiling "
                    f"{self.max_len}); build a CountTable(max_len=...) to go higher"
                )
            while self.built < n:
                self._append(*self._next_rows())

    def _check_index(self, n: int, i: int) -> None:
        if not isinstance(n, int) or not isinstance(i, int) or n < 1 or not 1 <= i <= n:
            raise InputError(f"car index must satisfy 1 <= i <= n, got n={n!r}, i={i!r}")

    def total(self, n: int) -> int:
        if not isinstance(n, int) or n < 0:
            raise InputError(f"street length must be a nonnegative integer, got {n!r}")
        self.ensure(n)
        return self._total[n]

    def direct(self, n: int, i: int) -> int:
        self._check_index(n, i)
        self.ensure(n)
        return self._direct[n][i]

    def forward(self, n: int, i: int) -> int:
        self._check_index(n, i)
        self.ensure(n)
        return self._forward[n][i]

    def by_car(self, n: int, i: int) -> int:
        self._check_index(n, i)
        self.ensure(n)
        return self._by_car[n][i]


_shared = CountTable()


def count_vacillating(n: int, table: CountTable | None = None) -> int:
    """Number of length-n lists that park under the offset-1 rule.

    ``n = 0`` counts the empty list as 1.
    """
    return (table or _shared).total(n)


def count_last_spot_car(n: int, i: int, table: CountTable | None = None) -> int:
    """...where car ``i`` ends up in the last spot."""
    return (table or _shared).by_car(n, i)


def count_last_spot_direct(n: int, i: int, table: CountTable | None = None) -> int:
    """...where car ``i`` prefers the last spot and parks there."""
    return (table or _shared).direct(n, i)


def count_last_spot_forward(n: int, i: int, table: CountTable | None = None) -> int:
    """...where car ``i`` prefers the spot before last and steps forward."""
    return (table or _shared).forward(n, i)


def count_nondecreasing(n: int) -> int:
    """Number of non-decreasing lists that park under the offset-1 rule.

    Satisfies a(n) = 2 a(n-1) + a(n-2) with a(1) = 1, a(2) = 3.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    a, b = 1, 3  # lengths 1, 2
    if n == 1:
        return a
    for _ in range(n - 2):
        a, b = b, 2 * b + a
    return b


def count_nonincreasing(n: int) -> int:
    """Number of non-increasing lists that park under the offset-1 rule.

    Satisfies a(n) = 2 a(n-1) + a(n-3) with a(1) = 1, a(2) = 3, a(3) = 6.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    vals = [1, 3, 6]
    if n <= 3:
        return vals[n - 1]
    for m in range(4, n + 1):
        vals.append(2 * vals[-1] + vals[-3])
    return vals[-1]


def interleaving_count(n: int, k: int) -> int:
    """Ways to interleave k order-preserved blocks of sizes (n+t)//k.

    The blocks are the residue classes of 1..n modulo k, so the sizes are
    floor((n+t)/k) for t = 0..k-1 and they sum to n.  Computed as a product
    of binomial coefficients; exact integer arithmetic throughout.
    """
    if not isinstance(n, int) or not isinstance(k, int) or not 1 <= k <= n:
        raise InputError(f"need 1 <= k <= n, got n={n!r}, k={k!r}")
    result, placed = 1, 0
    for t in range(k):
        size = (n + t) // k
        placed += size
        result *= math.comb(placed, size)
    return result


def count_k_vacillating(n: int, k: int, table: CountTable | None = None) -> int:
    """Number of length-n lists that park under the offset-k rule.

    The spots reachable from a preference all share its residue mod k, so a
    parking list splits into k independent offset-1 lists, one per residue
    class, interleaved in any order-preserving way:

        interleaving_count(n, k) * total(a+1)^b * total(a)^(k-b)

    with a = n // k and b = n % k.  ``n = 0`` returns 1.
    """
    if not isinstance(n, int) or n < 0:
        raise InputError(f"street length must be a nonnegative integer, got {n!r}")
    if n == 0:
        return 1
    if not isinstance(k, int) or not 1 <= k <= n:
        raise InputError(f"need 1 <= k <= n, got n={n!r}, k={k!r}")
    a, b = divmod(n, k)
    tbl = table or _shared
    return interleaving_count(n, k) * tbl.total(a + 1) ** b * tbl.total(a) ** (k - b)


# ---------------------------------------------------------------------------
# Optional on-disk persistence.  The cache is purely an optimization: every
# value is re-derivable, and a file that fails validation is ignored.

_CACHE_HEADER = "vacpark-counts 1"


def save_table(table: CountTable, path: str | Path) -> None:
    """Write the table's built rows as a versioned text file, atomically."""
    path = Path(path)
    with table._lock:
        built = table.built
        lines = [_CACHE_HEADER, f"lengths {built}"]
        for m in range(1, built + 1):
            for i in range(1, m + 1):
                lines.append(f"direct {m} {i} {table._direct[m][i]}")
                lines.append(f"forward {m} {i} {table._forward[m][i]}")
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_table(path: str | Path, max_len: int = DEFAULT_TABLE_CEILING) -> CountTable | None:
    """Rebuild a table from ``save_table`` output, or None if invalid.

    Validation is strict: header, complete coverage of both families for
    every length up to the declared maximum, nonnegative integers, and base
    rows identical to the built-in ones.  Anything else discards the file.
    """
    try:
        text = Path(path).read_text()
    except OSError:
        return None
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or lines[0] != _CACHE_HEADER:
        return None
    head = lines[1].split()
    if len(head) != 2 or head[0] != "lengths" or not head[1].isdigit():
        return None
    declared = int(head[1])
    if declared < 1:
        return None
    records: dict[tuple[str, int, int], int] = {}
    for ln in lines[2:]:
        parts = ln.split()
        if len(parts) != 4 or parts[0] not in ("direct", "forward"):
            return None
        try:
            m, i, value = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError:
            return None
        if not 1 <= i <= m <= declared or value < 0 or (parts[0], m, i) in records:
            return None
        records[(parts[0], m, i)] = value
    rows: dict[int, tuple[list[int], list[int]]] = {}
    for m in range(1, declared + 1):
        try:
            direct_row = [0] + [records[("direct", m, i)] for i in range(1, m + 1)]
            forward_row = [0] + [records[("forward", m, i)] for i in range(1, m + 1)]
        except KeyError:
            return None
        rows[m] = (direct_row, forward_row)
    for m in (1, 2):
        if m <= declared and rows[m] != (_SEED_DIRECT[m], _SEED_FORWARD[m]):
            return None
    table = CountTable(max_len=max(max_len, declared))
    for m in range(3, declared + 1):
        table._append(*rows[m])
    return table
