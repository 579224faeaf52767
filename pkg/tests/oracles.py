"""Slow, obviously-correct reference implementations used only by the tests.

None of these share code with the package.
"""
from __future__ import annotations

from functools import lru_cache


def enumerate_partitions(n: int, largest: int | None = None):
    """Yield every partition of n as a non-increasing tuple."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in enumerate_partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def count_by_largest_part(n: int, k: int) -> int:
    """Number of partitions of n with all parts <= k (walks the enumeration tree)."""
    if n == 0:
        return 1
    if k == 0:
        return 0
    return count_by_largest_part(n, k - 1) + (count_by_largest_part(n - k, k) if k <= n else 0)


def p_oracle(n: int) -> int:
    return count_by_largest_part(n, n)


def restricted_oracle(parts, n: int) -> int:
    parts = sorted(set(parts))

    def go(rem: int, i: int) -> int:
        if rem == 0:
            return 1
        if i < 0:
            return 0
        return sum(go(rem - j * parts[i], i - 1) for j in range(rem // parts[i] + 1))

    return go(n, len(parts) - 1)


def enumerate_plane_partitions(n: int):
    """Yield plane partitions of n as tuples of rows (each a non-increasing tuple)."""

    def rows(rem: int, above: tuple):
        if rem == 0:
            yield ()
            return
        for row in _rows_under(rem, above):
            for rest in rows(rem - sum(row), row):
                yield (row,) + rest

    yield from rows(n, None)


def _rows_under(total_max: int, above):
    """Non-empty non-increasing rows with sum <= total_max, dominated entrywise by ``above``."""

    def build(prefix: tuple, budget: int):
        if prefix:
            yield prefix
        i = len(prefix)
        if above is not None and i >= len(above):
            return
        cap = prefix[-1] if prefix else budget
        if above is not None:
            cap = min(cap, above[i])
        for v in range(min(cap, budget), 0, -1):
            yield from build(prefix + (v,), budget - v)

    yield from build((), total_max)


def pp_oracle(n: int) -> int:
    return sum(1 for _ in enumerate_plane_partitions(n))


@lru_cache(maxsize=None)
def _mary_count(n: int, m: int, top: int) -> int:
    # partitions of n into powers m^0..m^top
    if top == 0:
        return 1
    power = m ** top
    return sum(_mary_count(n - j * power, m, top - 1) for j in range(n // power + 1))


def mary_oracle(m: int, n: int) -> int:
    top = 0
    while m ** (top + 1) <= n:
        top += 1
    return _mary_count(n, m, top)


def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def max_product_oracle(n: int) -> int:
    return max(_prod(p_oracle(k) for k in lam) for lam in enumerate_partitions(n))


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out
