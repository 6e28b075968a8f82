"""Slow reference implementations, kept independent of the package code paths."""

from __future__ import annotations

import numpy as np


def brute_is_prime(k: int) -> bool:
    return k >= 2 and all(k % d for d in range(2, int(k**0.5) + 1))


def brute_prime_powers(n_max: int) -> list[int]:
    return [q for q in range(2, n_max + 1) if _single_prime_factor(q)]


def _single_prime_factor(q: int) -> bool:
    p = next((d for d in range(2, int(q**0.5) + 1) if q % d == 0), q)
    while q % p == 0:
        q //= p
    return q == 1


def figurate_oracle(n_max: int) -> set[int]:
    """All k <= n_max equal to C(q, s), q a prime power <= 2 n_max, 0 <= s <= q.

    Pascal rows with saturation at n_max + 1, so every s in [0, q] is visited
    without relying on symmetry or the multiplicative recurrence.
    """
    cap = n_max + 1
    qs = set(brute_prime_powers(2 * n_max))
    found = {1} if n_max >= 1 else set()
    row = np.array([1], dtype=np.int64)
    for q in range(1, 2 * n_max + 1):
        nxt = np.empty(q + 1, dtype=np.int64)
        nxt[0] = nxt[-1] = 1
        nxt[1:-1] = np.minimum(row[:-1] + row[1:], cap)
        row = nxt
        if q in qs:
            found.update(int(v) for v in row if v <= n_max)
    return found


def census_oracle(members: set[int], target: int) -> tuple[int, int, int]:
    """(count i figurate, count i not & partner figurate, count both) over [1, target-1]."""
    a = b = c = 0
    for i in range(1, target):
        fi, fj = i in members, (target - i) in members
        a += fi
        b += (not fi) and fj
        c += fi and fj
    return a, b, c


def representations_oracle(members: set[int], n: int) -> int:
    return sum(1 for i in range(1, n) if i in members and (n - i) in members)


def min_witness_oracle(members: set[int], n: int):
    for a in range(1, n // 2 + 1):
        if a in members and (n - a) in members:
            return a, n - a
    return None
