"""Enumeration of figurate primes, i.e. binomial coefficients C(p^r, s).

The set contains 1 (s = 0), every prime power (s = 1) and the interior
binomial coefficients of prime powers that fit under the bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, isqrt
from typing import Dict, List, Tuple

import numpy as np

# Products in the incremental recurrence must stay inside this envelope.
WIDE_INT_BITS = 128
_WIDE_INT_LIMIT = 1 << WIDE_INT_BITS


@dataclass(frozen=True)
class FigurateWitness:
    """Certificate ``value == C(p**r, s)``."""

    value: int
    p: int
    r: int
    s: int

    @property
    def q(self) -> int:
        return self.p**self.r

    def check(self) -> bool:
        return (
            self.r >= 1
            and 0 <= self.s <= self.q
            and self.value >= 1
            and is_prime(self.p)
            and comb(self.q, self.s) == self.value
        )


@dataclass(frozen=True)
class EnumerationResult:
    max_n: int
    values: Tuple[int, ...]
    witnesses: Dict[int, FigurateWitness] = field(repr=False)

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, k: object) -> bool:
        return k in self.witnesses


def prime_sieve(n_max: int) -> np.ndarray:
    """Boolean array ``is_prime`` of length ``n_max + 1`` (Eratosthenes)."""
    n_max = max(int(n_max), 0)
    flags = np.ones(n_max + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(n_max) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_up_to(n_max: int) -> np.ndarray:
    return np.flatnonzero(prime_sieve(n_max)).astype(np.int64)


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


def prime_powers_up_to(n_max: int) -> List[Tuple[int, int, int]]:
    """All ``(p, r, p**r)`` with ``p**r <= n_max``, sorted by the power."""
    out = []
    for p in primes_up_to(n_max).tolist():
        q, r = p, 1
        while q <= n_max:
            out.append((p, r, q))
            q *= p
            r += 1
    out.sort(key=lambda t: t[2])
    return out


def binomial_prefix(q: int, n_max: int) -> List[Tuple[int, int]]:
    """Pairs ``(s, C(q, s))`` for ``s = 0 .. floor(q/2)`` while the value fits.

    Uses ``C(q, s+1) = C(q, s) * (q - s) / (s + 1)``; the product is exactly
    divisible. Raises ``OverflowError`` if the product leaves the 128-bit
    envelope instead of wrapping.
    """
    if q < 1 or n_max < 1:
        raise ValueError("q and n_max must be positive")
    out = [(0, 1)]
    c = 1
    for s in range(q // 2):
        prod = c * (q - s)
        if prod >= _WIDE_INT_LIMIT:
            raise OverflowError(
                f"C({q}, {s + 1}) recurrence exceeds {WIDE_INT_BITS}-bit arithmetic"
            )
        c = prod // (s + 1)
        if c > n_max:
            break
        out.append((s + 1, c))
    return out


def enumerate_figurate_primes(n_max: int) -> EnumerationResult:
    """Every figurate prime ``<= n_max`` with its smallest ``(q, s)`` witness."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    witnesses: Dict[int, FigurateWitness] = {}
    # 1 = C(2, 0) is the lexicographically smallest witness for the value 1.
    witnesses[1] = FigurateWitness(1, 2, 1, 0)
    for p, r, q in prime_powers_up_to(n_max):
        for s, c in binomial_prefix(q, n_max):
            if c not in witnesses:
                witnesses[c] = FigurateWitness(c, p, r, s)
    values = tuple(sorted(witnesses))
    return EnumerationResult(max_n=n_max, values=values, witnesses=witnesses)


def figurate_values(n_max: int) -> np.ndarray:
    """Sorted figurate primes ``<= n_max`` as an int64 array, without witnesses.

    Same set as :func:`enumerate_figurate_primes`; prime powers are taken
    from the sieve in bulk and only powers with ``C(q, 2) <= n_max`` go
    through the binomial recurrence.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    flags = prime_sieve(n_max)
    member = flags.copy()
    member[1] = True
    # q(q-1)/2 <= n_max  =>  q <= 1 + sqrt(2 n_max)
    small_q = isqrt(2 * n_max) + 2
    for p in range(2, isqrt(n_max) + 1):
        if flags[p]:
            q = p * p
            while q <= n_max:
                member[q] = True
                q *= p
    for p, r, q in prime_powers_up_to(min(small_q, n_max)):
        for _, c in binomial_prefix(q, n_max):
            member[c] = True
    return np.flatnonzero(member).astype(np.int64)
