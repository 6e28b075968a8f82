"""Partition counts of ``[1, 2n-1]`` (target 2n) and ``[1, 2n]`` (target 2n+1).

For each index ``i`` the partition looks at whether ``i`` and its partner
``target - i`` are figurate:

    even target 2n:  l  = #{i figurate}
                     l1 = #{i not figurate, 2n - i figurate}
                     l2 = #{i figurate,     2n - i figurate}
    odd target 2n+1: m, m1, m2 defined the same way on [1, 2n].
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, asdict
from typing import Dict, Iterable, List, Union

import numpy as np

from .exceptions import FigurateRangeError
from .membership import FigurateSet


@dataclass(frozen=True)
class EvenCensus:
    n: int
    l: int  # noqa: E741
    l1: int
    l2: int

    @property
    def target(self) -> int:
        return 2 * self.n

    @property
    def size(self) -> int:
        return 2 * self.n - 1

    @property
    def a2(self) -> int:
        return self.size - self.l

    @property
    def a4(self) -> int:
        return self.size - self.l - self.l1

    @property
    def a6(self) -> int:
        return self.l - self.l2

    def as_row(self) -> tuple:
        return (self.target, "even", self.l, self.l1, self.l2)


@dataclass(frozen=True)
class OddCensus:
    n: int
    m: int
    m1: int
    m2: int

    @property
    def target(self) -> int:
        return 2 * self.n + 1

    @property
    def size(self) -> int:
        return 2 * self.n

    @property
    def b2(self) -> int:
        return self.size - self.m

    @property
    def b4(self) -> int:
        return self.size - self.m - self.m1

    @property
    def b6(self) -> int:
        return self.m - self.m2

    def as_row(self) -> tuple:
        return (self.target, "odd", self.m, self.m1, self.m2)


Census = Union[EvenCensus, OddCensus]


def _pair_flags(fset: FigurateSet, target: int):
    d = fset.flags[1:target]
    return d, d[::-1]


def census_even(fset: FigurateSet, n: int) -> EvenCensus:
    if n < 3:
        raise FigurateRangeError(f"even census needs n >= 3, got {n}")
    if 2 * n - 1 > fset.max_n:
        raise FigurateRangeError(f"target {2 * n} needs max_n >= {2 * n - 1}")
    d, r = _pair_flags(fset, 2 * n)
    return EvenCensus(
        n=n,
        l=int(np.count_nonzero(d)),
        l1=int(np.count_nonzero(~d & r)),
        l2=int(np.count_nonzero(d & r)),
    )


def census_odd(fset: FigurateSet, n: int) -> OddCensus:
    if n < 1:
        raise FigurateRangeError(f"odd census needs n >= 1, got {n}")
    if 2 * n > fset.max_n:
        raise FigurateRangeError(f"target {2 * n + 1} needs max_n >= {2 * n}")
    d, r = _pair_flags(fset, 2 * n + 1)
    return OddCensus(
        n=n,
        m=int(np.count_nonzero(d)),
        m1=int(np.count_nonzero(~d & r)),
        m2=int(np.count_nonzero(d & r)),
    )


def census(fset: FigurateSet, n: int, parity: str) -> Census:
    if parity == "even":
        return census_even(fset, n)
    if parity == "odd":
        return census_odd(fset, n)
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def census_sets(fset: FigurateSet, n: int, parity: str) -> Dict[str, List[int]]:
    """The six index sets themselves; debug aid for small targets."""
    census(fset, n, parity)  # range checks
    target = 2 * n if parity == "even" else 2 * n + 1
    idx = np.arange(1, target)
    d, r = _pair_flags(fset, target)
    prefix = "A" if parity == "even" else "B"
    masks = [d, ~d, ~d & r, ~d & ~r, d & r, d & ~r]
    return {f"{prefix}{k + 1}": idx[mask].tolist() for k, mask in enumerate(masks)}


CSV_HEADER = ("target", "parity", "l_or_m", "l1_or_m1", "l2_or_m2")


def census_csv(rows: Iterable[Census]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for c in rows:
        w.writerow(c.as_row())
    return buf.getvalue()


def census_dict(c: Census) -> dict:
    out = {"target": c.target, "parity": "even" if isinstance(c, EvenCensus) else "odd"}
    out.update(asdict(c))
    return out
