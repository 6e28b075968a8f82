"""Two-sum verification: every n >= 2 as a + b with a, b figurate primes."""

from __future__ import annotations

import csv
import io
import json
import time
from bisect import bisect_right
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .exceptions import FigurateRangeError
from .membership import FigurateSet

DEFAULT_CHUNK = 1 << 20


@dataclass(frozen=True)
class DecompositionRecord:
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.a + self.b != self.n or self.a > self.b or self.a < 1:
            raise ValueError(f"not a decomposition: {self.n} != {self.a} + {self.b}")


@dataclass
class ChunkResult:
    lo: int
    hi: int
    min_a: np.ndarray  # 0 where no decomposition exists
    exceptions: List[int]


@dataclass
class VerificationReport:
    lo: int
    hi: int
    checked: int
    exceptions: List[int]
    min_witness_histogram: Dict[int, int]
    seconds: float = 0.0
    traces: Dict[int, List[Tuple[int, int, bool]]] = field(default_factory=dict, repr=False)
    min_a: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return not self.exceptions

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "lo": self.lo,
            "hi": self.hi,
            "checked": self.checked,
            "exceptions": list(self.exceptions),
            "min_witness_histogram": {str(a): c for a, c in sorted(self.min_witness_histogram.items())},
        }
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing=timing), indent=2) + "\n"

    def witnesses(self) -> Iterator[DecompositionRecord]:
        if self.min_a is None:
            return
        for offset, a in enumerate(self.min_a.tolist()):
            if a:
                n = self.lo + offset
                yield DecompositionRecord(n, a, n - a)

    def witness_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "a", "b"])
        for rec in self.witnesses():
            w.writerow([rec.n, rec.a, rec.b])
        return buf.getvalue()


def _check_target(fset: FigurateSet, n: int) -> None:
    if not 2 <= n <= fset.max_n:
        raise FigurateRangeError(f"target {n} outside [2, {fset.max_n}]")


def witness_for(fset: FigurateSet, n: int) -> Optional[DecompositionRecord]:
    """Decomposition of ``n`` with the smallest figurate ``a``, or None."""
    _check_target(fset, n)
    values = fset.values
    stop = bisect_right(values, n // 2)
    flags = fset.flags
    for a in values[:stop].tolist():
        if flags[n - a]:
            return DecompositionRecord(n, a, n - a)
    return None


def witness_trace(fset: FigurateSet, n: int) -> List[Tuple[int, int, bool]]:
    """Every ``(a, n - a, is_figurate(n - a))`` the minimal-witness scan visits."""
    _check_target(fset, n)
    stop = bisect_right(fset.values, n // 2)
    return [(a, n - a, bool(fset.flags[n - a])) for a in fset.values[:stop].tolist()]


def count_representations(fset: FigurateSet, n: int) -> int:
    """Ordered count of ``i`` in ``[1, n-1]`` with both ``i`` and ``n - i`` figurate."""
    _check_target(fset, n)
    d = fset.flags[1:n]
    return int(np.count_nonzero(d & d[::-1]))


def _scan_chunk(fset: FigurateSet, lo: int, hi: int) -> ChunkResult:
    flags = fset.flags
    pending = np.arange(lo, hi + 1, dtype=np.int64)
    min_a = np.zeros(pending.size, dtype=np.int64)
    exceptions: List[int] = []
    for a in fset.values.tolist():
        if pending.size == 0:
            break
        # targets with n < 2a have exhausted every candidate a <= n/2
        done = pending < 2 * a
        if done.any():
            exceptions.extend(pending[done].tolist())
            pending = pending[~done]
        hit = flags[pending - a]
        min_a[pending[hit] - lo] = a
        pending = pending[~hit]
    exceptions.extend(pending.tolist())
    exceptions.sort()
    return ChunkResult(lo, hi, min_a, exceptions)


_WORKER_SET: Optional[FigurateSet] = None


def _init_worker(fset: FigurateSet) -> None:
    global _WORKER_SET
    _WORKER_SET = fset


def _worker_chunk(bounds: Tuple[int, int]) -> ChunkResult:
    return _scan_chunk(_WORKER_SET, *bounds)


def _chunks(lo: int, hi: int, size: int) -> List[Tuple[int, int]]:
    return [(s, min(s + size - 1, hi)) for s in range(lo, hi + 1, size)]


def verify_range(
    fset: FigurateSet,
    lo: int,
    hi: int,
    jobs: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    keep_witnesses: bool = False,
) -> VerificationReport:
    """Check every target in ``[lo, hi]``.

    Chunks are merged in range order, so the report does not depend on
    ``jobs``. A failing worker propagates its exception.
    """
    if not 2 <= lo <= hi <= fset.max_n:
        raise FigurateRangeError(f"need 2 <= lo <= hi <= {fset.max_n}, got [{lo}, {hi}]")
    if jobs < 1 or chunk_size < 1:
        raise ValueError("jobs and chunk_size must be >= 1")
    start = time.perf_counter()
    bounds = _chunks(lo, hi, chunk_size)
    if jobs == 1 or len(bounds) == 1:
        results = [_scan_chunk(fset, a, b) for a, b in bounds]
    else:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker, initargs=(fset,)
        ) as pool:
            results = list(pool.map(_worker_chunk, bounds))

    hist: Counter = Counter()
    exceptions: List[int] = []
    for res in results:
        a_vals, counts = np.unique(res.min_a[res.min_a > 0], return_counts=True)
        hist.update(dict(zip(a_vals.tolist(), counts.tolist())))
        exceptions.extend(res.exceptions)
    report = VerificationReport(
        lo=lo,
        hi=hi,
        checked=hi - lo + 1,
        exceptions=exceptions,
        min_witness_histogram=dict(sorted(hist.items())),
        seconds=time.perf_counter() - start,
        traces={n: witness_trace(fset, n) for n in exceptions},
    )
    if keep_witnesses:
        report.min_a = np.concatenate([r.min_a for r in results])
    return report
