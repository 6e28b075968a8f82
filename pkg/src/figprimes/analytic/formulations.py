"""Sum formulations of the two-sum property and the smooth functions behind them.

Even target 2n, variables x_1..x_{2n-1}:

    f(x) = sum_i h(x_i) * x_{2n-i}

Odd target 2n+1, variables x_1..x_{2n}:

    g(x) = sum_i log(1 + x_i * x_{2n+1-i})

At the indicator point (x_i = 1 if i is figurate else 0) both reduce to the
discrete sums whose positivity is equivalent to the target having a
decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..census import EvenCensus, OddCensus, census_even, census_odd
from ..exceptions import FigurateRangeError
from ..membership import FigurateSet
from .functions import DEFAULT_H, HFamily

LOG2 = math.log(2.0)


def _size(n: int, parity: str) -> int:
    if parity == "even":
        return 2 * n - 1
    if parity == "odd":
        return 2 * n
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


@dataclass(frozen=True, eq=False)
class EvaluationPoint:
    """Point with ``x_i = 1`` at figurate indices and ``epsilon`` elsewhere.

    ``x0`` is the indicator vector and ``delta = x - x0``. Arrays are
    0-based: ``x[i - 1]`` is the variable for index ``i``. ``epsilon = 0``
    is accepted and gives ``x == x0``.
    """

    n: int
    parity: str
    epsilon: float
    x: np.ndarray
    x0: np.ndarray
    delta: np.ndarray

    @classmethod
    def build(cls, fset: FigurateSet, n: int, parity: str, epsilon: float) -> "EvaluationPoint":
        size = _size(n, parity)
        if n < 1 or size > fset.max_n:
            raise FigurateRangeError(f"{parity} point for n={n} needs max_n >= {size}")
        if not 0.0 <= epsilon < 1.0:
            raise ValueError(f"epsilon must lie in [0, 1), got {epsilon}")
        x0 = fset.flags[1 : size + 1].astype(float)
        x = np.where(x0 == 1.0, 1.0, epsilon)
        for a in (x0, x):
            a.flags.writeable = False
        delta = x - x0
        delta.flags.writeable = False
        return cls(n, parity, float(epsilon), x, x0, delta)

    def validate(self) -> None:
        size = _size(self.n, self.parity)
        fig = self.x0 == 1.0
        ok = (
            self.x.shape == self.x0.shape == self.delta.shape == (size,)
            and np.all((self.x0 == 0.0) | fig)
            and np.all(self.x[fig] == 1.0)
            and np.all(self.x[~fig] == self.epsilon)
            and np.array_equal(self.delta, self.x - self.x0)
        )
        if not ok:
            raise ValueError("malformed evaluation point")


def f_terms(x: np.ndarray, hf: HFamily = DEFAULT_H) -> np.ndarray:
    """Summands ``h(x_i) x_{2n-i}``; works row-wise on a 2-D batch of points."""
    x = np.asarray(x, dtype=float)
    return hf.h(x) * x[..., ::-1]


def g_terms(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.log1p(x * x[..., ::-1])


def f_direct(pt: EvaluationPoint, hf: HFamily = DEFAULT_H) -> float:
    if pt.parity != "even":
        raise ValueError("f is defined for even targets")
    pt.validate()
    return math.fsum(f_terms(pt.x, hf))


def g_direct(pt: EvaluationPoint) -> float:
    if pt.parity != "odd":
        raise ValueError("g is defined for odd targets")
    pt.validate()
    return math.fsum(g_terms(pt.x))


def f_closed_form(c: EvenCensus, epsilon: float, hf: HFamily = DEFAULT_H) -> float:
    """f at the epsilon point, grouped by partition class."""
    he = float(hf.h(np.float64(epsilon)))
    h1 = float(hf.h(np.float64(1.0)))
    return math.fsum([c.a4 * he * epsilon, c.l1 * he, c.a6 * h1 * epsilon, c.l2 * h1])


def g_closed_form(c: OddCensus, epsilon: float) -> float:
    lp = math.log1p(epsilon)
    return math.fsum(
        [c.b4 * math.log1p(epsilon * epsilon), c.m1 * lp, c.b6 * lp, c.m2 * LOG2]
    )


def h_sum_even(fset: FigurateSet, n: int, hf: HFamily = DEFAULT_H) -> float:
    """``sum_{i=1}^{2n-1} h(delta(i)) delta(2n - i)``."""
    census_even(fset, n)  # range guard
    d = fset.flags[1 : 2 * n].astype(float)
    return math.fsum(hf.h(d) * d[::-1])


def log_sum_odd(fset: FigurateSet, n: int) -> float:
    """``sum_{i=1}^{2n} log(1 + delta(i) delta(2n + 1 - i))``."""
    census_odd(fset, n)
    d = fset.flags[1 : 2 * n + 1].astype(float)
    return math.fsum(np.log1p(d * d[::-1]))
