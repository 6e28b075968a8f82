"""Taylor coefficients in epsilon, measured remainders and residual diagnostics."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..census import Census, EvenCensus, OddCensus, census, census_dict
from ..membership import FigurateSet
from .formulations import LOG2, EvaluationPoint, f_direct, f_terms, g_direct, g_terms, h_sum_even
from .functions import DEFAULT_H, HFamily

NOISE_FLOOR = 1e-14
DEFAULT_EPS_GRID = tuple(2.0**-k for k in range(4, 13))


def taylor_coeffs(c: Census, hf: HFamily = DEFAULT_H) -> List[float]:
    """Coefficients of the closed form expanded in epsilon.

    Cubic for even targets, quadratic for odd ones. Assumes h(0) = 0.
    """
    if isinstance(c, EvenCensus):
        _, d1, d2, d3 = hf.derivatives_at_zero()
        h1 = float(hf.h(np.float64(1.0)))
        return [
            c.l2 * h1,
            c.l1 * d1 + c.a6 * h1,
            c.a4 * d1 + 0.5 * c.l1 * d2,
            0.5 * c.a4 * d2 + c.l1 * d3 / 6.0,
        ]
    if isinstance(c, OddCensus):
        lin = c.m1 + c.b6
        return [c.m2 * LOG2, float(lin), c.b4 - 0.5 * lin]
    raise TypeError(f"expected a census, got {type(c).__name__}")


def next_coefficient(c: Census, hf: HFamily = DEFAULT_H) -> Optional[float]:
    """Leading coefficient of the remainder (epsilon^4 even, epsilon^3 odd)."""
    if isinstance(c, EvenCensus):
        if hf.d4h is None:
            return None
        d3 = float(hf.d3h(np.float64(0.0)))
        d4 = float(hf.d4h(np.float64(0.0)))
        return c.a4 * d3 / 6.0 + c.l1 * d4 / 24.0
    # log(1+e) = e - e^2/2 + e^3/3 ...; log(1+e^2) has no cubic term
    return (c.m1 + c.b6) / 3.0


def even_residual(c: EvenCensus, epsilon: float, f0: float, hf: HFamily = DEFAULT_H) -> float:
    """``f0`` minus the aggregated even expansion with the remainder dropped."""
    _, _, d2, d3 = hf.derivatives_at_zero()
    h1 = float(hf.h(np.float64(1.0)))
    t = h1 * epsilon
    bracket = [c.l1 * -t, c.a6 * t, c.l2 * h1, 0.5 * d2 * epsilon**2, d3 * epsilon**3 / 6.0]
    return math.fsum([f0] + [-b for b in bracket])


def odd_residual(c: OddCensus, epsilon: float) -> float:
    e = epsilon
    return math.fsum(
        [
            c.b4 * (math.log1p(e * e) - 0.5 * e * e),
            c.m1 * math.fsum([math.log1p(e), -e, 0.5 * e * e]),
            c.b6 * math.log1p(e),
        ]
    )


def odd_residual_leading(c: OddCensus, epsilon: float) -> float:
    """Two-term expansion ``m1 e + (b4 - m1) e^2 / 2`` of :func:`odd_residual`."""
    return c.m1 * epsilon + 0.5 * (c.b4 - c.m1) * epsilon**2


def paper_residual(
    fset: FigurateSet, n: int, parity: str, epsilon: float, hf: HFamily = DEFAULT_H
) -> float:
    c = census(fset, n, parity)
    if parity == "even":
        return even_residual(c, epsilon, h_sum_even(fset, n, hf), hf)
    return odd_residual(c, epsilon)


def fit_loglog_slope(eps: Sequence[float], values: Sequence[float], floor: float = NOISE_FLOOR):
    """Least-squares slope of log|value| on log eps over points above ``floor``.

    Returns ``(slope, points_used)``; slope is None with fewer than 3 points.
    """
    e = np.asarray(eps, dtype=float)
    v = np.abs(np.asarray(values, dtype=float))
    keep = v > floor
    if keep.sum() < 3:
        return None, int(keep.sum())
    slope, _ = np.polyfit(np.log(e[keep]), np.log(v[keep]), 1)
    return float(slope), int(keep.sum())


@dataclass
class ExpansionReport:
    n: int
    parity: str
    census: dict
    coefficients: List[float]
    epsilon: List[float]
    exact: List[float]
    truncated: List[float]
    remainder: List[float]
    ratio: List[float]
    slope: Optional[float]
    points_used: int
    identically_zero: bool
    paper_residual: List[float]
    h_name: str = ""
    notes: List[str] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def inconclusive(self) -> bool:
        return self.slope is None and not self.identically_zero

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["epsilon", "exact", "truncated", "remainder", "ratio"])
        for row in zip(self.epsilon, self.exact, self.truncated, self.remainder, self.ratio):
            w.writerow([repr(float(v)) for v in row])
        return buf.getvalue()


def remainder_scan(
    fset: FigurateSet,
    n: int,
    parity: str,
    hf: HFamily = DEFAULT_H,
    eps_grid: Sequence[float] = DEFAULT_EPS_GRID,
) -> ExpansionReport:
    """Measure ``exact(eps) - sum_j c_j eps^j`` over a decreasing epsilon grid.

    The epsilon-dependent part ``exact(eps) - exact(0)`` is summed termwise so
    that the constant coefficient cancels exactly and the remainder is not
    swamped by rounding of the constant.
    """
    eps = [float(e) for e in eps_grid]
    if any(not 0.0 < e < 1.0 for e in eps):
        raise ValueError("epsilon grid must lie in (0, 1)")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilon grid must be strictly decreasing")
    c = census(fset, n, parity)
    coeffs = taylor_coeffs(c, hf)
    deg = len(coeffs) - 1
    base = EvaluationPoint.build(fset, n, parity, 0.0)
    if parity == "even":
        terms = lambda x: f_terms(x, hf)  # noqa: E731
        direct = lambda p: f_direct(p, hf)  # noqa: E731
        f0 = h_sum_even(fset, n, hf)
        resid = lambda e: even_residual(c, e, f0, hf)  # noqa: E731
    else:
        terms = g_terms
        direct = g_direct
        resid = lambda e: odd_residual(c, e)  # noqa: E731
    base_terms = terms(base.x)

    exact, trunc, rem, ratio, residuals = [], [], [], [], []
    for e in eps:
        pt = EvaluationPoint.build(fset, n, parity, e)
        exact.append(direct(pt))
        powers = [coeffs[j] * e**j for j in range(1, deg + 1)]
        trunc.append(math.fsum([coeffs[0]] + powers))
        shifted = math.fsum(terms(pt.x) - base_terms)
        r = math.fsum([shifted] + [-p for p in powers])
        rem.append(r)
        ratio.append(abs(r) / e ** (deg + 1))
        residuals.append(resid(e))

    slope, used = fit_loglog_slope(eps, rem)
    zero = all(abs(r) <= NOISE_FLOOR for r in rem)
    notes = []
    if zero:
        notes.append("remainder vanishes on the grid: expansion is an exact polynomial")
    elif slope is None:
        notes.append("fewer than 3 grid points above the noise floor; slope inconclusive")
    return ExpansionReport(
        n=n,
        parity=parity,
        census=census_dict(c),
        coefficients=coeffs,
        epsilon=eps,
        exact=exact,
        truncated=trunc,
        remainder=rem,
        ratio=ratio,
        slope=slope,
        points_used=used,
        identically_zero=zero,
        paper_residual=residuals,
        h_name=hf.name if parity == "even" else "",
        notes=notes,
    )
