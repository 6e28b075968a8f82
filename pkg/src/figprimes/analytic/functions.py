"""Weight functions h used by the even-target formulation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, NamedTuple

import numpy as np

RealFn = Callable[[np.ndarray], np.ndarray]


def scaled_error(approx, exact) -> float:
    """``|approx - exact| / max(|exact|, 1)``.

    Relative for values of magnitude >= 1 and absolute below that, so exact
    zeros (common at 0/1 points) do not blow up the comparison.
    """
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    return float(np.max(np.abs(approx - exact) / np.maximum(np.abs(exact), 1.0)))


@dataclass(frozen=True)
class HFamily:
    name: str
    h: RealFn
    dh: RealFn
    d2h: RealFn
    d3h: RealFn
    d4h: RealFn | None = None

    def derivatives_at_zero(self) -> tuple[float, float, float, float]:
        z = np.float64(0.0)
        return (float(self.h(z)), float(self.dh(z)), float(self.d2h(z)), float(self.d3h(z)))


def x_exp_x() -> HFamily:
    """h(x) = x e^x; the k-th derivative is (k + x) e^x."""
    return HFamily(
        name="x*exp(x)",
        h=lambda x: x * np.exp(x),
        dh=lambda x: (1.0 + x) * np.exp(x),
        d2h=lambda x: (2.0 + x) * np.exp(x),
        d3h=lambda x: (3.0 + x) * np.exp(x),
        d4h=lambda x: (4.0 + x) * np.exp(x),
    )


def linear() -> HFamily:
    return HFamily(
        name="x",
        h=lambda x: 1.0 * np.asarray(x),
        dh=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        d2h=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        d3h=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        d4h=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
    )


DEFAULT_H = x_exp_x()


class HValidation(NamedTuple):
    valid: bool
    violations: List[str]


_FD_STEP = 1e-5
_FD_TOL = 1e-6


def validate_h(hf: HFamily, eps: float = 1e-2, grid_step: float = 1e-2) -> HValidation:
    """Check h(0) = 0, h(1) > 0, h''(0) > 0 and h >= 0 on a grid of [0, 2].

    Also cross-checks h', h'', h''' against central differences of the next
    lower evaluator at 0, ``eps`` and 1.
    """
    problems: List[str] = []
    h0 = float(hf.h(np.float64(0.0)))
    if abs(h0) > 1e-12:
        problems.append(f"h(0) = {h0!r}, expected 0")
    h1 = float(hf.h(np.float64(1.0)))
    if not h1 > 0:
        problems.append(f"h(1) = {h1!r} is not positive")
    d2h0 = float(hf.d2h(np.float64(0.0)))
    if not d2h0 > 0:
        problems.append(f"h''(0) = {d2h0!r} is not positive")

    grid = np.linspace(0.0, 2.0, int(round(2.0 / grid_step)) + 1)
    vals = np.asarray(hf.h(grid), dtype=float)
    if np.any(vals < 0) or not np.all(np.isfinite(vals)):
        bad = grid[(vals < 0) | ~np.isfinite(vals)]
        problems.append(f"h negative or non-finite at x = {bad[:5].tolist()}")

    pts = np.array([0.0, eps, 1.0])
    chain = [("h'", hf.h, hf.dh), ("h''", hf.dh, hf.d2h), ("h'''", hf.d2h, hf.d3h)]
    for label, lower, deriv in chain:
        fd = (np.asarray(lower(pts + _FD_STEP)) - np.asarray(lower(pts - _FD_STEP))) / (2 * _FD_STEP)
        err = scaled_error(fd, deriv(pts))
        if err > _FD_TOL:
            problems.append(f"{label} disagrees with finite differences (error {err:.3g})")
    return HValidation(not problems, problems)
