"""Finite-difference audit of the closed-form partial derivatives of f and g.

Every closed form is evaluated at the indicator point x0 and compared with
central differences of the literal sum. Differences are taken on
``sum(terms(x) - terms(x0))``, which differs from the sum itself only by a
constant, so rounding is relative to the perturbed summands.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from ..membership import FigurateSet
from .formulations import EvaluationPoint, f_terms, g_terms
from .functions import DEFAULT_H, HFamily

STEPS = {1: 1e-5, 2: 1e-4, 3: 1e-3}
TOLERANCES = {1: 1e-6, 2: 1e-4, 3: 1e-4}
_BLOCK = 256


@dataclass(frozen=True)
class FormulaCheck:
    name: str
    order: int
    max_error: float
    worst_index: int
    closed_form: float  # at worst_index
    finite_difference: float  # at worst_index
    ratio: float  # median finite_difference / closed_form over nonzero closed forms

    @property
    def tolerance(self) -> float:
        return TOLERANCES[self.order]

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance


# A stencil is a list of (weight, offsets) with offsets as (axis, multiple of step)
# pairs; axis 0 is x_i and axis 1 is its partner.
Stencil = List[Tuple[float, Tuple[Tuple[int, int], ...]]]


def _nested(axes: Sequence[int], step: float) -> Stencil:
    k = len(axes)
    out = []
    for signs in itertools.product((1, -1), repeat=k):
        w = float(np.prod(signs)) / (2 * step) ** k
        out.append((w, tuple(zip(axes, signs))))
    return out


def _first(step: float) -> Stencil:
    return [(1 / (2 * step), ((0, 1),)), (-1 / (2 * step), ((0, -1),))]


def _second(step: float) -> Stencil:
    h2 = step * step
    return [(1 / h2, ((0, 1),)), (-2 / h2, ()), (1 / h2, ((0, -1),))]


def _third(step: float) -> Stencil:
    c = 1 / (2 * step**3)
    return [(c, ((0, 2),)), (-2 * c, ((0, 1),)), (2 * c, ((0, -1),)), (-c, ((0, -2),))]


def _second_then_partner(step: float) -> Stencil:
    out = []
    for sj in (1, -1):
        for w, offs in _second(step):
            out.append((w * sj / (2 * step), offs + ((1, sj),)))
    return out


def _apply(
    terms: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    pairs: np.ndarray,
    stencil: Stencil,
    step: float,
) -> np.ndarray:
    """Stencil estimate for each row ``(i, j)`` of ``pairs`` (0-based)."""
    base = terms(x0)
    out = np.empty(len(pairs))
    for start in range(0, len(pairs), _BLOCK):
        block = pairs[start : start + _BLOCK]
        acc = np.zeros(len(block))
        rows = np.arange(len(block))
        for w, offs in stencil:
            X = np.repeat(x0[None, :], len(block), axis=0)
            for axis, mult in offs:
                # i == partner only at the centre index; offsets then stack on one coordinate
                np.add.at(X, (rows, block[:, axis]), mult * step)
            acc += w * (terms(X) - base).sum(axis=1)
        out[start : start + len(block)] = acc
    return out


def _summarise(name, order, idx, closed, numeric) -> FormulaCheck:
    err = np.abs(numeric - closed) / np.maximum(np.abs(closed), 1.0)
    k = int(np.argmax(err))
    big = np.abs(closed) > 1e-9
    ratio = float(np.median(numeric[big] / closed[big])) if big.any() else float("nan")
    return FormulaCheck(name, order, float(err[k]), int(idx[k]), float(closed[k]), float(numeric[k]), ratio)


def _even_checks(pt: EvaluationPoint, hf: HFamily) -> Dict[str, FormulaCheck]:
    n = pt.n
    x0 = pt.x0
    size = x0.size
    terms = lambda X: f_terms(X, hf)  # noqa: E731
    i_all = np.array([i for i in range(1, size + 1) if i != n])
    pairs = np.stack([i_all - 1, (2 * n - i_all) - 1], axis=1)
    centre = np.array([[n - 1, n - 1]])
    xi, xj = x0[pairs[:, 0]], x0[pairs[:, 1]]
    xn = x0[n - 1 : n]
    h, dh, d2h, d3h = hf.h, hf.dh, hf.d2h, hf.d3h
    s1, s2, s3 = STEPS[1], STEPS[2], STEPS[3]

    table = [
        ("grad_pair", 1, pairs, dh(xi) * xj + h(xj), _first(s1), s1),
        ("grad_centre", 1, centre, dh(xn) * xn + h(xn), _first(s1), s1),
        ("hess_diag_pair", 2, pairs, d2h(xi) * xj, _second(s2), s2),
        ("hess_cross_pair", 2, pairs, dh(xi) + dh(xj), _nested((0, 1), s2), s2),
        ("hess_centre", 2, centre, d2h(xn) * xn + 2 * dh(xn), _second(s2), s2),
        ("third_diag_pair", 3, pairs, d3h(xi) * xj, _third(s3), s3),
        ("third_iij_pair", 3, pairs, d2h(xi), _second_then_partner(s3), s3),
        ("third_iji_pair", 3, pairs, d2h(xi), _nested((0, 1, 0), s3), s3),
        ("third_ijj_pair", 3, pairs, d2h(xj), _nested((0, 1, 1), s3), s3),
        ("third_centre", 3, centre, d3h(xn) * xn + 3 * d2h(xn), _third(s3), s3),
    ]
    out = {}
    for name, order, prs, closed, stencil, step in table:
        numeric = _apply(terms, x0, prs, stencil, step)
        out[name] = _summarise(name, order, prs[:, 0] + 1, np.asarray(closed, dtype=float), numeric)
    return out


def _odd_checks(pt: EvaluationPoint) -> Dict[str, FormulaCheck]:
    n = pt.n
    x0 = pt.x0
    i_all = np.arange(1, x0.size + 1)
    pairs = np.stack([i_all - 1, (2 * n + 1 - i_all) - 1], axis=1)
    xi, xj = x0[pairs[:, 0]], x0[pairs[:, 1]]
    denom = 1.0 + xi * xj
    s1, s2 = STEPS[1], STEPS[2]
    table = [
        ("grad", 1, xj / denom, _first(s1), s1),
        ("hess_diag", 2, -(xj**2) / denom**2, _second(s2), s2),
        ("hess_cross", 2, 1.0 / denom**2, _nested((0, 1), s2), s2),
    ]
    out = {}
    for name, order, closed, stencil, step in table:
        numeric = _apply(g_terms, x0, pairs, stencil, step)
        out[name] = _summarise(name, order, i_all, np.asarray(closed, dtype=float), numeric)
    return out


def derivative_audit(
    fset: FigurateSet, n: int, parity: str, hf: HFamily = DEFAULT_H
) -> Dict[str, FormulaCheck]:
    """Worst scaled error per closed-form partial derivative at x0.

    Even targets check the ten first-, second- and third-order formulas of f
    (pair indices ``i != n`` and the centre index ``n``); odd targets check
    the gradient and the two Hessian formulas of g.
    """
    pt = EvaluationPoint.build(fset, n, parity, 0.0)
    if parity == "even":
        if n < 3:
            raise ValueError("even audit needs n >= 3")
        return _even_checks(pt, hf)
    return _odd_checks(pt)
