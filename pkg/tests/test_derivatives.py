import math

import numpy as np
import pytest

from figprimes.analytic import DEFAULT_H, EvaluationPoint, derivative_audit, f_terms, g_terms

EVEN_FORMULAS = {
    "grad_pair", "grad_centre", "hess_diag_pair", "hess_cross_pair", "hess_centre",
    "third_diag_pair", "third_iij_pair", "third_iji_pair", "third_ijj_pair", "third_centre",
}


def _plain_fd(terms, x0, i, step=1e-5):
    """Central difference of the full literal sum along coordinate i (1-based)."""
    up, down = x0.copy(), x0.copy()
    up[i - 1] += step
    down[i - 1] -= step
    return (math.fsum(terms(up)) - math.fsum(terms(down))) / (2 * step)


def test_gradient_example_even(small_set):
    x0 = EvaluationPoint.build(small_set, 12, "even", 0.0).x0.copy()
    assert x0[13] == 0.0 and x0[9] == 1.0  # 14 not figurate, 10 figurate
    closed = 1.0 * 1.0 + math.e  # h'(0) * 1 + h(1)
    fd = _plain_fd(lambda x: f_terms(x, DEFAULT_H), x0, 14)
    assert abs(fd - closed) / closed <= 1e-6


def test_centre_hessian_example(small_set):
    assert not small_set.flags[12]
    checks = derivative_audit(small_set, 12, "even")
    assert checks["hess_centre"].worst_index == 12
    assert checks["hess_centre"].closed_form == pytest.approx(2.0)  # 2 h'(0)
    assert checks["hess_centre"].passed


def test_even_audit_passes(small_set):
    for n in (3, 12, 37, 100, 251):
        checks = derivative_audit(small_set, n, "even")
        assert set(checks) == EVEN_FORMULAS
        for c in checks.values():
            assert c.passed, (n, c)


def test_odd_cross_value_at_example(small_set):
    checks = derivative_audit(small_set, 12, "odd")
    x0 = EvaluationPoint.build(small_set, 12, "odd", 0.0).x0
    # i = 14: partner 11 is figurate, x_14 = 0, so 1 / (1 + 0 * 1)^2 = 1
    assert 1.0 / (1.0 + x0[13] * x0[10]) ** 2 == 1.0
    assert set(checks) == {"grad", "hess_diag", "hess_cross"}


def test_odd_formulas_miss_pair_multiplicity(small_set):
    """Each unordered pair {i, 2n+1-i} appears twice in g, so the true partials
    are twice the single-summand formulas."""
    x0 = EvaluationPoint.build(small_set, 12, "odd", 0.0).x0.copy()
    fd = _plain_fd(g_terms, x0, 14)
    assert fd == pytest.approx(2.0, rel=1e-8)
    for n in (5, 12, 60):
        for c in derivative_audit(small_set, n, "odd").values():
            assert c.ratio == pytest.approx(2.0, rel=1e-4)


def test_synthetic_h_catches_wrong_formula(small_set):
    from figprimes.analytic import HFamily

    # misreport h'' by a constant factor: second and third order checks must fail
    off = HFamily("off", DEFAULT_H.h, DEFAULT_H.dh, lambda x: 1.5 * DEFAULT_H.d2h(x), DEFAULT_H.d3h)
    checks = derivative_audit(small_set, 12, "even", off)
    assert not checks["hess_diag_pair"].passed
    assert not checks["third_iij_pair"].passed
    assert checks["grad_pair"].passed
