from .derivatives import FormulaCheck, derivative_audit
from .expansion import (
    DEFAULT_EPS_GRID,
    ExpansionReport,
    even_residual,
    fit_loglog_slope,
    next_coefficient,
    odd_residual,
    odd_residual_leading,
    paper_residual,
    remainder_scan,
    taylor_coeffs,
)
from .formulations import (
    EvaluationPoint,
    f_closed_form,
    f_direct,
    f_terms,
    g_closed_form,
    g_direct,
    g_terms,
    h_sum_even,
    log_sum_odd,
)
from .functions import DEFAULT_H, HFamily, HValidation, linear, scaled_error, validate_h, x_exp_x

__all__ = [
    "DEFAULT_EPS_GRID",
    "DEFAULT_H",
    "EvaluationPoint",
    "ExpansionReport",
    "FormulaCheck",
    "HFamily",
    "HValidation",
    "derivative_audit",
    "even_residual",
    "f_closed_form",
    "f_direct",
    "f_terms",
    "fit_loglog_slope",
    "g_closed_form",
    "g_direct",
    "g_terms",
    "h_sum_even",
    "linear",
    "log_sum_odd",
    "next_coefficient",
    "odd_residual",
    "odd_residual_leading",
    "paper_residual",
    "remainder_scan",
    "scaled_error",
    "taylor_coeffs",
    "validate_h",
    "x_exp_x",
]
