"""Modified Bessel and Struve functions, weighted Bessel integrals, and a
numerical registry of inequalities built on them."""

from .integrals import (
    Family,
    IntegralSpec,
    StruveKind,
    closed_form_struve,
    full_line_k,
    i_nu_beta,
    int_lower_i,
    int_upper_k,
)
from .registry import (
    GridSpec,
    InequalityCase,
    Limit,
    MarginRecord,
    SteinExpression,
    SteinId,
    Strictness,
    UncoveredRegion,
    eval_case,
    get_case,
    list_cases,
    sharpness_probe,
    stein_expression,
    uniform_bound,
    verify_suite,
)
from .scaled import DomainError, EvalResult, ScaledReal, Status
from .sharp import (
    SharpConstantEstimate,
    a_ratio,
    b_ratio,
    empirical_sup,
    estimate_a,
    estimate_b,
)
from .specfun import bessel_i, bessel_k, gamma, ratio_i, struve_l
from .tables import Table, TableCell, reproduce_table

__version__ = "0.1.0"

__all__ = [
    "DomainError", "EvalResult", "Family", "GridSpec", "InequalityCase", "IntegralSpec",
    "Limit", "MarginRecord", "ScaledReal", "SharpConstantEstimate", "Status",
    "SteinExpression", "SteinId", "Strictness", "StruveKind", "Table", "TableCell",
    "UncoveredRegion", "a_ratio", "b_ratio", "bessel_i", "bessel_k", "closed_form_struve",
    "empirical_sup", "estimate_a", "estimate_b", "eval_case", "full_line_k", "gamma",
    "get_case", "i_nu_beta", "int_lower_i", "int_upper_k", "list_cases", "ratio_i",
    "reproduce_table", "sharpness_probe", "stein_expression", "struve_l", "uniform_bound",
    "verify_suite",
]
