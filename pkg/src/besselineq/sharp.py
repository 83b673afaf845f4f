"""Numerical estimates of the open constants a_nu, b_nu and empirical suprema.

``a_nu`` is the largest ``a`` in ``[0, 1]`` with
``I_{nu+1} < (1-a) I_nu + a I_{nu+2}`` for every ``x > 0``; pointwise the
admissible ``a`` is ``(I_nu - I_{nu+1}) / (I_nu - I_{nu+2})`` and ``a_nu``
is its infimum over ``x``.  ``b_nu`` is the analogous constant for ``K``.
Everything here is an estimate, not a proof.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from . import integrals as ig
from . import specfun as sf
from .scaled import DomainError, ScaledReal

GRID_LO = 1e-3
GRID_HI = 1e4
GRID_POINTS = 200
BRACKET_SLACK = 1e-5
LIMIT_TIE = 1e-6
LIMIT_AT_INFINITY = "limit x->inf"


class ReducedAccuracyWarning(UserWarning):
    """More than six significant digits were lost to cancellation."""


class Kind(str, enum.Enum):
    A = "a"
    B = "b"
    EMPIRICAL_SUP = "empirical_sup"


@dataclass(frozen=True)
class SharpConstantEstimate:
    nu: float
    kind: Kind
    value: float
    lo: float
    hi: float
    argmin_x: float | str
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def bracket(self) -> tuple[float, float]:
        return (self.lo, self.hi)


def _check_nu(nu: float, hi: float = 20.0) -> None:
    if not (math.isfinite(nu) and -0.5 < nu <= hi):
        raise DomainError(f"nu={nu} outside (-1/2, {hi}]")


def _lost_digits(rel: float) -> None:
    if rel > 1e-10:
        warnings.warn(f"a/b ratio lost more than 6 digits (rel err {rel:.1e})", ReducedAccuracyWarning, stacklevel=3)


def a_ratio(nu: float, x: float) -> float:
    """(I_nu - I_{nu+1}) / (I_nu - I_{nu+2}), the largest admissible ``a`` at ``x``."""
    _check_nu(nu, sf.ORDER_MAX)
    if not (0.0 < x <= sf.X_MAX):
        raise DomainError(f"x={x} outside (0, {sf.X_MAX}]")
    num, e1 = sf.ive_diff(nu, 1.0, x)
    den, e2 = sf.ive_diff(nu, 2.0, x)
    _lost_digits(e1 + e2)
    return float(num / den)


def b_ratio(nu: float, x: float) -> float:
    """(K_{nu+2} - K_{nu+1}) / (K_{nu+2} - K_nu), the largest admissible ``b`` at ``x``."""
    _check_nu(nu, sf.ORDER_MAX)
    if not (0.0 < x <= sf.X_MAX):
        raise DomainError(f"x={x} outside (0, {sf.X_MAX}]")
    a = abs(nu)
    num, e1 = sf.kve_diff(nu + 1.0, 1.0, x)
    den, e2 = sf.kve_diff(a, nu + 2.0 - a, x)
    _lost_digits(e1 + e2)
    return float(num / den)


def a_limit(nu: float) -> float:
    """x -> inf limit of a_ratio, from the first Hankel correction."""
    return (2.0 * nu + 1.0) / (4.0 * nu + 4.0)


def b_limit(nu: float) -> float:
    return (2.0 * nu + 3.0) / (4.0 * nu + 4.0)


def _log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), n)


def _refine(fun, grid: np.ndarray, vals: np.ndarray, i: int, sign: float) -> tuple[float, float]:
    """Golden-section refinement (in log x) around grid index ``i``; minimises sign*fun."""
    a = math.log(grid[max(i - 1, 0)])
    c = math.log(grid[min(i + 1, len(grid) - 1)])
    b = math.log(grid[i])
    best_x, best_v = float(grid[i]), float(vals[i])
    if not a < b < c:
        return best_x, best_v
    res = minimize_scalar(lambda u: sign * fun(math.exp(u)), bracket=(a, b, c), method="golden", tol=1e-10)
    u = min(max(float(res.x), a), c)
    v = fun(math.exp(u))
    if sign * v < sign * best_v:
        best_x, best_v = math.exp(u), v
    return best_x, best_v


def _estimate_inf(nu: float, kind: Kind, ratio, limit: float, points: int) -> SharpConstantEstimate:
    grid = _log_grid(GRID_LO, GRID_HI, points)
    vals = np.array([ratio(nu, float(x)) for x in grid])
    i = int(np.argmin(vals))
    x_star, v_star = _refine(lambda x: ratio(nu, x), grid, vals, i, 1.0)
    if v_star - limit < LIMIT_TIE:
        value, argmin = min(v_star, limit), (x_star if v_star < limit else LIMIT_AT_INFINITY)
    else:
        value, argmin = limit, LIMIT_AT_INFINITY
    hi = value
    lo = max(0.0, value - BRACKET_SLACK)
    meta = {
        "grid": [GRID_LO, GRID_HI, points],
        "grid_min": float(vals[i]),
        "grid_argmin": float(grid[i]),
        "refined_min": v_star,
        "refined_argmin": x_star,
        "asymptotic": limit,
    }
    return SharpConstantEstimate(nu, kind, value, lo, min(hi, 1.0), argmin, meta)


@lru_cache(maxsize=256)
def estimate_a(nu: float, points: int = GRID_POINTS) -> SharpConstantEstimate:
    """Numerical a_nu: inf of a_ratio over a log grid, golden refinement and the x->inf limit."""
    _check_nu(nu)
    return _estimate_inf(nu, Kind.A, a_ratio, a_limit(nu), points)


@lru_cache(maxsize=256)
def estimate_b(nu: float, points: int = GRID_POINTS) -> SharpConstantEstimate:
    """Numerical b_nu, same procedure as :func:`estimate_a`."""
    _check_nu(nu)
    return _estimate_inf(nu, Kind.B, b_ratio, b_limit(nu), points)


def op14_gamma_limit(nu: float, a: float) -> float:
    """Upper end of the gamma range of the a_nu theorem: min{1/(2(nu+1)a), (2nu+1)/(2(nu+1)(1-a))}."""
    first = math.inf if a == 0 else 1.0 / (2.0 * (nu + 1.0) * a)
    second = math.inf if a == 1 else (2.0 * nu + 1.0) / (2.0 * (nu + 1.0) * (1.0 - a))
    return min(first, second)


# ---------------------------------------------------------------------------
# empirical suprema for the open-problem quotients


class OpenExpr(str, enum.Enum):
    OPEN1 = "open1"
    OPEN3 = "open3"


def open1_quotient(nu: float, gamma: float, x: float) -> float:
    """int_0^x e^{-gamma t} t^nu I_nu dt / (e^{-gamma x} x^nu I_{nu+1}(x))."""
    v, _ = ig.lower_i_value(nu, -gamma, nu, x)
    i1, _ = sf.ive(nu + 1.0, x)
    den = i1 * ScaledReal.from_log((1.0 - gamma) * x + nu * math.log(x))
    return float(v / den)


def open3_expression(nu: float, beta: float, x: float) -> float:
    """e^{-beta x} K_{nu+1}(x) x^{1-nu} int_0^x e^{beta t} t^nu I_nu(t) dt."""
    v, _ = ig.lower_i_value(nu, beta, nu, x)
    k1, _ = sf.kve(nu + 1.0, x)
    return float(v * k1 * ScaledReal.from_log(-(1.0 + beta) * x + (1.0 - nu) * math.log(x)))


def empirical_sup(expr_id: OpenExpr | str, nu: float, beta: float, x_max: float = 500.0,
                  points: int = GRID_POINTS) -> SharpConstantEstimate:
    """Largest value of an open-problem quotient over (0, x_max]; empirical, not a proof."""
    expr = OpenExpr(expr_id)
    _check_nu(nu)
    if not (100.0 <= x_max <= ig.X_LIMIT):
        raise DomainError(f"x_max={x_max} outside [100, {ig.X_LIMIT}]")
    if expr is OpenExpr.OPEN1:
        gamma = -beta
        if not 0.0 < gamma < 1.0:
            raise DomainError("open1 needs gamma = -beta in (0, 1)")
        fun = lambda x: open1_quotient(nu, gamma, x)  # noqa: E731
        at0 = 2.0 * (nu + 1.0) / (2.0 * nu + 1.0)
        at_inf = 1.0 / (1.0 - gamma)
    else:
        if not -1.0 < beta < 0.0:
            raise DomainError("open3 needs -1 < beta < 0")
        fun = lambda x: open3_expression(nu, beta, x)  # noqa: E731
        at0 = 0.0
        at_inf = 1.0 / (2.0 * (1.0 + beta))
    grid = _log_grid(GRID_LO, x_max, points)
    vals = np.array([fun(float(x)) for x in grid])
    i = int(np.argmax(vals))
    x_star, v_star = _refine(fun, grid, vals, i, -1.0)
    value, argmax = v_star, x_star
    if at0 > value:
        value, argmax = at0, 0.0
    meta = {
        "grid": [GRID_LO, x_max, points],
        "limit_x_to_0": at0,
        "limit_x_to_inf": at_inf,
        "note": "empirical - not a proof",
        "expr": expr.value,
        "beta": beta,
    }
    return SharpConstantEstimate(nu, Kind.EMPIRICAL_SUP, value, value, value, argmax, meta)
