"""Registry of the integral inequalities, product bounds and uniform bounds.

Every case is stored with the orientation ``lhs < rhs`` (or ``lhs <= rhs``
for non-strict cases), so a single margin convention serves the whole
registry: ``margin = rhs - lhs`` and a case is violated when
``rel_margin < -tol``.  Points on a case's equality set must satisfy
``|rel_margin| <= tol`` instead.

Parameter conventions: ``beta`` is always the drift of the integrand,
i.e. the coefficient in ``e^{beta t}``.  Inequalities stated with a decay
rate ``gamma`` (``e^{-gamma t}``) are registered with ``beta = -gamma``,
and the upper-K inequalities stated with ``e^{-beta t}`` take
``beta <= 0`` here.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from . import integrals as ig
from . import specfun as sf
from .scaled import EPS, DomainError, EvalResult, ScaledReal

LOG_SQRT_PI = 0.5 * math.log(math.pi)
DEFAULT_TOL = 1e-9


class Strictness(str, enum.Enum):
    STRICT = "strict"
    NON_STRICT = "non_strict"


class Limit(str, enum.Enum):
    X_TO_0 = "x_to_0"
    X_TO_INF = "x_to_inf"
    NU_TO_INF = "nu_to_inf"


class UncoveredRegion(DomainError):
    """No registered theorem supplies a constant for these parameters."""


@dataclass(frozen=True)
class Params:
    nu: float
    x: float | None = None
    beta: float | None = None
    n: float | None = None

    def as_dict(self) -> dict:
        return {"nu": self.nu, "beta": self.beta, "n": self.n, "x": self.x}

    def sort_key(self) -> tuple:
        return tuple(-math.inf if v is None else v for v in (self.nu, self.beta, self.n, self.x))


@dataclass(frozen=True)
class Sides:
    lhs: ScaledReal
    rhs: ScaledReal
    rel_err: float
    margin: ScaledReal | None = None  # accurate rhs - lhs when cancellation matters


@dataclass(frozen=True)
class InequalityCase:
    id: str
    axes: tuple[str, ...]
    domain: str
    strictness: Strictness
    equality_set: str
    predicate: Callable[[Params], bool] = field(repr=False)
    evaluator: Callable[[Params], Sides] = field(repr=False)
    on_equality: Callable[[Params], bool] = field(default=lambda p: False, repr=False)

    def in_domain(self, params: Params) -> bool:
        for name in ("nu", "beta", "n", "x"):
            given = getattr(params, name) is not None
            if given != (name in self.axes):
                return False
        try:
            return bool(self.predicate(params))
        except (DomainError, ValueError, ZeroDivisionError):
            return False


@dataclass(frozen=True)
class MarginRecord:
    id: str
    params: Params
    lhs: ScaledReal
    rhs: ScaledReal
    margin: ScaledReal
    rel_margin: float
    eval_err: float
    strictness: Strictness
    on_equality_set: bool

    def violates(self, tol: float = DEFAULT_TOL) -> bool:
        if self.on_equality_set:
            return not abs(self.rel_margin) <= tol
        return not self.rel_margin >= -tol


# ---------------------------------------------------------------------------
# building blocks


def _I(nu: float, x: float) -> tuple[ScaledReal, float]:
    v, r = sf.ive(nu, x)
    return v.times_exp(x), r


def _K(nu: float, x: float) -> tuple[ScaledReal, float]:
    v, r = sf.kve(nu, x)
    return v.times_exp(-x), r


def _ex(a: float) -> ScaledReal:
    return ScaledReal.from_log(a)


def _xp(x: float, p: float) -> ScaledReal:
    return ScaledReal.from_log(p * math.log(x))


def _rel(v: ScaledReal, e: ScaledReal) -> float:
    return float(e / abs(v)) if v.mantissa != 0.0 else 0.0


def _li(order: float, beta: float, p: float, x: float) -> tuple[ScaledReal, float]:
    """int_0^x e^{beta t} t^p I_order(t) dt."""
    v, e = ig.lower_i_value(order, beta, p, x)
    return v, _rel(v, e)


def _uk(order: float, beta: float, p: float, x: float) -> tuple[ScaledReal, float]:
    """int_x^inf e^{beta t} t^p K_order(t) dt."""
    v, e = ig.upper_k_value(order, beta, p, x)
    return v, _rel(v, e)


def _inb(nu: float, beta: float) -> tuple[ScaledReal, float]:
    v, e = ig.i_nu_beta_value(nu, beta)
    return v, _rel(v, e)


def _log_gamma(x: float) -> float:
    return math.lgamma(x)


def full_line_half(nu: float, beta: float) -> float:
    """sqrt(pi) Gamma(nu+1/2) 2^{nu-1} / (1-beta^2)^{nu+1/2}, the lower bound of I_{nu,beta}."""
    return 0.5 * ig.full_line_closed_form(nu, beta)


def _k_const(nu: float) -> float:
    """2^{nu-1} Gamma(nu), the x -> 0 limit of x^nu K_nu(x)."""
    return math.exp((nu - 1.0) * math.log(2.0) + _log_gamma(nu))


# ---------------------------------------------------------------------------
# Stein-factor expressions


class SteinId(str, enum.Enum):
    S1A = "S1a"
    S1B = "S1b"
    S2A = "S2a"
    S2B = "S2b"


@dataclass(frozen=True)
class SteinExpression:
    """One of the four Stein-factor products.

    ``S1a = e^{-beta x} K_{nu+1}(x) x^{-nu} int_0^x e^{beta t} t^{nu+1} I_nu(t) dt``,
    ``S2a`` has power ``t^nu`` and prefactor ``x^{1-nu}``; ``S1b``/``S2b`` swap
    in ``I_{nu+1}`` and the upper-K integral.  ``prefactor_shift = 0`` replaces
    the order ``nu+1`` of the prefactor by ``nu``, the variants used by several
    of the uniform bounds.
    """

    id: SteinId
    nu: float
    beta: float
    x: float
    prefactor_shift: int = 1


def stein_value(expr: SteinExpression) -> tuple[ScaledReal, float]:
    sid = SteinId(expr.id)
    nu, beta, x = expr.nu, expr.beta, expr.x
    if not (nu > -0.5 and abs(beta) < 1.0 and 0.0 < x <= ig.X_LIMIT) or expr.prefactor_shift not in (0, 1):
        raise DomainError("Stein expressions need nu > -1/2, |beta| < 1, 0 < x <= 1e3")
    order = nu + expr.prefactor_shift
    first = sid in (SteinId.S1A, SteinId.S1B)
    p = nu + 1.0 if first else nu
    if sid in (SteinId.S1A, SteinId.S2A):
        integral, r1 = _li(nu, beta, p, x)
        pre, r2 = _K(order, x)
    else:
        integral, r1 = _uk(nu, beta, p, x)
        pre, r2 = _I(order, x)
    scale = ScaledReal.from_log(-beta * x - (nu if first else nu - 1.0) * math.log(x))
    return integral * pre * scale, r1 + r2 + 8 * EPS


def stein_expression(expr: SteinExpression) -> EvalResult:
    """Evaluate a Stein-factor expression with scaled arithmetic throughout."""
    try:
        v, rel = stein_value(expr)
    except DomainError:
        return EvalResult.out_of_domain()
    return EvalResult.build(v, rel, ok_tol=1e-9)


def _third_part_term(nu: float, beta: float) -> float:
    """sqrt(pi) beta Gamma(nu+3/2) / ((1-beta^2)^{nu+3/2} Gamma(nu+1))."""
    return beta * math.exp(LOG_SQRT_PI + _log_gamma(nu + 1.5) - (nu + 1.5) * math.log1p(-beta * beta) - _log_gamma(nu + 1.0))


def n_nu_beta(nu: float, beta: float) -> float:
    """N_{nu,beta}: 1/(2(1-beta)) for nu <= 1/2, else sqrt(pi) Gamma(nu+1/2)/((1-beta^2)^{nu+1/2} Gamma(nu))."""
    if nu <= 0.5:
        return 1.0 / (2.0 * (1.0 - beta))
    return math.exp(LOG_SQRT_PI + _log_gamma(nu + 0.5) - (nu + 0.5) * math.log1p(-beta * beta) - _log_gamma(nu))


# id -> (Stein id, prefactor shift)
_STEIN_OF = {
    "propb2a12": (SteinId.S1A, 1),
    "propb2a125": (SteinId.S1A, 0),
    "jjj1": (SteinId.S2A, 1),
    "jjj2": (SteinId.S2A, 0),
    "fff11": (SteinId.S1B, 0),
    "fff2": (SteinId.S1B, 1),
    "ddd1": (SteinId.S2B, 0),
    "ddd2": (SteinId.S2B, 1),
    "ddd3": (SteinId.S2B, 0),
    "ddd4": (SteinId.S2B, 1),
}


def _base_id(case_id: str) -> str:
    return case_id.split(".")[0]


def uniform_bound(case_id: str, nu: float, beta: float) -> float:
    """Constant of the uniform bound for the Stein expression behind ``case_id``.

    The sign of ``beta`` selects the matching theorem part, so ``"jjj1"`` with
    ``beta < 0`` returns the ``(nu+1)/((2nu+1)(1+beta))`` constant.  Raises
    :class:`UncoveredRegion` where no theorem applies (the S2a expressions
    with ``-1/2 < nu < 1/2`` and ``beta < 0``) and ``DomainError`` otherwise
    outside ``nu > -1/2, |beta| < 1``.
    """
    base = _base_id(case_id)
    if base not in _STEIN_OF:
        raise DomainError(f"no uniform bound registered for {case_id!r}")
    if not (nu > -0.5 and abs(beta) < 1.0 and math.isfinite(nu)):
        raise DomainError("uniform bounds need nu > -1/2 and |beta| < 1")
    if base in ("propb2a12", "propb2a125"):
        return 0.5 if beta >= 0 else 1.0 / (2.0 * (1.0 + beta))
    if base in ("jjj1", "jjj2"):
        if beta >= 0:
            return (nu + 1.0) / (2.0 * nu + 1.0)
        if nu >= 0.5:
            return (nu + 1.0) / ((2.0 * nu + 1.0) * (1.0 + beta))
        raise UncoveredRegion(
            f"{base}: no explicit constant for -1/2 < nu < 1/2 and beta < 0 (uncovered region)"
        )
    if base == "fff11":
        return 1.0 if beta <= 0 else 1.0 + 2.0 * _third_part_term(nu, beta)
    if base == "fff2":
        return 0.5 if beta <= 0 else 0.5 + _third_part_term(nu, beta)
    if base in ("ddd1", "ddd3"):
        return 1.0 if beta <= 0 else n_nu_beta(nu, beta)
    return 0.5 if beta <= 0 else n_nu_beta(nu, beta)


def is_covered(case_id: str, nu: float, beta: float) -> bool:
    try:
        uniform_bound(case_id, nu, beta)
    except UncoveredRegion:
        return False
    return True


# ---------------------------------------------------------------------------
# case evaluators


def _gamma(p: Params) -> float:
    return -p.beta


def _propb2a1(p: Params) -> Sides:
    nu, b, x = p.nu, p.beta, p.x
    lhs, r1 = _li(nu, b, nu, x)
    i1, r2 = _I(nu + 1, x)
    rhs = i1 * _ex(b * x) * _xp(x, nu) * (2 * (nu + 1) / (2 * nu + 1))
    return Sides(lhs, rhs, r1 + r2)


def _propb2a(p: Params) -> Sides:
    nu, b, x = p.nu, p.beta, p.x
    lhs, r1 = _li(nu, b, nu + 1, x)
    i1, r2 = _I(nu + 1, x)
    return Sides(lhs, i1 * _ex(b * x) * _xp(x, nu + 1), r1 + r2)


def _fff1(p: Params) -> Sides:
    nu, b, x = p.nu, p.beta, p.x
    lhs, r1 = _uk(nu, b, nu, x)
    k1, r2 = _K(nu + 1, x)
    return Sides(lhs, k1 * _ex(b * x) * _xp(x, nu), r1 + r2)


def _fff(p: Params) -> Sides:
    nu, b, x = p.nu, p.beta, p.x
    lhs, r1 = _uk(nu, b, nu + 1, x)
    k1, r2 = _K(nu + 1, x)
    return Sides(lhs, k1 * _ex(b * x) * _xp(x, nu + 1), r1 + r2)


def _doubleivb(upper: bool):
    def ev(p: Params) -> Sides:
        v, r = _inb(p.nu, p.beta)
        low = ScaledReal(full_line_half(p.nu, p.beta))
        if upper:
            return Sides(v, low * 2.0, r + 4 * EPS)
        return Sides(low, v, r + 4 * EPS)

    return ev


def _lowerk(p: Params) -> Sides:
    nu, b, x = p.nu, p.beta, p.x
    lhs, r1 = _uk(nu, b, nu, x)
    k, r2 = _K(nu, x)
    return Sides(lhs, k * _ex(b * x) * _xp(x, nu) / (1 - b), r1 + r2)


def _lowerk2(upper: bool):
    def ev(p: Params) -> Sides:
        nu, b, x = p.nu, p.beta, p.x
        mid, r1 = _uk(nu, b, nu, x)
        k, r2 = _K(nu, x)
        base = k * _ex(b * x) * _xp(x, nu)
        if upper:
            c, r3 = _inb(nu, b)
            return Sides(mid, base * c / _k_const(nu), r1 + r2 + r3)
        return Sides(base / (1 - b), mid, r1 + r2)

    return ev


def _lowerk3(upper: bool):
    def ev(p: Params) -> Sides:
        nu, b, x = p.nu, p.beta, p.x
        mid, r1 = _uk(nu, b, nu + 1, x)
        k1, r2 = _K(nu + 1, x)
        base = k1 * _ex(b * x) * _xp(x, nu + 1)
        if upper:
            c, r3 = _inb(nu + 1, b)
            factor = 1.0 + b * float(c) / _k_const(nu + 1)
            return Sides(mid, base * factor, r1 + r2 + r3)
        return Sides(base / (1 - b), mid, r1 + r2)

    return ev


def _besi11(p: Params) -> Sides:
    nu, n, b, x = p.nu, p.n, p.beta, p.x
    rhs, r1 = _li(nu + n, b, nu, x)
    i1, r2 = _I(nu + n + 1, x)
    return Sides(i1 * _ex(b * x) * _xp(x, nu), rhs, r1 + r2)


def _rrrr_lower(p: Params) -> Sides:
    return _besi11(replace(p, beta=0.0))


def _besi22(p: Params) -> Sides:
    nu, n, x = p.nu, p.n, p.x
    lhs, r1 = _li(nu + n, 0.0, nu, x)
    i1, r2 = _I(nu + n + 1, x)
    i3, r3 = _I(nu + n + 3, x)
    comb = i1 * (2 * (nu + n + 1)) - i3 * (n + 1)
    cond = float((i1 * (2 * (nu + n + 1)) + i3 * (n + 1)) / comb)
    rhs = comb * _xp(x, nu) / (2 * nu + n + 1)
    return Sides(lhs, rhs, r1 + (r2 + r3) * cond)


def _besi225(p: Params) -> Sides:
    nu, n, x = p.nu, p.n, p.x
    lhs, r1 = _li(nu + n, 0.0, nu, x)
    i1, r2 = _I(nu + n + 1, x)
    rhs = i1 * _xp(x, nu) * (2 * (nu + n + 1) / (2 * nu + n + 1))
    return Sides(lhs, rhs, r1 + r2)


def _besi33(p: Params) -> Sides:
    nu, b, x = p.nu, p.beta, p.x
    g = -b
    lhs, r1 = _li(nu, b, nu, x)
    i1, r2 = _I(nu + 1, x)
    i3, r3 = _I(nu + 3, x)
    comb = i1 * (2 * (nu + 1)) - i3
    cond = float((i1 * (2 * (nu + 1)) + i3) / comb)
    rhs = comb * _ex(b * x) * _xp(x, nu) / ((2 * nu + 1) * (1 - g))
    return Sides(lhs, rhs, r1 + (r2 + r3) * cond)


def _besi44(p: Params) -> Sides:
    nu, b, x = p.nu, p.beta, p.x
    rhs, r1 = _li(nu, b, nu + 1, x)
    i1, r2 = _I(nu + 1, x)
    return Sides(i1 * _ex(b * x) * _xp(x, nu + 1), rhs, r1 + r2)


def _besi55(p: Params) -> Sides:
    nu, b, x = p.nu, p.beta, p.x
    lhs, r1 = _li(nu, b, nu + 1, x)
    i1, r2 = _I(nu + 1, x)
    return Sides(lhs, i1 * _ex(b * x) * _xp(x, nu + 1) / (1 + b), r1 + r2)


def _gamma_weighted_bound(constant: Callable[[Params], float]):
    """int_0^x e^{-gamma t} t^nu I_nu  <  C e^{-gamma x} x^nu I_{nu+1}(x)."""

    def ev(p: Params) -> Sides:
        nu, b, x = p.nu, p.beta, p.x
        lhs, r1 = _li(nu, b, nu, x)
        i1, r2 = _I(nu + 1, x)
        return Sides(lhs, i1 * _ex(b * x) * _xp(x, nu) * constant(p), r1 + r2)

    return ev


def _bes18_const(p: Params) -> float:
    return 2 * (p.nu + 1) / ((2 * p.nu + 1) * (1 - _gamma(p)))


def _a_lo(nu: float) -> float:
    from .sharp import estimate_a

    return estimate_a(nu).lo


def _b_lo(nu: float) -> float:
    from .sharp import estimate_b

    return estimate_b(nu).lo


def _op14_const(p: Params) -> float:
    nu, g = p.nu, _gamma(p)
    c = 1.0 - _a_lo(nu)
    return 2 * (nu + 1) / ((2 * nu + 1) * (1 - c * g) - c * g)


def _op12_const(p: Params) -> float:
    nu, g = p.nu, _gamma(p)
    return 2 * (nu + 1) / ((2 * nu + 1) * (1 - g) - g)


def _op14_domain(p: Params) -> bool:
    from .sharp import op14_gamma_limit

    return -0.5 < p.nu <= 20.0 and 0 < _gamma(p) < op14_gamma_limit(p.nu, _a_lo(p.nu))


def _struve_pref(nu: float) -> float:
    """sqrt(pi) 2^{nu-1} Gamma(nu+1/2)."""
    return math.exp(LOG_SQRT_PI + (nu - 1) * math.log(2.0) + _log_gamma(nu + 0.5))


def _dob11(upper: bool):
    def ev(p: Params) -> Sides:
        nu, x = p.nu, p.x
        g, r1 = ig.struve_bessel_g(nu, x)
        k, r2 = _K(nu, x)
        base = k * _xp(x, nu)
        if upper:
            return Sides(g, base / _k_const(nu), r1 + r2)
        return Sides(base / _struve_pref(nu), g, r1 + r2)

    return ev


def _dob22(upper: bool):
    def ev(p: Params) -> Sides:
        nu, x = p.nu, p.x
        f, r1 = ig.struve_bessel_f(nu, x)
        i1, r2 = _I(nu + 1, x)
        base = i1 * _xp(x, nu - 1) / _struve_pref(nu)
        if not upper:
            return Sides(base, f, r1 + r2)
        d, r3 = sf.ive_diff(nu + 1, 2.0, x)
        e1, _ = sf.ive(nu + 1, x)
        factor = 1.0 + float(d / e1) / (2 * nu + 1)
        return Sides(f, base * factor, r1 + r2 + r3)

    return ev


def _relerr(p: Params) -> Sides:
    nu, x = p.nu, p.x
    d, r1 = sf.ive_diff(nu + 1, 2.0, x)
    e1, r2 = sf.ive(nu + 1, x)
    lhs = d / e1 / (2 * nu + 1)
    rhs = (4 * (nu + 2) * (nu + 3) + (4 * nu + 10) * x) / ((2 * nu + 1) * (2 * (nu + 2) + x) * (2 * (nu + 3) + x))
    return Sides(lhs, ScaledReal(rhs), r1 + r2 + 8 * EPS)


def _nasell(p: Params) -> Sides:
    nu, x = p.nu, p.x
    a, r1 = sf.ive(nu + 1, x)
    b, r2 = sf.ive(nu, x)
    return Sides(ScaledReal(x / (2 * (nu + 1) + x)), a / b, r1 + r2 + 4 * EPS)


def _anu(p: Params) -> Sides:
    nu, x = p.nu, p.x
    a = _a_lo(nu)
    i0, r0 = sf.ive(nu, x)
    i1, r1 = sf.ive(nu + 1, x)
    i2, r2 = sf.ive(nu + 2, x)
    d1, q1 = sf.ive_diff(nu, 1.0, x)
    d2, q2 = sf.ive_diff(nu, 2.0, x)
    margin = (d1 - d2 * a).times_exp(x)
    rhs = (i0 * (1 - a) + i2 * a).times_exp(x)
    cond = float((abs(d1) + abs(d2) * a) / abs(d1 - d2 * a)) if margin.mantissa else 1.0
    rel = max(r0 + r1 + r2, (q1 + q2) * cond * float(abs(margin) / rhs))
    return Sides(i1.times_exp(x), rhs, rel, margin)


def _bnu(p: Params) -> Sides:
    nu, x = p.nu, p.x
    b = _b_lo(nu)
    k0, r0 = sf.kve(nu, x)
    k1, r1 = sf.kve(nu + 1, x)
    k2, r2 = sf.kve(nu + 2, x)
    e1, q1 = sf.kve_diff(nu + 1, 1.0, x)
    base = abs(nu)
    e2, q2 = sf.kve_diff(base, nu + 2 - base, x)
    margin = (e1 - e2 * b).times_exp(-x)
    rhs = (k0 * b + k2 * (1 - b)).times_exp(-x)
    cond = float((abs(e1) + abs(e2) * b) / abs(e1 - e2 * b)) if margin.mantissa else 1.0
    rel = max(r0 + r1 + r2, (q1 + q2) * cond * float(abs(margin) / rhs))
    return Sides(k1.times_exp(-x), rhs, rel, margin)


def _bdsjbc1(upper: bool):
    def ev(p: Params) -> Sides:
        k, r1 = sf.kve(p.nu, p.x)
        i, r2 = sf.ive(p.nu, p.x)
        prod = k * i * p.x
        if upper:
            return Sides(prod, ScaledReal(0.5), r1 + r2 + 2 * EPS)
        return Sides(ScaledReal(0.0), prod, r1 + r2 + 2 * EPS)

    return ev


def _bdsjbc(upper: bool):
    def ev(p: Params) -> Sides:
        k, r1 = sf.kve(p.nu + 1, p.x)
        i, r2 = sf.ive(p.nu, p.x)
        prod = k * i * p.x
        if upper:
            return Sides(prod, ScaledReal(1.0), r1 + r2 + 2 * EPS)
        return Sides(ScaledReal(0.5), prod, r1 + r2 + 2 * EPS)

    return ev


def _imon(p: Params) -> Sides:
    nu, x = p.nu, p.x
    a, r1 = _I(nu, x)
    b, r2 = _I(nu - 1, x)
    d, r3 = sf.ive_diff(nu - 1, 1.0, x)
    return Sides(a, b, max(r1, r2), d.times_exp(x))


def _kmoni(p: Params) -> Sides:
    nu, x = p.nu, p.x
    a, r1 = _K(nu, x)
    b, r2 = _K(nu - 1, x)
    lo = abs(nu)
    d, r3 = sf.kve_diff(lo, abs(nu - 1) - lo, x)
    return Sides(a, b, max(r1, r2), d.times_exp(-x))


def _cake(p: Params) -> Sides:
    nu, x = p.nu, p.x
    a, r1 = _K(nu - 1, x)
    b, r2 = _K(nu, x)
    if nu >= 1.0:
        d, _ = sf.kve_diff(nu - 1, 1.0, x)
    else:
        d, _ = sf.kve_diff(1 - nu, 2 * nu - 1, x)
    return Sides(a, b, max(r1, r2), d.times_exp(-x))


def _stein_case(case_id: str):
    sid, shift = _STEIN_OF[_base_id(case_id)]

    def ev(p: Params) -> Sides:
        v, rel = stein_value(SteinExpression(sid, p.nu, p.beta, p.x, shift))
        return Sides(v, ScaledReal(uniform_bound(case_id, p.nu, p.beta)), rel)

    return ev


# ---------------------------------------------------------------------------
# the registry


_S = Strictness.STRICT
_NS = Strictness.NON_STRICT
_NXB = ("nu", "beta", "x")
_NX = ("nu", "x")
_NNX = ("nu", "n", "x")
_NNBX = ("nu", "beta", "n", "x")


def _xpos(p: Params) -> bool:
    return p.x is None or 0.0 < p.x <= ig.X_LIMIT


def _shift_ok(p: Params) -> bool:
    return p.n > -1 and p.nu > -0.5 * (p.n + 1)


def _case(cid, axes, domain, strict, predicate, evaluator, equality_set="none (strict)", on_equality=None):
    return InequalityCase(
        id=cid,
        axes=axes,
        domain=domain,
        strictness=strict,
        equality_set=equality_set,
        predicate=lambda p: _xpos(p) and predicate(p),
        evaluator=evaluator,
        on_equality=on_equality or (lambda p: False),
    )


def _build() -> dict[str, InequalityCase]:
    c = [
        # integral inequalities with beta >= 0 (lower I) and decay beta <= 0 (upper K)
        _case("propb2a1", _NXB, "beta >= 0, nu > -1/2", _S, lambda p: p.beta >= 0 and p.nu > -0.5, _propb2a1),
        _case(
            "propb2a", _NXB, "beta >= 0, nu > -1", _NS, lambda p: p.beta >= 0 and p.nu > -1, _propb2a,
            "beta = 0", lambda p: p.beta == 0,
        ),
        _case("fff1", _NXB, "decay -beta >= 0 (beta <= 0), nu real", _S, lambda p: p.beta <= 0, _fff1),
        _case(
            "fff", _NXB, "decay -beta >= 0 (beta <= 0), nu real", _NS, lambda p: p.beta <= 0, _fff,
            "beta = 0", lambda p: p.beta == 0,
        ),
        _case(
            # stated for -1 < beta < 1, but I_{nu,beta} + I_{nu,-beta} equals twice the
            # bound, so it fails for every beta < 0
            "doubleivb.lower", ("nu", "beta"), "nu > -1/2, 0 <= beta < 1", _NS,
            lambda p: p.nu > -0.5 and 0 <= p.beta < 1, _doubleivb(False), "beta = 0", lambda p: p.beta == 0,
        ),
        _case(
            "doubleivb.upper", ("nu", "beta"), "nu > -1/2, -1 < beta < 1", _S,
            lambda p: p.nu > -0.5 and abs(p.beta) < 1, _doubleivb(True),
        ),
        # upper-K integrals with 0 < beta < 1
        _case(
            "lowerk", _NXB, "0 < beta < 1, nu <= 1/2", _NS, lambda p: 0 < p.beta < 1 and p.nu <= 0.5, _lowerk,
            "nu = 1/2", lambda p: p.nu == 0.5,
        ),
        _case("lowerk2.lower", _NXB, "0 < beta < 1, nu > 1/2", _S, lambda p: 0 < p.beta < 1 and p.nu > 0.5, _lowerk2(False)),
        _case("lowerk2.upper", _NXB, "0 < beta < 1, nu > 1/2", _S, lambda p: 0 < p.beta < 1 and p.nu > 0.5, _lowerk2(True)),
        _case(
            "lowerk3.lower", _NXB, "0 < beta < 1, nu >= -1/2", _NS, lambda p: 0 < p.beta < 1 and p.nu >= -0.5,
            _lowerk3(False), "nu = -1/2", lambda p: p.nu == -0.5,
        ),
        _case("lowerk3.upper", _NXB, "0 < beta < 1, nu >= -1/2", _S, lambda p: 0 < p.beta < 1 and p.nu >= -0.5, _lowerk3(True)),
        # lower-I integrals with decay gamma = -beta
        _case(
            "besi11", _NNBX, "0 < gamma < 1, n > -1, nu > -(n+1)/2", _S,
            lambda p: 0 < -p.beta < 1 and _shift_ok(p), _besi11,
        ),
        _case("rrrr.lower", _NNX, "n > -1, nu > -(n+1)/2 (gamma = 0)", _S, _shift_ok, _rrrr_lower),
        _case("besi22", _NNX, "n > -1, nu > -(n+1)/2", _S, _shift_ok, _besi22),
        _case("besi225", _NNX, "n > -1, nu > -(n+1)/2", _S, _shift_ok, _besi225),
        _case("besi33", _NXB, "0 < gamma < 1, nu >= 1/2", _S, lambda p: 0 < -p.beta < 1 and p.nu >= 0.5, _besi33),
        _case("besi44", _NXB, "0 < gamma < 1, nu > -1", _S, lambda p: 0 < -p.beta < 1 and p.nu > -1, _besi44),
        _case("besi55", _NXB, "0 < gamma < 1, nu > -1/2", _S, lambda p: 0 < -p.beta < 1 and p.nu > -0.5, _besi55),
        _case(
            "bes18", _NXB, "0 < gamma < 1, nu >= 1/2", _S, lambda p: 0 < -p.beta < 1 and p.nu >= 0.5,
            _gamma_weighted_bound(_bes18_const),
        ),
        _case(
            "op14", _NXB, "a = numerical lower bracket of a_nu, 0 < gamma < min{1/(2(nu+1)a), (2nu+1)/(2(nu+1)(1-a))}",
            _S, _op14_domain, _gamma_weighted_bound(_op14_const),
        ),
        _case(
            "op12", _NXB, "nu > -1/2, 0 < gamma < (2nu+1)/(2(nu+1))", _S,
            lambda p: p.nu > -0.5 and 0 < -p.beta < (2 * p.nu + 1) / (2 * (p.nu + 1)),
            _gamma_weighted_bound(_op12_const),
        ),
        _case("anu", _NX, "-1/2 < nu <= 20, a = numerical lower bracket of a_nu", _S, lambda p: -0.5 < p.nu <= 20, _anu),
        _case("bnu", _NX, "-1/2 < nu <= 20, b = numerical lower bracket of b_nu", _S, lambda p: -0.5 < p.nu <= 20, _bnu),
        # Struve-Bessel double bounds and the ratio bounds behind them
        _case("dob11.lower", _NX, "nu > 1/2", _S, lambda p: 0.5 < p.nu <= 16, _dob11(False)),
        _case("dob11.upper", _NX, "nu > 1/2", _S, lambda p: 0.5 < p.nu <= 16, _dob11(True)),
        _case("dob22.lower", _NX, "nu > -1/2", _S, lambda p: -0.5 < p.nu <= 16, _dob22(False)),
        _case("dob22.upper", _NX, "nu > -1/2", _S, lambda p: -0.5 < p.nu <= 16, _dob22(True)),
        _case("dob22.relerr", _NX, "nu > -1/2", _S, lambda p: p.nu > -0.5, _relerr),
        _case("nasell", _NX, "nu > -1/2", _S, lambda p: p.nu > -0.5, _nasell),
        # products of Bessel functions
        _case(
            "bdsjbc1.lower", _NX, "nu > 1/2", _NS, lambda p: p.nu > 0.5, _bdsjbc1(False),
            "x = 0 only (outside the x > 0 grid)",
        ),
        _case("bdsjbc1.upper", _NX, "nu > 1/2", _S, lambda p: p.nu > 0.5, _bdsjbc1(True)),
        _case("bdsjbc.lower", _NX, "nu >= -1/2", _S, lambda p: p.nu >= -0.5, _bdsjbc(False)),
        _case(
            "bdsjbc.upper", _NX, "nu >= -1/2", _NS, lambda p: p.nu >= -0.5, _bdsjbc(True),
            "x = 0 only (outside the x > 0 grid)",
        ),
        # order monotonicity
        _case("Imon", _NX, "nu >= 1/2", _S, lambda p: p.nu >= 0.5, _imon),
        _case("Kmoni", _NX, "nu < 1/2", _S, lambda p: p.nu < 0.5, _kmoni),
        _case("cake", _NX, "nu >= 1/2", _NS, lambda p: p.nu >= 0.5, _cake, "nu = 1/2", lambda p: p.nu == 0.5),
    ]
    # uniform bounds of the Stein expressions
    stein = [
        ("propb2a12", "beta >= 0, nu > -1/2", lambda p: p.beta >= 0),
        ("propb2a125", "beta >= 0, nu > -1/2", lambda p: p.beta >= 0),
        ("jjj1", "beta >= 0, nu > -1/2", lambda p: p.beta >= 0),
        ("jjj2", "beta >= 0, nu > -1/2", lambda p: p.beta >= 0),
        ("propb2a12.negbeta", "-1 < beta < 0, nu > -1/2", lambda p: p.beta < 0),
        ("propb2a125.negbeta", "-1 < beta < 0, nu > -1/2", lambda p: p.beta < 0),
        ("jjj1.negbeta", "-1 < beta < 0, nu >= 1/2", lambda p: p.beta < 0 and p.nu >= 0.5),
        ("jjj2.negbeta", "-1 < beta < 0, nu >= 1/2", lambda p: p.beta < 0 and p.nu >= 0.5),
        ("fff11", "beta <= 0, nu > -1/2", lambda p: p.beta <= 0),
        ("fff2", "beta <= 0, nu > -1/2", lambda p: p.beta <= 0),
        ("ddd1", "beta <= 0, nu > -1/2", lambda p: p.beta <= 0),
        ("ddd2", "beta <= 0, nu > -1/2", lambda p: p.beta <= 0),
        ("fff11.posbeta", "0 < beta < 1, nu > -1/2", lambda p: p.beta > 0),
        ("fff2.posbeta", "0 < beta < 1, nu > -1/2", lambda p: p.beta > 0),
        ("ddd3", "0 < beta < 1, nu > -1/2", lambda p: p.beta > 0),
        ("ddd4", "0 < beta < 1, nu > -1/2", lambda p: p.beta > 0),
    ]
    for cid, text, pred in stein:
        c.append(
            _case(
                cid, _NXB, text, _S,
                lambda p, pred=pred: p.nu > -0.5 and abs(p.beta) < 1 and pred(p),
                _stein_case(cid),
            )
        )
    out = {case.id: case for case in c}
    assert len(out) == len(c), "duplicate case id"
    return dict(sorted(out.items()))


_REGISTRY = _build()


def list_cases() -> list[InequalityCase]:
    """All registered cases, sorted by id."""
    return list(_REGISTRY.values())


def get_case(case_id: str) -> InequalityCase:
    try:
        return _REGISTRY[case_id]
    except KeyError:
        raise KeyError(f"unknown case {case_id!r}") from None


def make_params(nu: float, x: float | None = None, beta: float | None = None,
                n: float | None = None, gamma: float | None = None) -> Params:
    if gamma is not None:
        if beta is not None and beta != -gamma:
            raise ValueError("give either beta or gamma, not both")
        beta = -gamma
    return Params(
        float(nu),
        None if x is None else float(x),
        None if beta is None else float(beta),
        None if n is None else float(n),
    )


def _record(case: InequalityCase, params: Params) -> MarginRecord:
    s = case.evaluator(params)
    margin = s.margin if s.margin is not None else s.rhs - s.lhs
    scale = max(abs(s.lhs), abs(s.rhs))
    rel = float(margin / scale) if scale.mantissa != 0.0 else 0.0
    return MarginRecord(case.id, params, s.lhs, s.rhs, margin, rel, s.rel_err, case.strictness, case.on_equality(params))


def evaluate(case: InequalityCase, params: Params) -> MarginRecord:
    if not case.in_domain(params):
        raise DomainError(f"{case.id}: parameters {params.as_dict()} outside the domain ({case.domain})")
    return _record(case, params)


def eval_case(case_id: str, nu: float, x: float | None = None, beta: float | None = None,
              n: float | None = None, gamma: float | None = None) -> MarginRecord:
    """Evaluate one case; raises ``DomainError`` when the parameters violate its hypotheses."""
    case = get_case(case_id)
    return evaluate(case, make_params(nu, x, beta, n, gamma))


def inverted(case: InequalityCase) -> InequalityCase:
    """The same case with lhs and rhs swapped (harness self-test)."""

    def ev(p: Params) -> Sides:
        s = case.evaluator(p)
        return Sides(s.rhs, s.lhs, s.rel_err, None if s.margin is None else -s.margin)

    return replace(case, id=case.id + ".inverted", evaluator=ev, on_equality=lambda p: False)


# ---------------------------------------------------------------------------
# grid verification


@dataclass(frozen=True)
class GridSpec:
    nu: tuple[float, ...]
    beta: tuple[float, ...]
    x: tuple[float, ...]
    n: tuple[float, ...]

    def __post_init__(self) -> None:
        for name in ("nu", "beta", "x", "n"):
            vals = tuple(float(v) for v in getattr(self, name))
            if not vals or not all(math.isfinite(v) for v in vals):
                raise ValueError(f"grid axis {name!r} must be a nonempty list of finite reals")
            object.__setattr__(self, name, vals)

    @classmethod
    def default(cls) -> "GridSpec":
        lo, hi, k = -3.0, 2.0, 25
        xs = tuple(10.0 ** (lo + (hi - lo) * i / (k - 1)) for i in range(k))
        return cls(
            nu=(-0.45, -0.25, 0.0, 0.5, 1.0, 2.5, 5.0, 10.0),
            beta=(-0.9, -0.5, 0.0, 0.5, 0.9),
            x=xs,
            n=(-0.5, 0.0, 1.0),
        )

    def points(self, axes: Sequence[str]) -> Iterable[Params]:
        lists = [getattr(self, a) if a in axes else (None,) for a in ("nu", "beta", "n", "x")]
        for nu, beta, n, x in itertools.product(*lists):
            yield Params(nu, x, beta, n)


@dataclass(frozen=True)
class VerifyReport:
    records: tuple[MarginRecord, ...]
    tol: float

    @property
    def violations(self) -> tuple[MarginRecord, ...]:
        return tuple(r for r in self.records if r.violates(self.tol))

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_case(self) -> dict[str, list[MarginRecord]]:
        out: dict[str, list[MarginRecord]] = {}
        for r in self.records:
            out.setdefault(r.id, []).append(r)
        return out


def verify_suite(grid: GridSpec | None = None, tol: float = DEFAULT_TOL,
                 cases: Iterable[InequalityCase | str] | None = None,
                 only_equality: bool = False) -> VerifyReport:
    """Evaluate every case at every in-domain grid point.

    Records come back sorted by case id, then parameters.  With
    ``only_equality`` only points on a case's equality set are kept.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    grid = grid or GridSpec.default()
    chosen = list_cases() if cases is None else [get_case(c) if isinstance(c, str) else c for c in cases]
    records = []
    for case in sorted(chosen, key=lambda c: c.id):
        pts = [p for p in grid.points(case.axes) if case.in_domain(p)]
        if only_equality:
            pts = [p for p in pts if case.on_equality(p)]
        for p in sorted(pts, key=Params.sort_key):
            records.append(_record(case, p))
    return VerifyReport(tuple(records), tol)


# ---------------------------------------------------------------------------
# sharpness probes


@dataclass(frozen=True)
class _ProbeSpec:
    fixed: dict
    axis: str
    values: tuple[float, ...]


_X_INF = (10.0, 20.0, 50.0, 100.0)
_X_ZERO = (1e-1, 1e-2, 1e-3, 1e-4)
_NU_INF = (5.0, 10.0, 20.0, 40.0)

_PROBES: dict[tuple[str, Limit], _ProbeSpec] = {
    ("lowerk2.lower", Limit.X_TO_INF): _ProbeSpec({"nu": 2.0, "beta": 0.3}, "x", _X_INF),
    ("lowerk2.upper", Limit.X_TO_0): _ProbeSpec({"nu": 2.0, "beta": 0.3}, "x", _X_ZERO),
    ("lowerk3.lower", Limit.X_TO_INF): _ProbeSpec({"nu": 1.0, "beta": 0.3}, "x", _X_INF),
    ("lowerk3.upper", Limit.X_TO_0): _ProbeSpec({"nu": 1.0, "beta": 0.3}, "x", _X_ZERO),
    ("besi225", Limit.X_TO_0): _ProbeSpec({"nu": 1.0, "n": 0.0}, "x", _X_ZERO),
    ("besi225", Limit.NU_TO_INF): _ProbeSpec({"x": 1.0, "n": 0.0}, "nu", _NU_INF),
    ("besi22", Limit.NU_TO_INF): _ProbeSpec({"x": 1.0, "n": 0.0}, "nu", _NU_INF),
    ("besi22", Limit.X_TO_INF): _ProbeSpec({"nu": 1.0, "n": 0.0}, "x", _X_INF),
    ("rrrr.lower", Limit.NU_TO_INF): _ProbeSpec({"x": 1.0, "n": 0.0}, "nu", _NU_INF),
    ("rrrr.lower", Limit.X_TO_INF): _ProbeSpec({"nu": 1.0, "n": 0.0}, "x", _X_INF),
    ("besi44", Limit.X_TO_0): _ProbeSpec({"nu": 1.0, "beta": -0.5}, "x", _X_ZERO),
    ("besi55", Limit.X_TO_INF): _ProbeSpec({"nu": 1.0, "beta": -0.5}, "x", _X_INF),
    ("dob11.lower", Limit.X_TO_INF): _ProbeSpec({"nu": 2.0}, "x", _X_INF),
    ("dob11.upper", Limit.X_TO_0): _ProbeSpec({"nu": 2.0}, "x", _X_ZERO),
    ("dob22.lower", Limit.X_TO_INF): _ProbeSpec({"nu": 1.0}, "x", _X_INF),
    ("dob22.upper", Limit.X_TO_INF): _ProbeSpec({"nu": 1.0}, "x", _X_INF),
    ("dob22.upper", Limit.X_TO_0): _ProbeSpec({"nu": 1.0}, "x", _X_ZERO),
}


@dataclass(frozen=True)
class ProbeResult:
    id: str
    limit: Limit
    axis: str
    points: tuple[float, ...]
    ratios: tuple[float, ...]

    @property
    def last(self) -> float:
        return self.ratios[-1]


def registered_probes() -> list[tuple[str, Limit]]:
    return sorted(_PROBES, key=lambda k: (k[0], k[1].value))


def sharpness_probe(case_id: str, limit: Limit | str, **overrides) -> ProbeResult:
    """lhs/rhs ratios along the registered refinement sequence for ``(case_id, limit)``.

    Keyword overrides replace the fixed parameters or, via ``values=``, the
    refinement sequence itself.
    """
    limit = Limit(limit)
    try:
        spec = _PROBES[(case_id, limit)]
    except KeyError:
        raise KeyError(f"no sharpness claim registered for ({case_id!r}, {limit.value!r})") from None
    values = tuple(overrides.pop("values", spec.values))
    fixed = {**spec.fixed, **overrides}
    case = get_case(case_id)
    ratios = []
    for v in values:
        rec = evaluate(case, make_params(**{**fixed, spec.axis: v}))
        ratios.append(float(rec.lhs / rec.rhs))
    return ProbeResult(case_id, limit, spec.axis, values, tuple(ratios))
