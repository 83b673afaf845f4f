"""Exponentially weighted integrals of modified Bessel functions.

Three families are supported::

    lower_i      int_0^x     e^{beta t} t^p I_nu(t) dt
    upper_k      int_x^inf   e^{beta t} t^p K_nu(t) dt
    full_line_k  int_R       e^{beta t} |t|^nu K_nu(|t|) dt

Order and power are independent parameters, since shifted orders with an
unshifted power occur (``t^nu I_{nu+n}(t)``).

Quadrature is anchored at the dyadic points ``2^j``: the integral over each
``[2^j, 2^{j+1}]`` is computed once per ``(family, nu, beta, p)`` and cached,
so a sweep over many endpoints only pays for one partial panel per query.
Below ``2^-40`` the leading small-argument behaviour of ``I_nu``/``K_nu``
is integrated in closed form; above the last segment of an ``upper_k``
integral the tail is bounded analytically and the bound is reported in the
error.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass

from . import specfun as sf
from .quadrature import integrate_log
from .scaled import EPS, LN2, DomainError, EvalResult, ScaledReal, Status, scaled_sum

J_MIN = -40
T_MIN = 2.0**J_MIN
X_LIMIT = 1.0e3
SEGMENT_RTOL = 1e-13
TAIL_RTOL = 1e-16
RESULT_TOL = 1e-9
LOG_SQRT_HALF_PI = 0.5 * math.log(0.5 * math.pi)


class Family(str, enum.Enum):
    LOWER_I = "lower_i"
    UPPER_K = "upper_k"
    FULL_LINE_K = "full_line_k"


@dataclass(frozen=True)
class IntegralSpec:
    """One weighted integral; ``nu`` is the Bessel order and ``p`` the power of ``t``."""

    family: Family
    nu: float
    beta: float
    p: float
    x: float = 0.0


# ---------------------------------------------------------------------------
# integrands in log form


def _log_i_integrand(nu: float, beta: float, p: float):
    def f(t: float) -> tuple[float, float]:
        v, rel = sf.ive(nu, t)
        lv = v.log() + t + beta * t + p * math.log(t)
        return lv, rel + EPS * (abs(lv) + 1.0)

    return f


def _log_k_integrand(nu: float, beta: float, p: float):
    a = abs(nu)

    def f(t: float) -> tuple[float, float]:
        v, rel = sf.kve(a, t)
        lv = v.log() - t + beta * t + p * math.log(t)
        return lv, rel + EPS * (abs(lv) + 1.0)

    return f


def _power_moment(log_coef: float, s: float, beta: float, eps: float) -> ScaledReal:
    """``exp(log_coef) * int_0^eps t^s (1 + beta t) dt`` for ``s > -1``."""
    lead = ScaledReal.from_log(log_coef + (s + 1.0) * math.log(eps))
    return lead * (1.0 / (s + 1.0) + beta * eps / (s + 2.0))


def _lower_i_origin(nu: float, beta: float, p: float, eps: float) -> ScaledReal:
    # I_nu(t) ~ (t/2)^nu / Gamma(nu+1); relative corrections are O(eps^2)
    return _power_moment(-nu * LN2 - math.lgamma(nu + 1.0), p + nu, beta, eps)


def _upper_k_origin(nu: float, beta: float, p: float, eps: float) -> ScaledReal:
    """int_0^eps e^{beta t} t^p K_nu(t) dt from the small-argument form of K_nu."""
    a = abs(nu)
    if a < 1e-3:
        # K_0(t) ~ -log(t/2) - gamma; for tiny |nu| the error is O(nu^2 log^2 eps)
        s = p
        lead = ScaledReal.from_log((s + 1.0) * math.log(eps) - math.log(s + 1.0))
        bracket = -math.log(eps) + 1.0 / (s + 1.0) + LN2 - sf.EULER_GAMMA
        return lead * bracket * (1.0 + beta * eps * (s + 1.0) / (s + 2.0))
    # K_a(t) ~ Gamma(a)/2 (t/2)^{-a} + Gamma(-a)/2 (t/2)^{a}, second term only for a < 1
    out = _power_moment(math.lgamma(a) + (a - 1.0) * LN2, p - a, beta, eps)
    if a < 1.0:
        g = math.gamma(-a)
        second = _power_moment(math.log(-g) - (a + 1.0) * LN2, p + a, beta, eps)
        out = out + (-second if g < 0 else second)
    return out


# ---------------------------------------------------------------------------
# anchored cumulative integrals


class _Anchored:
    """Cached dyadic-segment integrals for one integrand."""

    def __init__(self, family: Family, nu: float, beta: float, p: float) -> None:
        self.family = family
        self.nu, self.beta, self.p = nu, beta, p
        if family is Family.LOWER_I:
            self.logf = _log_i_integrand(nu, beta, p)
        else:
            self.logf = _log_k_integrand(nu, beta, p)
        self._segments: dict[int, tuple[ScaledReal, ScaledReal]] = {}
        self._lock = threading.Lock()

    def segment(self, j: int) -> tuple[ScaledReal, ScaledReal]:
        """Integral over ``[2^j, 2^{j+1}]`` and its absolute error."""
        with self._lock:
            hit = self._segments.get(j)
        if hit is not None:
            return hit
        r = integrate_log(self.logf, math.ldexp(1.0, j), math.ldexp(1.0, j + 1), rtol=SEGMENT_RTOL)
        out = (r.value, r.err)
        with self._lock:
            self._segments.setdefault(j, out)
        return out

    def piece(self, a: float, b: float) -> tuple[ScaledReal, ScaledReal]:
        if not b > a:
            return ScaledReal(0.0), ScaledReal(0.0)
        r = integrate_log(self.logf, a, b, rtol=SEGMENT_RTOL)
        return r.value, r.err

    # lower-I: int_0^x ------------------------------------------------------

    def lower(self, x: float) -> tuple[ScaledReal, ScaledReal]:
        if x == 0.0:
            return ScaledReal(0.0), ScaledReal(0.0)
        if x <= T_MIN:
            v = _lower_i_origin(self.nu, self.beta, self.p, x)
            return v, abs(v) * 1e-14
        _, e = math.frexp(x)
        j = e - 1  # 2^j <= x < 2^{j+1}
        vals = [_lower_i_origin(self.nu, self.beta, self.p, T_MIN)]
        errs = [abs(vals[0]) * 1e-14]
        for k in range(J_MIN, j):
            v, er = self.segment(k)
            vals.append(v)
            errs.append(er)
        v, er = self.piece(math.ldexp(1.0, j), x)
        vals.append(v)
        errs.append(er)
        return scaled_sum(vals), scaled_sum(errs)

    # upper-K: int_x^inf ----------------------------------------------------

    def _tail_log_bound(self, t: float) -> float:
        """log of an upper bound for int_t^inf e^{beta s} s^p K_nu(s) ds (or +inf)."""
        c = 1.0 - self.beta
        q = self.p - 0.5
        denom = c - max(q, 0.0) / t
        if denom <= 0.0:
            return math.inf
        kv, _ = sf.kve(abs(self.nu), t)
        # e^s sqrt(s) K_nu(s) is monotone in s with limit sqrt(pi/2)
        log_c = max(LOG_SQRT_HALF_PI, kv.log() + 0.5 * math.log(t))
        return log_c + q * math.log(t) - c * t - math.log(denom)

    def upper(self, x: float) -> tuple[ScaledReal, ScaledReal]:
        vals: list[ScaledReal] = []
        errs: list[ScaledReal] = []
        if x < T_MIN:
            v0 = _upper_k_origin(self.nu, self.beta, self.p, T_MIN)
            if x > 0.0:
                v0 = v0 - _upper_k_origin(self.nu, self.beta, self.p, x)
            vals.append(v0)
            errs.append(abs(v0) * 1e-13)
            j = J_MIN
        else:
            m, e = math.frexp(x)
            j = e - 1 if m == 0.5 else e  # smallest j with 2^j >= x
            v, er = self.piece(x, math.ldexp(1.0, j))
            vals.append(v)
            errs.append(er)
        j_stop = int(math.log2(sf.X_MAX))
        tail = ScaledReal(math.inf)
        while j < j_stop:
            v, er = self.segment(j)
            vals.append(v)
            errs.append(er)
            j += 1
            t_end = math.ldexp(1.0, j)
            acc = scaled_sum(vals)
            if t_end > 2.0 * max(self.p, 1.0) / (1.0 - self.beta):
                lb = self._tail_log_bound(t_end)
                if lb - acc.log() < math.log(TAIL_RTOL):
                    tail = ScaledReal.from_log(lb)
                    break
        else:
            lb = self._tail_log_bound(math.ldexp(1.0, j))
            tail = ScaledReal.from_log(lb) if math.isfinite(lb) else ScaledReal(math.inf)
        errs.append(tail)
        return scaled_sum(vals), scaled_sum(errs)


_CACHE: dict[tuple, _Anchored] = {}
_CACHE_LOCK = threading.Lock()
_CACHE_MAX = 8192


def _anchored(family: Family, nu: float, beta: float, p: float) -> _Anchored:
    key = (family, float(nu), float(beta), float(p))
    with _CACHE_LOCK:
        obj = _CACHE.get(key)
        if obj is None:
            if len(_CACHE) >= _CACHE_MAX:
                _CACHE.clear()
            obj = _CACHE[key] = _Anchored(family, nu, beta, p)
    return obj


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


# ---------------------------------------------------------------------------
# kernels (raise DomainError) used by the registry


def _check_lower(nu: float, beta: float, p: float, x: float) -> None:
    if not all(math.isfinite(v) for v in (nu, beta, p, x)):
        raise DomainError("lower_i: non-finite parameter")
    if not (-1.0 < nu <= sf.KERNEL_ORDER_MAX):
        raise DomainError(f"lower_i: order {nu} outside (-1, {sf.KERNEL_ORDER_MAX}]")
    if not p + nu > -1.0:
        raise DomainError("lower_i: p + nu must exceed -1 (integrability at 0)")
    if not (0.0 <= x <= X_LIMIT):
        raise DomainError(f"lower_i: x={x} outside [0, {X_LIMIT}]")


def _check_upper(nu: float, beta: float, p: float, x: float) -> None:
    if not all(math.isfinite(v) for v in (nu, beta, p, x)):
        raise DomainError("upper_k: non-finite parameter")
    if abs(nu) > sf.KERNEL_ORDER_MAX:
        raise DomainError(f"upper_k: order {nu} outside the supported range")
    if not beta < 1.0:
        raise DomainError("upper_k: beta must be < 1 (integrability at infinity)")
    if not (0.0 <= x <= X_LIMIT):
        raise DomainError(f"upper_k: x={x} outside [0, {X_LIMIT}]")
    if x == 0.0 and not p - abs(nu) > -1.0:
        raise DomainError("upper_k: integral diverges at the origin")


def lower_i_value(nu: float, beta: float, p: float, x: float) -> tuple[ScaledReal, ScaledReal]:
    """int_0^x e^{beta t} t^p I_nu(t) dt as (value, abs error)."""
    _check_lower(nu, beta, p, x)
    return _anchored(Family.LOWER_I, nu, beta, p).lower(x)


def upper_k_value(nu: float, beta: float, p: float, x: float) -> tuple[ScaledReal, ScaledReal]:
    """int_x^inf e^{beta t} t^p K_nu(t) dt as (value, abs error)."""
    _check_upper(nu, beta, p, x)
    return _anchored(Family.UPPER_K, abs(nu), beta, p).upper(x)


def _result(value: ScaledReal, err: ScaledReal, tol: float = RESULT_TOL) -> EvalResult:
    rel = float(err / abs(value)) if value.mantissa != 0.0 else 0.0
    status = Status.OK if rel <= tol else Status.REDUCED_ACCURACY
    return EvalResult(value, err, status)


# ---------------------------------------------------------------------------
# public operations


def int_lower_i(spec: IntegralSpec) -> EvalResult:
    """int_0^x e^{beta t} t^p I_nu(t) dt."""
    if spec.family is not Family.LOWER_I:
        return EvalResult.out_of_domain()
    try:
        v, e = lower_i_value(spec.nu, spec.beta, spec.p, spec.x)
    except DomainError:
        return EvalResult.out_of_domain()
    return _result(v, e)


def int_upper_k(spec: IntegralSpec) -> EvalResult:
    """int_x^inf e^{beta t} t^p K_nu(t) dt, tail bound included in the error."""
    if spec.family is not Family.UPPER_K:
        return EvalResult.out_of_domain()
    try:
        v, e = upper_k_value(spec.nu, spec.beta, spec.p, spec.x)
    except DomainError:
        return EvalResult.out_of_domain()
    return _result(v, e)


def i_nu_beta_value(nu: float, beta: float) -> tuple[ScaledReal, ScaledReal]:
    if not (nu > -0.5 and abs(beta) < 1.0 and nu <= sf.KERNEL_ORDER_MAX):
        raise DomainError("I_{nu,beta} needs nu > -1/2 and |beta| < 1")
    return upper_k_value(nu, beta, nu, 0.0)


def i_nu_beta(nu: float, beta: float) -> EvalResult:
    """I_{nu,beta} = int_0^inf e^{beta t} t^nu K_nu(t) dt."""
    try:
        v, e = i_nu_beta_value(nu, beta)
    except DomainError:
        return EvalResult.out_of_domain()
    return _result(v, e)


def full_line_closed_form(nu: float, beta: float) -> float:
    """sqrt(pi) Gamma(nu+1/2) 2^nu / (1-beta^2)^{nu+1/2}."""
    return math.exp(
        0.5 * math.log(math.pi) + math.lgamma(nu + 0.5) + nu * LN2 - (nu + 0.5) * math.log1p(-beta * beta)
    )


def full_line_k(nu: float, beta: float) -> EvalResult:
    """Closed form of int_R e^{beta t}|t|^nu K_nu(|t|) dt, cross-checked by quadrature.

    The value is the closed form; if the two one-sided quadratures disagree with
    it by more than 1e-8 (relative) the status is ``reduced_accuracy``.
    """
    if not (nu > -0.5 and abs(beta) < 1.0 and nu <= sf.ORDER_MAX):
        return EvalResult.out_of_domain()
    exact = full_line_closed_form(nu, beta)
    a, ea = i_nu_beta_value(nu, beta)
    b, eb = i_nu_beta_value(nu, -beta)
    quad = float(a + b)
    rel = abs(quad - exact) / exact
    status = Status.OK if rel <= 1e-8 else Status.REDUCED_ACCURACY
    return EvalResult(ScaledReal(exact), ScaledReal(exact * 4.0 * EPS), status)


# ---------------------------------------------------------------------------
# Struve closed forms at beta = 0, p = nu


class StruveKind(str, enum.Enum):
    LOWER_I_P_EQ_NU = "lower_i_p_eq_nu"
    UPPER_K_P_EQ_NU = "upper_k_p_eq_nu"


def _struve_prefactor_log(nu: float) -> float:
    return 0.5 * math.log(math.pi) + (nu - 1.0) * LN2 + math.lgamma(nu + 0.5)


def struve_bessel_f(nu: float, x: float) -> tuple[ScaledReal, float]:
    """F_nu(x) = I_nu L_{nu-1} - I_{nu-1} L_nu for nu > -1/2 (value, relative error).

    Written as ``I_{nu-1} M_nu - I_nu M_{nu-1}`` with ``M = I - L``, which has
    no exponential cancellation; the plain form is used for ``x < 1``.
    """
    if not (nu > -0.5) or nu > sf.STRUVE_ORDER_MAX + 1 or not (0.0 < x <= sf.STRUVE_X_MAX):
        raise DomainError("F_nu needs nu > -1/2 and 0 < x <= 1e3")
    i0, ei0 = sf.ive(nu, x)
    i1, ei1 = sf.ive(nu - 1.0, x)
    if x < 1.0:
        l1, el1 = sf.lve(nu - 1.0, x)
        l0, el0 = sf.lve(nu, x)
        a = i0 * l1
        b = i1 * l0
        d = (a - b).times_exp(2.0 * x)
        scale = float((abs(a) + abs(b)) / abs(a - b))
        return d, (ei0 + ei1 + el0 + el1 + 2 * EPS) * scale
    m0, em0 = sf.struve_m(nu, x)
    m1, em1 = sf.struve_m(nu - 1.0, x)
    a = i1 * m0
    b = i0 * m1
    d = (a - b).times_exp(x)
    scale = float((abs(a) + abs(b)) / abs(a - b))
    rel = (ei0 + ei1 + em0 / abs(m0) + em1 / abs(m1) + 2 * EPS) * scale
    return d, rel


def struve_bessel_g(nu: float, x: float) -> tuple[ScaledReal, float]:
    """G_nu(x) = 1 - x (K_nu L_{nu-1} + K_{nu-1} L_nu) for nu > 1/2 (value, relative error).

    By the Wronskian this equals ``x (K_nu M_{nu-1} + K_{nu-1} M_nu)``, a sum of
    positive terms.
    """
    if not (nu > 0.5) or nu > sf.STRUVE_ORDER_MAX + 1 or not (0.0 < x <= sf.STRUVE_X_MAX):
        raise DomainError("G_nu needs nu > 1/2 and 0 < x <= 1e3")
    k0, ek0 = sf.kve(nu, x)
    k1, ek1 = sf.kve(nu - 1.0, x)
    m0, em0 = sf.struve_m(nu, x)
    m1, em1 = sf.struve_m(nu - 1.0, x)
    v = (k0 * m1 + k1 * m0).times_exp(-x) * x
    rel = max(ek0, ek1) + max(em0 / abs(m0), em1 / abs(m1)) + 4 * EPS
    return v, rel


def closed_form_struve_value(kind: StruveKind, nu: float, x: float) -> tuple[ScaledReal, float]:
    kind = StruveKind(kind)
    pref = ScaledReal.from_log(_struve_prefactor_log(nu))
    if kind is StruveKind.LOWER_I_P_EQ_NU:
        f, rel = struve_bessel_f(nu, x)
        return pref * f * x, rel + 4 * EPS
    g, rel = struve_bessel_g(nu, x)
    return pref * g, rel + 4 * EPS


def closed_form_struve(kind: StruveKind | str, nu: float, x: float) -> EvalResult:
    """Struve closed forms of int_0^x t^nu I_nu and int_x^inf t^nu K_nu."""
    try:
        v, rel = closed_form_struve_value(StruveKind(kind), nu, x)
    except (DomainError, ValueError):
        return EvalResult.out_of_domain()
    return EvalResult.build(v, rel, ok_tol=1e-10)
