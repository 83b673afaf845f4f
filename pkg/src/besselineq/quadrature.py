"""Adaptive Gauss-Kronrod (7/15) quadrature for positive integrands given in log form.

The integrands of this package are products such as ``e^{beta t} t^p I_nu(t)``
whose magnitude leaves the float range long before ``t`` reaches the
working limits.  The callables handed to :func:`integrate_log` therefore
return ``log f(t)``; panel sums are accumulated relative to a running
reference scale and the result comes back as a :class:`ScaledReal`.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

from .scaled import EPS, ScaledReal

# QUADPACK qk15 abscissae and weights.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

LogIntegrand = Callable[[float], "tuple[float, float]"]


@dataclass(frozen=True)
class QuadResult:
    value: ScaledReal
    err: ScaledReal
    panels: int

    @property
    def rel_err(self) -> float:
        if self.value.mantissa == 0.0:
            return 0.0 if self.err.mantissa == 0.0 else math.inf
        return float(self.err / self.value)


def _panel(logf: LogIntegrand, a: float, b: float):
    """Node logs of one panel: returns (half-width, logs, worst kernel rel error)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    logs = []
    worst = 0.0
    for xk in _XGK[:-1]:
        for t in (c - h * xk, c + h * xk):
            lv, r = logf(t)
            logs.append(lv)
            worst = max(worst, r)
    lv, r = logf(c)
    logs.append(lv)
    worst = max(worst, r)
    return h, logs, worst


def _sums(h: float, logs, ref: float) -> tuple[float, float]:
    f = [math.exp(v - ref) if v != -math.inf else 0.0 for v in logs]
    k = _WGK[7] * f[14]
    g = _WG[3] * f[14]
    for j in range(7):
        pair = f[2 * j] + f[2 * j + 1]
        k += _WGK[j] * pair
        if j % 2 == 1:
            g += _WG[j // 2] * pair
    # QUADPACK's error scaling: |K - G| overstates the Kronrod error badly
    # once the panel is resolved
    mean = 0.5 * k
    asc = _WGK[7] * abs(f[14] - mean) + sum(
        _WGK[j] * (abs(f[2 * j] - mean) + abs(f[2 * j + 1] - mean)) for j in range(7)
    )
    diff = abs(k - g)
    err = diff
    if asc > 0.0 and diff > 0.0:
        err = asc * min(1.0, (200.0 * diff / asc) ** 1.5)
    return h * k, h * err


def integrate_log(
    logf: LogIntegrand,
    a: float,
    b: float,
    rtol: float = 1e-13,
    max_panels: int = 2000,
) -> QuadResult:
    """Integrate ``exp(logf(t))`` over ``[a, b]`` (``a < b``, integrand positive).

    ``logf`` returns ``(log f(t), relative error of f(t))``.  Panels are
    bisected largest-error-first until the summed Kronrod/Gauss difference
    drops below ``rtol`` times the running total.
    """
    if not b > a:
        return QuadResult(ScaledReal(0.0), ScaledReal(0.0), 0)
    h, logs, worst = _panel(logf, a, b)
    ref = max(logs)
    if ref == -math.inf:
        return QuadResult(ScaledReal(0.0), ScaledReal(0.0), 1)
    val, err = _sums(h, logs, ref)
    heap = [(-err, a, b, val, err)]
    total, total_err = val, err
    n = 1
    while total_err > rtol * total and n < max_panels:
        _, pa, pb, pv, pe = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        if not (pa < mid < pb):
            heapq.heappush(heap, (0.0, pa, pb, pv, pe))
            break
        parts = []
        for lo, hi in ((pa, mid), (mid, pb)):
            hh, ll, w = _panel(logf, lo, hi)
            worst = max(worst, w)
            top = max(ll)
            if top > ref + 500.0:
                # the integrand grew far past the reference: rescale everything
                shift = math.exp(ref - top)
                heap = [(-e * shift, x0, x1, v * shift, e * shift) for (_, x0, x1, v, e) in heap]
                heapq.heapify(heap)
                pv *= shift
                pe *= shift
                parts = [(x0, x1, v * shift, e * shift) for (x0, x1, v, e) in parts]
                ref = top
            v, e = _sums(hh, ll, ref)
            parts.append((lo, hi, v, e))
        for lo, hi, v, e in parts:
            heapq.heappush(heap, (-e, lo, hi, v, e))
        n += 1
        total = math.fsum(item[3] for item in heap)
        total_err = math.fsum(item[4] for item in heap)
    total = math.fsum(item[3] for item in heap)
    total_err = math.fsum(item[4] for item in heap)
    err = total_err + (worst + 4.0 * EPS) * total
    return QuadResult(ScaledReal.scaled(total, ref), ScaledReal.scaled(err, ref), n)
