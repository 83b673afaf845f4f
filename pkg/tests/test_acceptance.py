"""Acceptance criteria 1-8, one test each.

Every test records a PASS/FAIL line (shown in the terminal summary of the
run) before asserting, so a failing criterion still reports its numbers.
"""

import math
import time

import pytest

from besselineq import integrals as ig
from besselineq import registry as reg
from besselineq import sharp
from besselineq import specfun as sf
from besselineq import tables
from besselineq.integrals import Family, IntegralSpec, StruveKind
from besselineq.registry import Limit, SteinExpression

from conftest import ACCEPTANCE

GRID = reg.GridSpec.default()


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def rel(a, b):
    return abs(a / b - 1.0)


def test_criterion_1_tables():
    t0 = time.perf_counter()
    cells = tables.reproduce_table("T1") + tables.reproduce_table("T2")
    elapsed = time.perf_counter() - t0
    worst = tables.max_reference_diff(cells)
    n_ok = sum(c.diff <= tables.COMPARE_BAND for c in cells)
    ok = len(cells) == 84 and n_ok == 84 and elapsed < 60
    record(1, ok, f"{n_ok}/84 cells within 5e-4 (max |diff| {worst:.1e}), {elapsed:.2f} s")


def test_criterion_2_a0():
    est = sharp.estimate_a(0.0)
    threshold = sharp.op14_gamma_limit(0.0, est.value)
    ok = 0.23 <= est.value <= 0.27 and abs(threshold - 0.66) <= 0.05
    record(2, ok, f"a_0 = {est.value:.6f} (argmin {est.argmin_x}), gamma threshold at nu=0 = {threshold:.4f}")


def test_criterion_3_inequality_suite(default_report):
    n = len(default_report.records)
    viol = len(default_report.violations)
    eq_grid = reg.GridSpec(nu=(-0.5, 0.0, 0.5, 1.0, 2.5), beta=(0.0, 0.3, 0.5, 0.9), x=GRID.x, n=(0.0,))
    eq = reg.verify_suite(eq_grid, cases=["propb2a", "fff", "lowerk", "lowerk3.lower"], only_equality=True)
    ids = {r.id for r in eq.records}
    worst_eq = max(abs(r.rel_margin) for r in eq.records)
    ok = viol == 0 and n >= 5000 and ids == {"propb2a", "fff", "lowerk", "lowerk3.lower"} and worst_eq <= 1e-8
    record(3, ok, f"{n} records, {viol} violations; {len(eq.records)} equality-set points, max |rel_margin| {worst_eq:.1e}")


def test_criterion_4_oracle_equivalences():
    worst = {"diffone": 0.0, "diffKi": 0.0, "chicot": 0.0, "chicot0": 0.0}
    for nu in GRID.nu:
        for x in GRID.x:
            q = ig.int_lower_i(IntegralSpec(Family.LOWER_I, nu, 0.0, nu + 1, x)).value
            worst["diffone"] = max(worst["diffone"], rel(float(q / sf.bessel_i(nu + 1, x).value), x ** (nu + 1)))
            q = ig.int_upper_k(IntegralSpec(Family.UPPER_K, nu, 0.0, nu + 1, x)).value
            worst["diffKi"] = max(worst["diffKi"], rel(float(q / sf.bessel_k(nu + 1, x).value), x ** (nu + 1)))
            if nu > -0.5:
                q = ig.int_lower_i(IntegralSpec(Family.LOWER_I, nu, 0.0, nu, x)).value
                c = ig.closed_form_struve(StruveKind.LOWER_I_P_EQ_NU, nu, x).value
                worst["chicot"] = max(worst["chicot"], rel(float(c / q), 1.0))
            if nu > 0.5:
                q = ig.int_upper_k(IntegralSpec(Family.UPPER_K, nu, 0.0, nu, x)).value
                c = ig.closed_form_struve(StruveKind.UPPER_K_P_EQ_NU, nu, x).value
                worst["chicot0"] = max(worst["chicot0"], rel(float(c / q), 1.0))
    ok = all(v <= 1e-7 for v in worst.values())
    record(4, ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


def _I(nu, x):
    v, _ = sf.ive(nu, x)
    return v.times_exp(x)


def _K(nu, x):
    v, _ = sf.kve(nu, x)
    return v.times_exp(-x)


def test_criterion_5_identities():
    xs = GRID.x
    nus = [-0.5, -0.25, 0.0, 0.5, 1.0, 2.5, 5.0, 10.0]
    wr = max(abs(x * float(_I(nu, x) * _K(nu + 1, x) + _I(nu + 1, x) * _K(nu, x)) - 1) for nu in nus for x in xs)

    pdfk = 0.0
    for nu in GRID.nu:
        for beta in (0.0, 0.3, 0.5, 0.9):
            s = ig.i_nu_beta(nu, beta).value + ig.i_nu_beta(nu, -beta).value
            pdfk = max(pdfk, rel(float(s), ig.full_line_closed_form(nu, beta)))

    rec = 0.0
    for nu in nus:
        for x in xs:
            ip, im, i0 = (float(sf.ive(nu + k, x)[0]) for k in (1, -1, 0))
            t = 2 * nu / x * i0
            if abs(im) + abs(t) > 1e6 * abs(im - t):
                rec = max(rec, rel(ip + t, im))
            else:
                rec = max(rec, rel(ip, im - t))

    deriv = 0.0
    for nu in (0.0, 0.5, 1.0, 2.5, 5.0):
        for x in (0.05, 0.5, 1.0, 5.0, 20.0, 60.0):
            h = 1e-5 * max(1.0, x)
            fi = lambda t: t**nu * float(_I(nu, t))  # noqa: E731
            fk = lambda t: t**nu * float(_K(nu, t))  # noqa: E731
            deriv = max(deriv, rel((fi(x + h) - fi(x - h)) / (2 * h), x**nu * float(_I(nu - 1, x))))
            deriv = max(deriv, rel((fk(x + h) - fk(x - h)) / (2 * h), -(x**nu) * float(_K(nu - 1, x))))

    ok = wr <= 1e-10 and pdfk <= 1e-8 and rec <= 1e-9 and deriv <= 1e-6
    record(5, ok, f"Wronskian {wr:.1e}, two-sided integral {pdfk:.1e}, recurrence {rec:.1e}, derivatives {deriv:.1e}")


def test_criterion_6_sharpness():
    p = reg.sharpness_probe("lowerk2.lower", Limit.X_TO_INF, values=(50.0,))
    r1 = p.last
    r2 = reg.sharpness_probe("lowerk2.upper", Limit.X_TO_0, values=(1e-3,)).last
    r3 = reg.sharpness_probe("besi225", Limit.X_TO_0, values=(1e-3,)).last
    r4 = reg.sharpness_probe("besi225", Limit.NU_TO_INF, values=(40.0,)).last
    ok = abs(r1 - 1) <= 0.05 and abs(r2 - 1) <= 1e-3 and abs(r3 - 1) <= 1e-3 and abs(r4 - 1) <= 0.02
    record(6, ok, f"lowerk2.lower@50 {r1:.4f}, lowerk2.upper@1e-3 {r2:.6f}, besi225@1e-3 {r3:.8f}, besi225@nu=40 {r4:.7f}")


STEIN_IDS = [c.id for c in reg.list_cases() if c.id.split(".")[0] in reg._STEIN_OF]
STEIN_X = tuple(10.0 ** (-3 + 6 * i / 47) for i in range(48))  # 1e-3 .. 1e3


def test_criterion_7_uniform_bounds():
    worst = 0.0
    worst_at = None
    s2b_max = 0.0
    grid = reg.GridSpec(nu=GRID.nu, beta=GRID.beta, x=STEIN_X, n=(0.0,))
    for cid in STEIN_IDS:
        case = reg.get_case(cid)
        sid, shift = reg._STEIN_OF[cid.split(".")[0]]
        for p in grid.points(case.axes):
            if not case.in_domain(p):
                continue
            v = float(reg.stein_expression(SteinExpression(sid, p.nu, p.beta, p.x, shift)).value)
            r = v / reg.uniform_bound(cid, p.nu, p.beta)
            if r > worst:
                worst, worst_at = r, (cid, p.nu, p.beta, p.x)
            if sid is reg.SteinId.S2B and shift == 1 and p.beta == 0.0:
                s2b_max = max(s2b_max, r)
    # same 1e-9 evaluation tolerance as the inequality suite: at nu = 1/2 the
    # ddd3 ratio is 1 - e^{-2x}, equal to 1 in double precision for large x
    ok = worst <= 1 + 1e-9 and s2b_max >= 0.9
    record(
        7, ok,
        f"{len(STEIN_IDS)} bounds, max expression/constant 1{worst - 1:+.1e} at {worst_at}; "
        f"S2b (beta=0) max {s2b_max:.6f}",
    )


def test_criterion_8_open_region():
    parts = []
    ok = True
    for nu, beta in ((0.0, -0.5), (0.25, -0.9)):
        est = sharp.empirical_sup("open3", nu, beta, 500.0)
        located = isinstance(est.argmin_x, float) and 0 < est.argmin_x <= 500
        ok &= math.isfinite(est.value) and located
        uncovered = []
        for cid in ("jjj1", "jjj2"):
            try:
                reg.uniform_bound(cid, nu, beta)
                uncovered.append(False)
            except reg.UncoveredRegion:
                uncovered.append(True)
        ok &= all(uncovered)
        parts.append(f"(nu={nu}, beta={beta}) sup {est.value:.4f} at x={est.argmin_x:.3g}, uncovered={all(uncovered)}")
    record(8, ok, "; ".join(parts))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
