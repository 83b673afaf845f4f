import math
import warnings

import mpmath as mp
import numpy as np
import pytest

from besselineq import sharp
from besselineq.scaled import DomainError
from besselineq.sharp import Kind

mp.mp.dps = 50


def test_a_ratio_limits():
    assert sharp.a_ratio(0.0, 1e-5) == pytest.approx(1.0, abs=1e-4)
    assert sharp.a_ratio(0.0, 1e4) == pytest.approx(0.25, abs=1e-3)
    assert sharp.a_ratio(2.0, 1e4) == pytest.approx(5 / 12, abs=2e-3)


@pytest.mark.parametrize("nu,x", [(0.0, 1e4), (2.0, 1e4), (0.0, 3.0), (5.0, 0.01)])
def test_a_ratio_vs_mpmath(nu, x):
    with mp.workdps(60):
        want = (mp.besseli(nu, x) - mp.besseli(nu + 1, x)) / (mp.besseli(nu, x) - mp.besseli(nu + 2, x))
    assert sharp.a_ratio(nu, x) == pytest.approx(float(want), rel=1e-10)


def test_b_ratio_limits():
    assert sharp.b_ratio(0.0, 1e-4) == pytest.approx(1.0, abs=1e-3)
    assert sharp.b_ratio(0.0, 1e4) == pytest.approx(0.75, abs=5e-3)


@pytest.mark.parametrize("nu,x", [(0.0, 1e4), (0.0, 1.0), (3.0, 0.1), (-0.3, 20.0)])
def test_b_ratio_vs_mpmath(nu, x):
    k = lambda v: mp.besselk(v, x)  # noqa: E731
    want = (k(nu + 2) - k(nu + 1)) / (k(nu + 2) - k(nu))
    assert sharp.b_ratio(nu, x) == pytest.approx(float(want), rel=1e-10)


def test_ratios_stay_accurate_at_small_x():
    with warnings.catch_warnings():
        warnings.simplefilter("error", sharp.ReducedAccuracyWarning)
        for x in (1e-3, 1e-2):
            sharp.a_ratio(0.0, x)
            sharp.b_ratio(0.0, x)


def test_estimate_a0():
    est = sharp.estimate_a(0.0)
    assert est.kind is Kind.A
    assert 0.23 <= est.value <= 0.27
    assert est.lo <= est.value <= est.hi
    assert 0 <= est.lo and est.hi <= 1 and est.hi - est.lo <= 1e-4
    assert est.argmin_x == sharp.LIMIT_AT_INFINITY


def test_estimate_a_below_one():
    for nu in (-0.45, 0.0, 1.0, 5.0, 20.0):
        assert sharp.estimate_a(nu).value < 1


def test_estimate_a5_grid_consistency():
    est = sharp.estimate_a(5.0)
    grid = np.logspace(-3, 4, 200)
    assert min(sharp.a_ratio(5.0, float(x)) for x in grid) >= est.value - 1e-4


def test_estimate_b0():
    est = sharp.estimate_b(0.0)
    assert est.value <= 0.75 + 1e-3
    assert 0.70 <= est.value <= 0.80


@pytest.mark.parametrize("nu", [0.0, 1.0, 5.0])
@pytest.mark.parametrize("kind", ["a", "b"])
def test_two_sided_admissibility(nu, kind):
    est = sharp.estimate_a(nu) if kind == "a" else sharp.estimate_b(nu)
    xs = np.logspace(-3, 4, 200)
    lo, hi = est.lo, est.hi + 0.05
    if kind == "a":
        i = lambda v, x: float(mp.besseli(v, x) * mp.exp(-x))  # noqa: E731
        margin = lambda a, x: (1 - a) * i(nu, x) + a * i(nu + 2, x) - i(nu + 1, x)  # noqa: E731
    else:
        k = lambda v, x: float(mp.besselk(v, x) * mp.exp(x))  # noqa: E731
        margin = lambda b, x: b * k(nu, x) + (1 - b) * k(nu + 2, x) - k(nu + 1, x)  # noqa: E731
    scale = lambda x: abs(margin(0.0, x)) + abs(margin(1.0, x))  # noqa: E731
    assert all(margin(lo, x) >= -1e-9 * scale(x) for x in xs[::4])
    assert any(margin(hi, x) < 0 for x in xs)


def test_monotone_refinement():
    for nu in (0.0, 2.0):
        coarse = sharp.estimate_a(nu)
        fine = sharp.estimate_a(nu, points=400)
        assert fine.value <= coarse.value + 1e-4


def test_op14_threshold_at_zero():
    a0 = sharp.estimate_a(0.0).value
    assert sharp.op14_gamma_limit(0.0, a0) == pytest.approx(2 / 3, abs=1e-4)
    assert abs(sharp.op14_gamma_limit(0.0, a0) - 0.66) <= 0.05


def test_estimate_domain():
    with pytest.raises(DomainError):
        sharp.estimate_a(-0.5)
    with pytest.raises(DomainError):
        sharp.estimate_b(21.0)


# -- empirical suprema ---------------------------------------------------------------

@pytest.mark.parametrize("nu,beta", [(0.0, -0.5), (0.25, -0.9)])
def test_open3_finite_sup(nu, beta):
    est = sharp.empirical_sup("open3", nu, beta, 500.0)
    assert math.isfinite(est.value) and est.value > 0
    assert isinstance(est.argmin_x, float) and 0 < est.argmin_x <= 500
    assert est.meta["note"] == "empirical - not a proof"
    assert sharp.open3_expression(nu, beta, est.argmin_x) == pytest.approx(est.value, rel=1e-12)
    # the sup is at least the large-x limit
    assert est.value >= est.meta["limit_x_to_inf"] * 0.99


def test_open1_within_op12_constant():
    est = sharp.empirical_sup("open1", 1.0, -0.5)
    assert est.value <= 2 * 2 / (3 * 0.5 - 0.5)


def test_open1_small_gamma_consistency():
    est = sharp.empirical_sup("open1", 0.5, -0.01)
    assert est.value == pytest.approx(1.5, abs=2e-3)


@pytest.mark.parametrize(
    "args",
    [("open1", 1.0, 0.5), ("open3", 0.0, 0.5), ("open3", 0.0, -0.5, 50.0), ("open3", -0.5, -0.5)],
)
def test_empirical_sup_domain(args):
    with pytest.raises(DomainError):
        sharp.empirical_sup(*args)
