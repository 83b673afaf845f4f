import json
import math
from pathlib import Path

import pytest

from besselineq import integrals as ig
from besselineq import registry as reg
from besselineq import report
from besselineq.registry import Limit, SteinExpression, SteinId, Strictness
from besselineq.scaled import DomainError, Status

MANIFEST = Path(__file__).parent / "data" / "registry_manifest.txt"


def test_registry_matches_manifest():
    expected = {line.strip() for line in MANIFEST.read_text().splitlines() if line.strip()}
    ids = [c.id for c in reg.list_cases()]
    assert len(ids) == len(set(ids))
    assert set(ids) == expected


def test_every_case_has_a_domain_and_evaluator():
    for c in reg.list_cases():
        assert c.domain and callable(c.predicate) and callable(c.evaluator)
        assert set(c.axes) <= {"nu", "beta", "n", "x"}


def test_listed_domains():
    assert reg.get_case("lowerk").domain == "0 < beta < 1, nu <= 1/2"
    assert reg.get_case("bdsjbc1.upper").domain == "nu > 1/2"
    assert "n" in reg.get_case("besi22").axes
    assert reg.get_case("besi33").in_domain(reg.make_params(0.5, 1.0, gamma=0.5))
    assert not reg.get_case("besi33").in_domain(reg.make_params(0.4, 1.0, gamma=0.5))


def test_unknown_case():
    with pytest.raises(KeyError):
        reg.get_case("nope")


# -- eval_case -------------------------------------------------------------------

def test_fff_equality_at_beta_zero():
    r = reg.eval_case("fff", 0.5, x=1.0, beta=0.0)
    assert abs(float(r.lhs) - 0.9221370088) < 1e-9
    assert abs(r.rel_margin) <= 1e-9
    assert r.on_equality_set


def test_lowerk_equality_at_half():
    r = reg.eval_case("lowerk", 0.5, x=2.0, beta=0.3)
    assert abs(r.rel_margin) <= 1e-9


def test_besi225_margin_shrinks_toward_origin():
    margins = [reg.eval_case("besi225", 1.0, x=x, n=0.0).rel_margin for x in (0.5, 0.05, 0.005)]
    assert all(m > 0 for m in margins)
    assert margins[0] > margins[1] > margins[2]


def test_gamma_alias():
    a = reg.eval_case("besi44", 1.0, x=2.0, gamma=0.5)
    b = reg.eval_case("besi44", 1.0, x=2.0, beta=-0.5)
    assert a.rel_margin == b.rel_margin


@pytest.mark.parametrize(
    "case_id,kw",
    [
        ("besi33", dict(nu=0.25, x=1.0, gamma=0.5)),
        ("lowerk", dict(nu=1.0, x=1.0, beta=0.3)),
        ("lowerk", dict(nu=0.5, x=1.0)),
        ("bdsjbc1.upper", dict(nu=0.5, x=1.0)),
        ("doubleivb.lower", dict(nu=0.0, beta=-0.5)),
    ],
)
def test_domain_violations_are_reported(case_id, kw):
    with pytest.raises(DomainError):
        reg.eval_case(case_id, **kw)


def test_doubleivb_lower_fails_for_negative_beta():
    # the two one-sided integrals sum to twice the claimed lower bound, so
    # for beta < 0 the smaller one lies below it
    nu, beta = 0.0, -0.5
    bound = reg.full_line_half(nu, beta)
    value = float(ig.i_nu_beta(nu, beta))
    assert value < bound
    assert abs(bound - 1.8138) < 1e-4 and abs(value - 1.2092) < 1e-4
    assert float(ig.i_nu_beta(nu, beta)) + float(ig.i_nu_beta(nu, -beta)) == pytest.approx(2 * bound, rel=1e-9)


# -- grid verification ---------------------------------------------------------------

def test_default_grid_has_no_violations(default_report):
    assert len(default_report.records) > 10_000
    assert default_report.violations == ()
    assert {r.id for r in default_report.records} == {c.id for c in reg.list_cases()}


def test_records_are_finite_and_sorted(default_report):
    keys = [(r.id, r.params.sort_key()) for r in default_report.records]
    assert keys == sorted(keys)
    assert all(math.isfinite(r.rel_margin) for r in default_report.records)


EQUALITY_GRID = reg.GridSpec(
    nu=(-0.5, -0.25, 0.0, 0.5, 1.0, 2.5),
    beta=(-0.5, 0.0, 0.3, 0.5, 0.9),
    x=tuple(10.0 ** (-3 + 5 * i / 24) for i in range(25)),
    n=(0.0,),
)


def test_equality_sets():
    rep = reg.verify_suite(EQUALITY_GRID, only_equality=True)
    ids = {r.id for r in rep.records}
    assert {"propb2a", "fff", "lowerk", "lowerk3.lower", "cake", "doubleivb.lower"} <= ids
    assert all(abs(r.rel_margin) <= 1e-9 for r in rep.records)


def test_inverted_case_violates_everywhere():
    grid = reg.GridSpec(nu=(0.0, 1.0, 2.5), beta=(0.5,), x=(0.1, 1.0, 10.0), n=(0.0,))
    for cid in ("propb2a1", "besi22", "nasell", "bdsjbc.lower"):
        bad = reg.inverted(reg.get_case(cid))
        rep = reg.verify_suite(grid, cases=[bad])
        assert rep.records and len(rep.violations) == len(rep.records)


def test_tiny_tolerance_flags_equality_noise():
    grid = reg.GridSpec(nu=(0.5,), beta=(0.3,), x=tuple(0.1 * k for k in range(1, 30)), n=(0.0,))
    loose = reg.verify_suite(grid, 1e-9, cases=["lowerk"])
    assert loose.ok
    tight = reg.verify_suite(grid, 1e-18, cases=["lowerk"])
    assert len(tight.violations) >= 1


def test_grid_validation():
    with pytest.raises(ValueError):
        reg.GridSpec(nu=(), beta=(0,), x=(1,), n=(0,))
    with pytest.raises(ValueError):
        reg.GridSpec(nu=(math.nan,), beta=(0,), x=(1,), n=(0,))
    with pytest.raises(ValueError):
        reg.verify_suite(tol=0)


def test_dob_bounds_bracket_struve_bessel_combination():
    xs = [0.05 * 1.25**k for k in range(31)]  # 0.05 .. ~40
    xs.append(50.0)
    for nu in (0.6, 1.0, 2.5, 5.0):
        for x in xs:
            for cid in ("dob11.lower", "dob11.upper", "dob22.lower", "dob22.upper"):
                assert reg.eval_case(cid, nu, x=x).rel_margin > 0, (cid, nu, x)


def test_relative_error_majorant():
    for nu in (-0.45, 0.0, 1.0, 5.0, 10.0):
        for x in (1e-3, 0.1, 1.0, 10.0, 100.0):
            assert reg.eval_case("dob22.relerr", nu, x=x).rel_margin >= 0


# -- sharpness probes -----------------------------------------------------------------

def test_probe_lowerk2_lower():
    p = reg.sharpness_probe("lowerk2.lower", Limit.X_TO_INF)
    at50 = p.ratios[p.points.index(50.0)]
    assert 0.95 <= at50 <= 1


@pytest.mark.parametrize("cid,limit", reg.registered_probes())
def test_probes_approach_one_monotonically(cid, limit):
    p = reg.sharpness_probe(cid, limit)
    gaps = [abs(1 - r) for r in p.ratios]
    assert all(r <= 1 + 1e-9 for r in p.ratios)
    assert all(a >= b - 1e-12 for a, b in zip(gaps, gaps[1:])), gaps
    assert gaps[-1] < 0.1


def test_unregistered_probe():
    with pytest.raises(KeyError):
        reg.sharpness_probe("propb2a1", Limit.X_TO_0)


# -- Stein expressions and uniform bounds --------------------------------------------

def test_stein_examples():
    # x I_{3/2}(x) K_{3/2}(x) at x=1 from the closed forms
    i32 = math.sqrt(2 / math.pi) * (math.cosh(1.0) - math.sinh(1.0))
    k32 = math.sqrt(math.pi / 2) * math.exp(-1.0) * 2.0
    s1b = reg.stein_expression(SteinExpression(SteinId.S1B, 0.5, 0.0, 1.0))
    assert abs(float(s1b) - i32 * k32) < 1e-12
    assert abs(float(s1b) - 0.2706706) < 1e-7
    # K_2(x) ~ 2/x^2 and x^{-1} int_0^x t^2 I_1 ~ x^3/8, so S1a ~ x/4 -> 0
    for x in (1e-2, 1e-4, 1e-6):
        s1a = reg.stein_expression(SteinExpression(SteinId.S1A, 1.0, 0.5, x))
        assert float(s1a) == pytest.approx(x / 4, rel=1e-2)
    s2b = reg.stein_expression(SteinExpression(SteinId.S2B, 0.5, 0.0, 100.0))
    assert abs(float(s2b) - 0.5) < 0.01


def test_stein_finite_everywhere():
    for sid in SteinId:
        for x in (1e-3, 1.0, 100.0, 1e3):
            for beta in (-0.9, 0.0, 0.9):
                r = reg.stein_expression(SteinExpression(sid, 2.5, beta, x))
                assert r.status is not Status.OUT_OF_DOMAIN and math.isfinite(float(r))


def test_stein_out_of_domain():
    assert reg.stein_expression(SteinExpression(SteinId.S1A, -0.5, 0.0, 1.0)).status is Status.OUT_OF_DOMAIN
    assert reg.stein_expression(SteinExpression(SteinId.S1A, 0.0, 1.0, 1.0)).status is Status.OUT_OF_DOMAIN


def test_uniform_bound_examples():
    assert reg.uniform_bound("propb2a12", 1.0, 0.2) == 0.5
    assert reg.uniform_bound("jjj1", 1.0, 0.0) == pytest.approx(2 / 3)
    want = math.sqrt(math.pi) * math.gamma(1.5) / (0.75**1.5 * math.gamma(1.0))
    assert reg.uniform_bound("ddd3", 1.0, 0.5) == pytest.approx(want, rel=1e-14)
    assert reg.uniform_bound("ddd3", 1.0, 0.5) == pytest.approx(2.41840, abs=1e-5)


def test_uncovered_region_signal():
    for nu in (-0.25, 0.0, 0.25):
        with pytest.raises(reg.UncoveredRegion):
            reg.uniform_bound("jjj1", nu, -0.5)
        assert not reg.is_covered("jjj2", nu, -0.5)
    assert reg.is_covered("jjj1", 0.5, -0.5)


# -- serialisation --------------------------------------------------------------------

def test_csv_and_json_reports():
    rep = reg.verify_suite(reg.GridSpec(nu=(1.0,), beta=(0.5,), x=(1.0, 2.0), n=(0.0,)), cases=["besi22", "lowerk2.upper"])
    text = report.records_csv(rep.records)
    lines = text.splitlines()
    assert lines[0] == "id,nu,beta,n,x,lhs,rhs,rel_margin"
    assert len(lines) == 1 + len(rep.records)
    assert "\r" not in text
    data = json.loads(report.records_json(rep.records))
    assert data[0]["id"] == "besi22" and data[0]["strictness"] == Strictness.STRICT.value
