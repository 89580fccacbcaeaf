import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from disclosure_game import closedform as cf
from disclosure_game.equilibrium import utilities_D, utilities_N
from disclosure_game.params import ModelParams, adoption_threshold


@st.composite
def params(draw):
    c = draw(st.floats(0.05, 0.9))
    delta = draw(st.floats(0.05, 0.95))
    beta = draw(st.floats(0.55, 0.95))
    r = draw(st.floats(0.05, 0.6))
    k = draw(st.floats(0.05, 0.95))
    if c * (1 - delta) > 1 - r - 0.05:
        c = (1 - r - 0.05) / (1 - delta)
    base = ModelParams(v=1.0, c=c, delta=delta, beta=beta, r=r, k=k)
    v = draw(st.floats(adoption_threshold(base) + 1e-3, 3.0))
    return base.with_(v=v)


def test_thresholds_at_figure_point(fig):
    th = cf.compute_thresholds(fig)
    assert th.v_lo1 == pytest.approx(0.642857, abs=1e-6)
    assert th.tv3 == pytest.approx(1.3, abs=1e-12)
    assert th.v_hat == pytest.approx(1.607143, abs=1e-6)
    assert th.v_lo2 == pytest.approx(0.835714, abs=1e-6)
    assert th.tv5 == pytest.approx(1.881410, abs=1e-6)
    # sqrt(0.52) * sqrt(0.4275) / 0.28
    assert th.tv4 == pytest.approx(1.683882, abs=1e-6)
    assert th.tv1 == pytest.approx(0.934050, abs=1e-6)
    assert th.p_bar == pytest.approx(0.109524, abs=1e-6)
    assert th.p_tilde == pytest.approx(0.309524, abs=1e-6)


def test_zero_cost_gap_limit(fig):
    th = cf.compute_thresholds(fig.with_(delta=1 - 1e-15))
    assert th.v_lo1 == pytest.approx(1.0)
    assert th.tv1 == pytest.approx(1.0)


def test_cutoffs_at_figure_point(fig):
    assert cf.cutoff_f0(fig) == pytest.approx(0.404762, abs=1e-6)
    assert cf.cutoffs_D(fig, 0.0).f2 == pytest.approx(0.4 / 0.52, abs=1e-12)
    at_bar = cf.cutoffs_D(fig, cf.p_bar(fig))
    for f in (at_bar.f1, at_bar.f2, at_bar.f12):
        assert f == pytest.approx(0.642857, abs=1e-6)


def test_cutoff_edges(fig):
    lo = fig.with_(v=adoption_threshold(fig))
    assert cf.cutoff_f0(lo) == pytest.approx(1.0)
    assert cf.cutoffs_D(lo, 0.0).f12 == pytest.approx(1.0)
    hi = fig.with_(v=cf.compute_thresholds(fig).v_hat)
    assert cf.cutoff_f0(hi) == pytest.approx(0.0, abs=1e-12)


def test_profit_N_values(fig):
    assert cf.profit_N(fig) == pytest.approx(0.268112, abs=1e-6)
    assert cf.profit_N(fig.with_(v=2.0)) == pytest.approx(0.42, abs=1e-12)
    assert cf.profit_N(fig.with_(v=0.5)) == fig.r


def test_profit_D_values(fig):
    pbar = cf.p_bar(fig)
    assert cf.profit_D(fig, pbar) == pytest.approx(0.280867, abs=1e-6)
    assert cf.profit_D(fig, 10.0) == cf.profit_D(fig, pbar)


def test_profit_D_full_trust_matches_N(fig):
    for v in (1.7, 2.0, 2.8):
        p = fig.with_(v=v, k=1.0)
        assert cf.profit_D(p, 0.0) == pytest.approx(cf.profit_N(p), abs=1e-12)


@pytest.mark.parametrize("v,pen,tag", [
    (1.0, 0.109524, cf.PenaltyRegion.FULL_DETERRENCE),
    (1.5, 0.309524, cf.PenaltyRegion.PARTIAL_SCREENING),
    (2.0, 0.0, cf.PenaltyRegion.DEREGULATION),
])
def test_p_star_figure_point(fig, v, pen, tag):
    got, got_tag = cf.p_star(fig.with_(v=v))
    assert got == pytest.approx(pen, abs=1e-6)
    assert got_tag is tag


def test_profit_D_star_values(fig):
    assert cf.profit_D_star(fig) == pytest.approx(0.280867, abs=1e-6)
    assert cf.profit_D_star(fig.with_(v=2.0)) == pytest.approx(0.392308, abs=1e-6)
    assert cf.profit_D_star(fig.with_(v=2.0)) == pytest.approx(cf.profit_D(fig.with_(v=2.0), 0.0))
    assert cf.profit_D_star(fig.with_(v=0.5)) == fig.r


def test_shape_delta0_figure_point(fig):
    assert cf.shape_delta0(fig) == pytest.approx(1 - 0.7 * math.sqrt(0.48) / 0.5, abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(params())
def test_star_profit_is_profit_at_star_penalty(p):
    assert cf.profit_D_star(p) == pytest.approx(cf.profit_D(p, cf.p_star(p)[0]), abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(params(), st.floats(0.0, 3.0))
def test_star_penalty_is_optimal(p, pen):
    assert cf.profit_D(p, pen) <= cf.profit_D_star(p) + 1e-12


@settings(max_examples=300, deadline=None)
@given(params())
def test_threshold_orderings(p):
    th = cf.compute_thresholds(p)
    assert th.p_hat <= th.p_bar + 1e-12
    assert th.tv5 > th.v_hat
    assert th.v8 < th.tv3
    assert not (th.tv4 < th.v_hat and th.tv4 < th.tv3)
    # the screening band is non-empty exactly above the shape delta0
    assume(abs(p.delta - cf.shape_delta0(p)) > 1e-9)
    assert (th.tv3 < th.tv5) == (p.delta > cf.shape_delta0(p))


@settings(max_examples=300, deadline=None)
@given(params(), st.floats(0.0, 2.0))
def test_indifference_identities(p, pen):
    cut = cf.cutoffs_D(p, pen)
    u_nai, u_ai = utilities_N(p, cut.f0)
    assert abs(u_nai - u_ai) <= 1e-10
    u_nai, u_con, _ = utilities_D(p, cut.f1, pen)
    assert abs(u_nai - u_con) <= 1e-10
    _, u_con, u_dis = utilities_D(p, cut.f2, pen)
    assert abs(u_con - u_dis) <= 1e-10


@settings(max_examples=200, deadline=None)
@given(params())
def test_profits_continuous_in_v(p):
    th = cf.compute_thresholds(p)
    for edge in (th.v_lo2, th.v_hat, th.tv3, th.tv4, th.tv5):
        if th.v_lo1 + 1e-6 < edge < 50:
            lo, hi = p.with_(v=edge - 1e-9), p.with_(v=edge + 1e-9)
            assert cf.profit_N(lo) == pytest.approx(cf.profit_N(hi), abs=1e-7)
            assert cf.profit_D_star(lo) == pytest.approx(cf.profit_D_star(hi), abs=1e-7)


def test_profit_D_case_labels(fig):
    assert cf.profit_D_case(fig.with_(v=0.5), 0.0) == "degenerate"
    assert cf.profit_D_case(fig.with_(v=0.7), 0.0) == "1"
    assert cf.profit_D_case(fig, 0.0) == "2a"
    assert cf.profit_D_case(fig, 0.2) == "2b"
    assert cf.profit_D_case(fig.with_(v=2.0), 0.0) == "3a"
    assert cf.profit_D_case(fig.with_(v=2.0), 0.5) == "3b"
    assert cf.profit_D_case(fig.with_(v=2.0), 1.0) == "3c"
