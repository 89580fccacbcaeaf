import math

import pytest
from hypothesis import given, settings

from disclosure_game import closedform as cf
from disclosure_game.equilibrium import Regime
from disclosure_game.params import adoption_threshold
from disclosure_game.policy import (
    NoRoot,
    delta_adoption_root,
    delta_ceiling_roots,
    disclosure_ceiling,
    profit_gap,
    profit_shape,
    regime_boundaries,
    regime_choice,
    root_b0,
    root_b5,
    statics_prediction,
)

from test_closedform import params


def test_regime_choice_examples(fig):
    dec = regime_choice(fig)
    assert dec.chosen is Regime.D
    assert dec.profit_N == pytest.approx(0.268112, abs=1e-6)
    assert dec.profit_D_star == pytest.approx(0.280867, abs=1e-6)
    assert regime_choice(fig.with_(v=2.5)).chosen is Regime.N
    low = regime_choice(fig.with_(v=0.5))
    assert low.chosen is Regime.N and low.delta_profit == 0


def test_roots_at_figure_point(fig):
    assert root_b0(fig) == pytest.approx(1.357143, abs=1e-6)
    assert root_b5(fig) == pytest.approx(math.sqrt(0.4275) / math.sqrt(0.4 * 0.49), abs=1e-12)
    assert root_b5(fig) == pytest.approx(1.476862, abs=1e-6)
    limit = fig.with_(delta=1 - 1e-15)
    assert root_b0(limit) == pytest.approx(1.0)
    assert root_b5(limit) == pytest.approx(1 / math.sqrt(0.4))


def test_ceiling_at_figure_point(fig):
    name, root = disclosure_ceiling(fig)
    # the gap changes sign at the reported root
    assert profit_gap(fig.with_(v=root - 1e-6)) < 0 < profit_gap(fig.with_(v=root + 1e-6))
    assert name in {"b0", "b2", "b3", "b5"}


@settings(max_examples=150, deadline=None)
@given(params())
def test_ceiling_brackets_disclosure(p):
    hit = disclosure_ceiling(p)
    lo = adoption_threshold(p)
    top = hit[1] if hit else lo
    v = p.v
    if abs(v - top) < 1e-6 or abs(v - lo) < 1e-6:
        return
    expected = Regime.D if lo < v < top else Regime.N
    assert regime_choice(p).chosen is expected


def test_delta_roots(fig):
    d0 = delta_adoption_root(fig, 1.0 - 1e-3)
    assert adoption_threshold(fig.with_(delta=d0)) == pytest.approx(1.0 - 1e-3, abs=1e-8)
    lower, upper = delta_ceiling_roots(fig, 1.0)
    # v = 1 stays above the adoption threshold for every delta, and the
    # ceiling exceeds 1 throughout, so the wedge spans the whole delta range
    assert lower is None and upper is None
    lower, upper = delta_ceiling_roots(fig, 1.5)
    for d in (lower, upper):
        if d is not None:
            assert disclosure_ceiling(fig.with_(delta=d))[1] == pytest.approx(1.5, abs=1e-6)


def test_adoption_root_absent(fig):
    with pytest.raises(NoRoot):
        delta_adoption_root(fig, 0.01)


def test_regime_boundaries_record(fig):
    rb = regime_boundaries(fig, 1.5)
    assert rb.b0 == pytest.approx(root_b0(fig))
    assert rb.active == disclosure_ceiling(fig)[0]
    assert rb.delta0 is None


def test_statics_N_v(fig):
    pred = statics_prediction(fig, "v", "N")
    assert pred.sign_at(0.8) == "-" and pred.sign_at(1.2) == "+"
    assert pred.breakpoints[0] == pytest.approx(0.934050, abs=1e-6)


def test_statics_D_beta(fig):
    pred = statics_prediction(fig, "beta", Regime.D)
    assert pred.sign_at(1.0) == "0"
    assert pred.sign_at(2.0) == "-"


def test_statics_shape_tags(fig):
    assert profit_shape(fig) == "W"
    assert profit_shape(fig.with_(delta=0.02)) == "U"
    pred = statics_prediction(fig, "v", "D")
    # the falling stretch after tv3 is empty because v8 < tv3
    assert [s for _, _, s in pred.intervals] == ["-", "+", "+"]


def test_statics_unknown_variable(fig):
    with pytest.raises(ValueError):
        statics_prediction(fig, "k", "N")
