import numpy as np
import pytest

from disclosure_game import closedform as cf
from disclosure_game.oracle import OracleConfig
from disclosure_game.suite import (
    SUITES,
    SuiteConfig,
    UnknownSuite,
    draw_params,
    expected_quality_sign,
    run_suite,
    shape_sign_changes,
)

FAST = SuiteConfig(oracle=OracleConfig(f_cells=5000), points_per_interval=10, penalty_grid=100)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("indiference", 10, 0)


def test_draws_stay_in_box():
    rng = np.random.default_rng(3)
    for _ in range(500):
        p = draw_params(rng)
        assert 0.05 <= p.c <= 0.9 and 0.55 <= p.beta <= 0.95
        assert p.cost_gap <= 1 - p.r - 0.05 + 1e-12
        assert p.v > 1 - p.cost_gap / (1 - p.r) and p.v <= p.v_bar


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "statics"])
def test_suites_pass_small(suite):
    report = run_suite(suite, 20, 11, FAST)
    assert report.passed, report.failures[:3]


def test_statics_interval_signs_small():
    report = run_suite("statics", 20, 11, FAST)
    assert not [f for f in report.failures if not f["claim"].startswith("statics.shape")]


def test_reports_reproducible():
    a = run_suite("region-consistency", 15, 5, FAST)
    b = run_suite("region-consistency", 15, 5, FAST)
    assert a.to_json() == b.to_json()
    assert "elapsed" not in a.to_json() and "elapsed" in a.to_json(timing=True)


def test_injected_p_bar_error_is_caught(monkeypatch):
    def commission_denominator(params):
        keep = 1 - params.r
        bk = params.beta * params.k
        return (params.cost_gap * (1 - bk) + keep * (bk - 1 + (1 - params.beta) * params.v)) / (
            params.beta * params.r
        )

    monkeypatch.setattr(cf, "p_bar", commission_denominator)
    report = run_suite("indifference", 200, 42)
    assert any(f["claim"] == "indiff.p_bar" for f in report.failures)


def test_quality_sign_rule(fig):
    assert expected_quality_sign(fig) == "0"
    assert expected_quality_sign(fig.with_(v=0.8)) == "+"
    assert expected_quality_sign(fig.with_(v=1.5)) == "-"
    assert expected_quality_sign(fig.with_(v=2.0)) == "0"


def test_single_turning_point(fig):
    assert shape_sign_changes(fig, 1000) == 1
