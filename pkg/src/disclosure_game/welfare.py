"""Creator surplus, transparency and aggregate quality under each regime."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closedform import p_star
from .equilibrium import Regime, Segment, Segmentation, Strategy, segment
from .params import ModelParams, _as_params

SIGN_TOL = 1e-10


def _resolve_penalty(params, regime: Regime, penalty) -> float:
    if regime is Regime.N:
        return 0.0
    if penalty is None or penalty == "optimal":
        return p_star(params)[0]
    return float(getattr(penalty, "p", penalty))


def _segment_surplus(p: ModelParams, seg: Segment, penalty: float) -> float:
    a, b = seg.f_lo, seg.f_hi
    keep = 1.0 - p.r
    width = b - a
    half_sq = (b * b - a * a) / 2.0
    if seg.strategy is Strategy.NAI:
        return (keep - p.c) * width
    if seg.strategy is Strategy.AI:
        return keep * (p.beta * p.v * half_sq + (1.0 - p.beta) * p.v * width) - p.delta * p.c * width
    if seg.strategy is Strategy.AINAI:
        return (
            keep * (p.beta * p.k * p.v * half_sq - p.beta * penalty * width + (1.0 - p.beta) * p.v * width)
            - p.delta * p.c * width
        )
    return keep * p.v * half_sq - p.delta * p.c * width


def surplus_of(params: ModelParams, seg: Segmentation) -> float:
    p = _as_params(params)
    return sum(_segment_surplus(p, s, seg.penalty) for s in seg.segments)


def creator_surplus(params: ModelParams, regime, penalty=None) -> float:
    """Aggregate creator utility over the equilibrium segmentation.

    ``penalty=None`` means the platform's optimal penalty under regime D.
    """
    regime = Regime.parse(regime)
    pen = _resolve_penalty(params, regime, penalty)
    return surplus_of(params, segment(params, regime, pen))


def transparency_of(params: ModelParams, seg: Segmentation) -> float:
    p = _as_params(params)
    hidden = Strategy.AI if seg.regime is Regime.N else Strategy.AINAI
    return 1.0 - (1.0 - p.beta) * seg.measure(hidden)


def transparency(params: ModelParams, regime, penalty=None) -> float:
    """One minus the mass of AI content that circulates unlabeled."""
    regime = Regime.parse(regime)
    pen = _resolve_penalty(params, regime, penalty)
    return transparency_of(params, segment(params, regime, pen))


def quality_of(params: ModelParams, seg: Segmentation) -> float:
    p = _as_params(params)
    human = seg.measure(Strategy.NAI)
    return human + p.v * (1.0 - human)


def quality(params: ModelParams, regime, penalty=None) -> float:
    """Aggregate true content quality (1 per human item, v per AI item)."""
    regime = Regime.parse(regime)
    pen = _resolve_penalty(params, regime, penalty)
    return quality_of(params, segment(params, regime, pen))


def perceived_value(params: ModelParams, regime, penalty=None) -> float:
    """Diagnostic only: viewer-perceived value, i.e. realized engagement.

    Equals platform profit divided by r. Not the quality measure above.
    """
    p = _as_params(params)
    regime = Regime.parse(regime)
    pen = _resolve_penalty(params, regime, penalty)
    total = 0.0
    for s in segment(p, regime, pen).segments:
        a, b = s.f_lo, s.f_hi
        half_sq = (b * b - a * a) / 2.0
        if s.strategy is Strategy.NAI:
            total += b - a
        elif s.strategy is Strategy.AI:
            total += p.beta * p.v * half_sq + (1.0 - p.beta) * p.v * (b - a)
        elif s.strategy is Strategy.AINAI:
            total += p.beta * p.k * p.v * half_sq + (1.0 - p.beta) * p.v * (b - a)
        else:
            total += p.v * half_sq
    return total


def classify_sign(x: float, tol: float = SIGN_TOL) -> str:
    if x > tol:
        return "+"
    if x < -tol:
        return "-"
    return "0"


@dataclass(frozen=True)
class WelfareReport:
    cs_N: float
    cs_D: float
    t_N: float
    t_D: float
    q_N: float
    q_D: float
    signs: dict[str, str]

    def __post_init__(self):
        values = (self.cs_N, self.cs_D, self.t_N, self.t_D, self.q_N, self.q_D)
        if not all(math.isfinite(x) for x in values):
            raise ValueError("non-finite welfare value")


def welfare_comparison(params: ModelParams) -> WelfareReport:
    """Both regimes side by side, disclosure evaluated at its optimal penalty."""
    seg_n = segment(params, Regime.N)
    seg_d = segment(params, Regime.D, p_star(params)[0])
    cs_n, cs_d = surplus_of(params, seg_n), surplus_of(params, seg_d)
    t_n, t_d = transparency_of(params, seg_n), transparency_of(params, seg_d)
    q_n, q_d = quality_of(params, seg_n), quality_of(params, seg_d)
    return WelfareReport(
        cs_N=cs_n, cs_D=cs_d, t_N=t_n, t_D=t_d, q_N=q_n, q_D=q_d,
        signs={
            "cs": classify_sign(cs_d - cs_n),
            "t": classify_sign(t_d - t_n),
            "q": classify_sign(q_d - q_n),
        },
    )
