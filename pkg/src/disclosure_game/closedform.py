"""Closed-form thresholds, cutoffs, profits and the optimal penalty.

All functions take plain :class:`ModelParams` (or a ``ValidatedParams``)
and are total on the validated domain. Cutoffs are returned unclamped.
At an exact region boundary the lower (left) branch is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .params import ModelParams, _as_params, adoption_threshold

# distance from a threshold below which v counts as sitting on it
EDGE_TOL = 1e-12


class PenaltyRegion(str, Enum):
    NO_CONCEALMENT = "NoConcealment"      # concealment never pays, any p is optimal
    FULL_DETERRENCE = "FullDeterrence"    # p* = p_bar
    PARTIAL_SCREENING = "PartialScreening"  # p* = p_tilde
    DEREGULATION = "Deregulation"         # p* = 0


@dataclass(frozen=True)
class Thresholds:
    v_lo1: float
    v_lo2: float
    v_hat: float
    tv1: float
    tv2: float
    tv3: float
    tv4: float
    tv5: float
    v_D: float
    v8: float
    p_hat: float
    p_bar: float
    p_tilde: float
    # quality above which p_tilde falls below p_hat (screening cannot bind)
    v_screen: float


@dataclass(frozen=True)
class Cutoffs:
    f0: float
    f1: float
    f2: float
    f12: float


def _le(a: float, b: float) -> bool:
    return a <= b + EDGE_TOL


def p_bar(params: ModelParams) -> float:
    """Deterrence penalty: the p at which f1 = f2 and concealment vanishes."""
    p = _as_params(params)
    keep = 1.0 - p.r
    bk = p.beta * p.k
    return (p.cost_gap * (1.0 - bk) + keep * (bk - 1.0 + (1.0 - p.beta) * p.v)) / (p.beta * keep)


def p_hat(params: ModelParams) -> float:
    """Penalty at which the no-AI segment starts to appear (f1 = 0)."""
    p = _as_params(params)
    keep = 1.0 - p.r
    return (p.cost_gap + ((1.0 - p.beta) * p.v - 1.0) * keep) / (p.beta * keep)


def p_tilde(params: ModelParams) -> float:
    """Interior maximiser of the three-segment profit branch."""
    p = _as_params(params)
    return p.cost_gap * (1.0 - p.beta * p.k) / (p.beta * (1.0 - p.r))


def compute_thresholds(params: ModelParams) -> Thresholds:
    p = _as_params(params)
    beta, k = p.beta, p.k
    keep = 1.0 - p.r
    gap = p.cost_gap
    bk = beta * k
    v_lo1 = adoption_threshold(p)
    root = math.sqrt(keep**2 - gap**2)
    curv = (1.0 - beta) ** 2 + bk * (1.0 - bk)
    tv1 = root / keep
    return Thresholds(
        v_lo1=v_lo1,
        v_lo2=(1.0 - bk) * (keep - gap) / ((1.0 - beta) * keep),
        v_hat=(keep - gap) / (keep * (1.0 - beta)),
        tv1=tv1,
        tv2=(keep + gap) / keep,
        tv3=(1.0 - bk) / (1.0 - beta),
        tv4=math.sqrt(1.0 - bk) * root / ((1.0 - beta) * keep),
        tv5=1.0 / (1.0 - beta) - gap * math.sqrt(bk) / ((1.0 - beta) * keep),
        v_D=tv1,
        v8=math.sqrt(1.0 - bk) * math.sqrt(keep**2 - bk * gap**2) / (keep * math.sqrt(curv)),
        p_hat=p_hat(p),
        p_bar=p_bar(p),
        p_tilde=p_tilde(p),
        v_screen=(keep - bk * gap) / (keep * (1.0 - beta)),
    )


def shape_delta0(params: ModelParams) -> float:
    """Cost factor separating the U-shaped and W-shaped profit paths in v.

    Above it the partial-screening band (tv3, tv5) is non-empty.
    """
    p = _as_params(params)
    return 1.0 - (1.0 - p.r) * math.sqrt(p.beta * p.k) / p.c


def cutoff_f0(params: ModelParams) -> float:
    p = _as_params(params)
    keep = 1.0 - p.r
    return (keep * (1.0 - p.v * (1.0 - p.beta)) - p.cost_gap) / (keep * p.v * p.beta)


def cutoffs_D(params: ModelParams, penalty: float) -> Cutoffs:
    p = _as_params(params)
    pen = float(getattr(penalty, "p", penalty))
    keep = 1.0 - p.r
    beta, k, v = p.beta, p.k, p.v
    f1 = (keep * (1.0 - v * (1.0 - beta) + pen * beta) - p.cost_gap) / (keep * k * v * beta)
    f2 = (v - (pen + v) * beta) / (v - k * v * beta)
    f12 = (keep - p.cost_gap) / (keep * v)
    return Cutoffs(f0=cutoff_f0(p), f1=f1, f2=f2, f12=f12)


# Revenue integrals of each strategy over [a, b] of the uniform f-population.

def _human(a: float, b: float) -> float:
    return b - a


def _undetected_ai(p: ModelParams, a: float, b: float) -> float:
    return p.beta * p.v * (b * b - a * a) / 2.0 + (1.0 - p.beta) * p.v * (b - a)


def _concealed(p: ModelParams, a: float, b: float) -> float:
    return p.beta * p.k * p.v * (b * b - a * a) / 2.0 + (1.0 - p.beta) * p.v * (b - a)


def _disclosed(p: ModelParams, a: float, b: float) -> float:
    return p.v * (b * b - a * a) / 2.0


def profit_N(params: ModelParams) -> float:
    """Platform profit without a disclosure mandate (two-branch form)."""
    p = _as_params(params)
    t_lo1 = adoption_threshold(p)
    if _le(p.v, t_lo1):
        return p.r
    keep = 1.0 - p.r
    beta, r, v = p.beta, p.r, p.v
    v_hat = (keep - p.cost_gap) / (keep * (1.0 - beta))
    if _le(v, v_hat):
        return r * (keep**2 * (2.0 * beta * v + (1.0 - v) ** 2) - p.cost_gap**2) / (
            2.0 * beta * keep**2 * v
        )
    return (2.0 - beta) * r * v / 2.0


def _deterred_profit(p: ModelParams, f12: float) -> float:
    return p.r * (_human(0.0, f12) + _disclosed(p, f12, 1.0))


def _three_segment_profit(p: ModelParams, f1: float, f2: float) -> float:
    return p.r * (_human(0.0, f1) + _concealed(p, f1, f2) + _disclosed(p, f2, 1.0))


def profit_D_case(params: ModelParams, penalty: float) -> str:
    """Which piece of the disclosure-regime profit applies.

    One of "degenerate", "1", "2a", "2b", "3a", "3b", "3c": the number is
    the quality band (below v_lo2, up to v_hat, above v_hat) and the letter
    the penalty band (all-AI, three-segment, deterred; band 2 has no
    all-AI piece).
    """
    p = _as_params(params)
    pen = float(getattr(penalty, "p", penalty))
    th = compute_thresholds(p)
    if _le(p.v, th.v_lo1):
        return "degenerate"
    if _le(p.v, th.v_lo2):
        return "1"
    if _le(p.v, th.v_hat):
        return "2a" if pen < th.p_bar else "2b"
    if _le(pen, th.p_hat):
        return "3a"
    return "3b" if pen < th.p_bar else "3c"


def profit_D(params: ModelParams, penalty: float) -> float:
    """Platform profit under mandatory disclosure for a given penalty.

    The penalty is a transfer that never reaches platform revenue; it acts
    only through the creators' sorting.
    """
    p = _as_params(params)
    pen = float(getattr(penalty, "p", penalty))
    case = profit_D_case(p, pen)
    if case == "degenerate":
        return p.r
    cut = cutoffs_D(p, pen)
    if case in ("1", "2b", "3c"):
        return _deterred_profit(p, cut.f12)
    if case == "3a":
        return p.r * (_concealed(p, 0.0, cut.f2) + _disclosed(p, cut.f2, 1.0))
    return _three_segment_profit(p, cut.f1, cut.f2)


def penalty_region(params: ModelParams) -> PenaltyRegion:
    p = _as_params(params)
    th = compute_thresholds(p)
    if _le(p.v, th.v_lo2):
        return PenaltyRegion.NO_CONCEALMENT
    if _le(p.v, min(th.tv3, th.tv4)):
        return PenaltyRegion.FULL_DETERRENCE
    if th.tv3 < p.v and _le(p.v, th.tv5):
        return PenaltyRegion.PARTIAL_SCREENING
    return PenaltyRegion.DEREGULATION


def p_star(params: ModelParams) -> tuple[float, PenaltyRegion]:
    """Platform's optimal penalty and the branch it comes from."""
    p = _as_params(params)
    tag = penalty_region(p)
    if tag is PenaltyRegion.FULL_DETERRENCE:
        return p_bar(p), tag
    if tag is PenaltyRegion.PARTIAL_SCREENING:
        return p_tilde(p), tag
    return 0.0, tag


def profit_D_star(params: ModelParams) -> float:
    """Equilibrium disclosure-regime profit at the optimal penalty (three branches)."""
    p = _as_params(params)
    if _le(p.v, adoption_threshold(p)):
        return p.r
    beta, k, r, v = p.beta, p.k, p.r, p.v
    keep = 1.0 - r
    gap = p.cost_gap
    bk = beta * k
    tag = penalty_region(p)
    if tag in (PenaltyRegion.NO_CONCEALMENT, PenaltyRegion.FULL_DETERRENCE):
        return r * (keep**2 * (v**2 + 1.0) - gap**2) / (2.0 * keep**2 * v)
    if tag is PenaltyRegion.PARTIAL_SCREENING:
        quad = 1.0 + beta * (beta - beta * k**2 + k - 2.0)
        num = keep**2 * (v**2 * quad + (1.0 - bk) * (1.0 - 2.0 * (1.0 - beta) * v)) - bk * gap**2 * (1.0 - bk)
        return r * num / (2.0 * bk * keep**2 * (1.0 - bk) * v)
    return r * v * (2.0 - (2.0 - beta + k) * beta) / (2.0 * (1.0 - bk))
