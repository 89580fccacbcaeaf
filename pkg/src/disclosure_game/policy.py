"""Platform's stage-one choices: regime, regime boundaries, comparative statics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .closedform import (
    PenaltyRegion,
    compute_thresholds,
    p_star,
    profit_D_star,
    profit_N,
    shape_delta0,
)
from .equilibrium import Regime
from .params import ModelParams, _as_params, adoption_threshold

BISECT_TOL = 1e-10
# draws this close to the sign switch of beta(1 + k(1 - beta k)) - 1 are flagged
CURVATURE_FLAG_TOL = 1e-9


class NoRoot(ValueError):
    """Bisection found no sign change: the boundary is absent on that side."""


@dataclass(frozen=True)
class RegimeDecision:
    profit_N: float
    profit_D_star: float
    p_star: float
    region: PenaltyRegion
    chosen: Regime
    delta_profit: float


def regime_choice(params: ModelParams) -> RegimeDecision:
    """Compare both regimes; disclosure only on a strict profit gain."""
    pn = profit_N(params)
    pd = profit_D_star(params)
    pen, tag = p_star(params)
    gain = pd - pn
    return RegimeDecision(
        profit_N=pn,
        profit_D_star=pd,
        p_star=pen,
        region=tag,
        chosen=Regime.D if gain > 0 else Regime.N,
        delta_profit=gain,
    )


# Boundary roots in v of the profit difference, one per comparison case.

def root_b0(params: ModelParams) -> float:
    p = _as_params(params)
    keep = 1.0 - p.r
    return (keep + p.cost_gap) / keep


def root_b5(params: ModelParams) -> float:
    p = _as_params(params)
    keep = 1.0 - p.r
    return math.sqrt(keep**2 - p.cost_gap**2) / math.sqrt((1.0 - p.beta) * keep**2)


def root_b2(params: ModelParams) -> float:
    """Lower root where screening-penalty disclosure ties with the mixed N outcome."""
    p = _as_params(params)
    beta, k = p.beta, p.k
    keep = 1.0 - p.r
    gap = p.cost_gap
    inner = (1.0 - beta) * (1.0 - k) * (
        (1.0 - beta) * gap**2 * (beta + beta * k - 1.0) + beta**2 * (1.0 - k) * keep**2
    ) / (k * keep**2 * (1.0 - beta * k))
    denom = (1.0 - beta) * (1.0 - k) * (1.0 - (1.0 + k) * beta)
    if inner < 0.0 or denom == 0.0:
        return math.nan
    return (1.0 - beta * k) * (k * (beta - math.sqrt(inner) - 1.0) + 1.0 - beta) / denom


def curvature_sign(params: ModelParams) -> float:
    """beta(1 + k(1 - beta k)) - 1; its sign orders the two case-(iv) roots."""
    p = _as_params(params)
    return p.beta * (1.0 + p.k * (1.0 - p.beta * p.k)) - 1.0


def _iv_roots(params: ModelParams) -> tuple[float, float]:
    p = _as_params(params)
    beta, k = p.beta, p.k
    keep2 = (1.0 - p.r) ** 2
    gap2 = p.cost_gap**2
    q = beta * (k * (beta * k - 1.0) - 1.0) + 1.0
    disc = (beta - 1.0) * beta * k * keep2 * (beta * k - 1.0) * (gap2 * q - beta * (k - 1.0) * keep2)
    base = -(beta**2) * k * keep2 + beta * (k + 1.0) * keep2 - keep2
    denom = (beta - 1.0) * keep2 * q
    if disc < 0.0 or denom == 0.0:
        return math.nan, math.nan
    return (base + math.sqrt(disc)) / denom, (base - math.sqrt(disc)) / denom


def root_b3(params: ModelParams) -> float:
    return _iv_roots(params)[0]


def root_b4(params: ModelParams) -> float:
    return _iv_roots(params)[1]


def disclosure_ceiling(params: ModelParams) -> tuple[str, float] | None:
    """The active root above which non-disclosure wins, tagged by name.

    Each root is valid only inside the comparison case it was derived for;
    at most one of them is. None when disclosure never wins.
    """
    p = _as_params(params)
    th = compute_thresholds(p)
    candidates = (
        ("b0", root_b0(p), th.v_lo1, min(th.v_hat, th.tv3)),
        ("b2", root_b2(p), th.tv3, th.v_hat),
        ("b5", root_b5(p), th.v_hat, min(th.tv3, th.tv4)),
        ("b3", root_b3(p), max(th.v_hat, th.tv3), th.tv5),
    )
    for name, root, lo, hi in candidates:
        if lo < root <= hi:
            return name, root
    return None


def _bisect(fn, lo: float, hi: float, tol: float = BISECT_TOL) -> float:
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoRoot(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _delta_domain(p: ModelParams) -> tuple[float, float]:
    # c(1 - delta) < 1 - r is required for the model to be well posed
    lo = max(0.0, 1.0 - (1.0 - p.r) / p.c)
    span = 1.0 - lo
    return lo + 1e-9 * span, 1.0 - 1e-9


def delta_adoption_root(params: ModelParams, v: float) -> float:
    """The delta at which v sits exactly on the adoption threshold."""
    p = _as_params(params)
    lo, hi = _delta_domain(p)
    return _bisect(lambda d: adoption_threshold(p.with_(delta=d)) - v, lo, hi)


def _ceiling_gap(p: ModelParams, v: float, delta: float) -> float:
    hit = disclosure_ceiling(p.with_(delta=delta))
    return (hit[1] if hit else -math.inf) - v


def delta_ceiling_roots(params: ModelParams, v: float, scan: int = 400) -> tuple[float, float]:
    """Lower and upper delta at which the disclosure ceiling crosses v.

    The ceiling rises in delta through the b5/b3 roots and falls through the
    b2/b0 roots, so v = ceiling(delta) has at most one root on each side.
    A side without a crossing is returned as None.
    """
    p = _as_params(params)
    lo, hi = _delta_domain(p)
    grid = [lo + (hi - lo) * i / scan for i in range(scan + 1)]
    gaps = [_ceiling_gap(p, v, d) for d in grid]
    changes = [i for i in range(scan) if (gaps[i] > 0) != (gaps[i + 1] > 0)]
    fn = lambda d: _ceiling_gap(p, v, d)  # noqa: E731
    rising = [i for i in changes if gaps[i + 1] > 0]
    falling = [i for i in changes if gaps[i] > 0]
    lower = _bisect(fn, grid[rising[0]], grid[rising[0] + 1]) if rising else None
    upper = _bisect(fn, grid[falling[-1]], grid[falling[-1] + 1]) if falling else None
    return lower, upper


@dataclass(frozen=True)
class RegimeBoundaries:
    b0: float
    b2: float
    b3: float
    b5: float
    active: str | None
    delta0: float | None
    delta1: float | None
    delta2: float | None
    flagged: bool = False


def regime_boundaries(params: ModelParams, v: float | None = None) -> RegimeBoundaries:
    """v-roots at the params' delta, and delta-boundaries of the disclosure wedge at v.

    Absent delta-boundaries are reported as None; call the ``delta_*``
    helpers directly to get NoRoot instead.
    """
    p = _as_params(params)
    v = p.v if v is None else v
    hit = disclosure_ceiling(p)
    try:
        d0 = delta_adoption_root(p, v)
    except NoRoot:
        d0 = None
    d1, d2 = delta_ceiling_roots(p, v)
    return RegimeBoundaries(
        b0=root_b0(p),
        b2=root_b2(p),
        b3=root_b3(p),
        b5=root_b5(p),
        active=hit[0] if hit else None,
        delta0=d0,
        delta1=d1,
        delta2=d2,
        flagged=abs(curvature_sign(p)) < CURVATURE_FLAG_TOL,
    )


def profit_gap(params: ModelParams) -> float:
    """Non-disclosure profit minus optimal disclosure profit."""
    return profit_N(params) - profit_D_star(params)


@dataclass(frozen=True)
class StaticsPrediction:
    variable: str
    regime: Regime
    intervals: list[tuple[float, float, str]] = field(default_factory=list)
    shape: str | None = None

    def sign_at(self, x: float) -> str | None:
        for lo, hi, sign in self.intervals:
            if lo < x < hi:
                return sign
        return None

    @property
    def breakpoints(self) -> list[float]:
        return [lo for lo, _, _ in self.intervals[1:]]


def _tile(lo: float, hi: float, cuts, signs) -> list[tuple[float, float, str]]:
    edges = [lo] + [min(max(c, lo), hi) for c in cuts] + [hi]
    out = []
    for i, sign in enumerate(signs):
        a, b = edges[i], max(edges[i], edges[i + 1])
        edges[i + 1] = b
        if b > a:
            out.append((a, b, sign))
    return out


def profit_shape(params: ModelParams) -> str:
    """U or W shape of optimal disclosure profit in v."""
    return "W" if _as_params(params).delta > shape_delta0(params) else "U"


def statics_prediction(params: ModelParams, variable: str, regime) -> StaticsPrediction:
    """Sign of d(profit)/d(variable) on intervals tiling (v_lo1, v_bar)."""
    p = _as_params(params)
    regime = Regime.parse(regime)
    th = compute_thresholds(p)
    lo, hi = th.v_lo1, p.v_bar
    if variable == "v" and regime is Regime.N:
        cut = min(th.tv1, th.v_hat)
        return StaticsPrediction("v", regime, _tile(lo, hi, [cut], ["-", "+"]))
    if variable == "beta" and regime is Regime.N:
        cut = min(th.tv2, th.v_hat)
        return StaticsPrediction("beta", regime, _tile(lo, hi, [cut], ["+", "-"]))
    if variable == "v":
        shape = profit_shape(p)
        if shape == "U":
            ivs = _tile(lo, hi, [th.v_D], ["-", "+"])
        else:
            ivs = _tile(lo, hi, [th.v_D, th.tv3, min(th.v8, th.tv5)], ["-", "+", "-", "+"])
        return StaticsPrediction("v", regime, ivs, shape)
    if variable == "beta":
        cut = min(th.tv3, th.tv4)
        return StaticsPrediction("beta", regime, _tile(lo, hi, [cut], ["0", "-"]))
    raise ValueError(f"unknown statics variable {variable!r}")
