"""Creator utilities, best responses and the segmentation of the f-continuum."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .closedform import EDGE_TOL, cutoff_f0, cutoffs_D, p_star
from .params import ModelParams, _as_params, adoption_threshold


class Strategy(str, Enum):
    NAI = "NAI"        # human content
    AI = "AI"          # AI content, no disclosure duty (regime N)
    AINAI = "AINAI"    # AI content concealed (regime D)
    AIAI = "AIAI"      # AI content disclosed (regime D)


class Regime(str, Enum):
    N = "N"
    D = "D"

    @classmethod
    def parse(cls, value) -> Regime:
        if isinstance(value, cls):
            return value
        return cls(str(value).upper())


# Tie-break preference, most preferred first.
PREFERENCE = (Strategy.NAI, Strategy.AIAI, Strategy.AINAI, Strategy.AI)
# A challenger must beat the incumbent by more than this to break a tie.
TIE_TOL = 1e-12


@dataclass(frozen=True)
class Segment:
    f_lo: float
    f_hi: float
    strategy: Strategy

    @property
    def measure(self) -> float:
        return self.f_hi - self.f_lo


@dataclass(frozen=True)
class Segmentation:
    segments: tuple[Segment, ...]
    regime: Regime
    penalty: float

    def measure(self, strategy: Strategy) -> float:
        return sum(s.measure for s in self.segments if s.strategy is strategy)

    def strategies(self) -> frozenset[Strategy]:
        return frozenset(s.strategy for s in self.segments)

    def strategy_at(self, f: float) -> Strategy:
        for seg in self.segments:
            if f <= seg.f_hi:
                return seg.strategy
        return self.segments[-1].strategy

    def as_records(self) -> list[dict]:
        return [
            {"f_lo": s.f_lo, "f_hi": s.f_hi, "strategy": s.strategy.value, "measure": s.measure}
            for s in self.segments
        ]


# Scalar utility kernels. Plain arithmetic so they also run elementwise on
# numpy arrays and compile under numba for the brute-force oracle.

def u_human(c, r):
    return 1.0 - r - c


def u_undisclosed(v, c, delta, beta, r, f):
    return (1.0 - r) * (beta * f * v + (1.0 - beta) * v) - delta * c


def u_concealed(v, c, delta, beta, r, k, f, p):
    return (1.0 - r) * (beta * (f * k * v - p) + (1.0 - beta) * v) - delta * c


def u_disclosed(v, c, delta, r, f):
    return (1.0 - r) * f * v - delta * c


def pick_n(u_nai, u_ai):
    """0 for NAI, 1 for AI; ties go to NAI."""
    if u_ai > u_nai + TIE_TOL:
        return 1
    return 0


def pick_d(u_nai, u_ainai, u_aiai):
    """0 for NAI, 1 for AINAI, 2 for AIAI; ties resolve NAI, then AIAI, then AINAI."""
    best, code = u_nai, 0
    if u_aiai > best + TIE_TOL:
        best, code = u_aiai, 2
    if u_ainai > best + TIE_TOL:
        code = 1
    return code


def utilities_N(params: ModelParams, f: float) -> tuple[float, float]:
    p = _as_params(params)
    f = getattr(f, "f", f)
    return u_human(p.c, p.r), u_undisclosed(p.v, p.c, p.delta, p.beta, p.r, f)


def utilities_D(params: ModelParams, f: float, penalty: float) -> tuple[float, float, float]:
    p = _as_params(params)
    f = getattr(f, "f", f)
    pen = getattr(penalty, "p", penalty)
    return (
        u_human(p.c, p.r),
        u_concealed(p.v, p.c, p.delta, p.beta, p.r, p.k, f, pen),
        u_disclosed(p.v, p.c, p.delta, p.r, f),
    )


def best_response(params: ModelParams, f: float, regime, penalty: float = 0.0) -> Strategy:
    """Utility-maximising strategy; near-ties go to the earlier entry of PREFERENCE."""
    regime = Regime.parse(regime)
    if regime is Regime.N:
        return (Strategy.NAI, Strategy.AI)[pick_n(*utilities_N(params, f))]
    return (Strategy.NAI, Strategy.AINAI, Strategy.AIAI)[pick_d(*utilities_D(params, f, penalty))]


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


def _tile(bounds: list[tuple[float, Strategy]]) -> tuple[Segment, ...]:
    # bounds: (upper end, strategy) in increasing f, last upper end is 1
    segments = []
    lo = 0.0
    for hi, strategy in bounds:
        hi = max(lo, _clamp(hi))
        if hi > lo:
            segments.append(Segment(lo, hi, strategy))
        lo = hi
    return tuple(segments)


def segment(params: ModelParams, regime, penalty: float = 0.0) -> Segmentation:
    """Partition [0, 1] into strategy intervals, lowest f first.

    Cutoffs are clamped to [0, 1] here and zero-measure pieces are dropped.
    """
    p = _as_params(params)
    regime = Regime.parse(regime)
    pen = float(getattr(penalty, "p", penalty))
    if p.v <= adoption_threshold(p):
        return Segmentation((Segment(0.0, 1.0, Strategy.NAI),), regime, pen)
    if regime is Regime.N:
        f0 = cutoff_f0(p)
        bounds = [(f0, Strategy.NAI), (1.0, Strategy.AI)]
    else:
        cut = cutoffs_D(p, pen)
        # at the deterrence penalty f1 == f2 up to rounding; no concealment band
        if cut.f1 < cut.f2 - EDGE_TOL:
            bounds = [(cut.f1, Strategy.NAI), (cut.f2, Strategy.AINAI), (1.0, Strategy.AIAI)]
        else:
            bounds = [(cut.f12, Strategy.NAI), (1.0, Strategy.AIAI)]
    return Segmentation(_tile(bounds), regime, pen)


def strategy_set(params: ModelParams) -> frozenset[Strategy]:
    """Strategies played with positive mass at the optimal penalty."""
    pen, _ = p_star(params)
    return segment(params, Regime.D, pen).strategies()
