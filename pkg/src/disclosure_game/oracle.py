"""Brute-force verification engine.

Profits are integrated by the midpoint rule over a uniform grid of creator
types, each cell taking the pointwise best response. The penalty is found
by a coarse grid search followed by golden-section refinement. Nothing here
uses the closed-form cutoffs, thresholds or branch conditions: only the
creator utilities and the argmax from :mod:`equilibrium`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from . import equilibrium as eq
from .equilibrium import Regime, Strategy
from .params import ModelParams, RangeError, _as_params

_u_human = njit(cache=True)(eq.u_human)
_u_undisclosed = njit(cache=True)(eq.u_undisclosed)
_u_concealed = njit(cache=True)(eq.u_concealed)
_u_disclosed = njit(cache=True)(eq.u_disclosed)
_pick_n = njit(cache=True)(eq.pick_n)
_pick_d = njit(cache=True)(eq.pick_d)


@njit(cache=True)
def _scan(v, c, delta, beta, r, k, disclosure, p, n_cells, counts):
    """Midpoint sum of realized engagement; fills strategy cell counts.

    counts: [NAI, AI, AINAI, AIAI].
    """
    total = 0.0
    for j in range(4):
        counts[j] = 0
    u_nai = _u_human(c, r)
    for i in range(n_cells):
        f = (i + 0.5) / n_cells
        if disclosure:
            code = _pick_d(
                u_nai,
                _u_concealed(v, c, delta, beta, r, k, f, p),
                _u_disclosed(v, c, delta, r, f),
            )
            if code == 0:
                total += 1.0
                counts[0] += 1
            elif code == 1:
                total += beta * f * k * v + (1.0 - beta) * v
                counts[2] += 1
            else:
                total += f * v
                counts[3] += 1
        else:
            if _pick_n(u_nai, _u_undisclosed(v, c, delta, beta, r, f)) == 0:
                total += 1.0
                counts[0] += 1
            else:
                total += beta * f * v + (1.0 - beta) * v
                counts[1] += 1
    return r * total / n_cells


@njit(cache=True)
def _scan_many(v, c, delta, beta, r, k, pens, n_cells):
    out = np.empty(pens.shape[0])
    counts = np.zeros(4, dtype=np.int64)
    for j in range(pens.shape[0]):
        out[j] = _scan(v, c, delta, beta, r, k, True, pens[j], n_cells, counts)
    return out


INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OracleConfig:
    f_cells: int = 200_000
    p_max_factor: float = 1.25
    p_cells: int = 100
    refine_iters: int = 40

    def __post_init__(self):
        if self.f_cells < 1000:
            raise RangeError("f_cells", self.f_cells, "must be >= 1000")
        if self.p_cells < 100:
            raise RangeError("p_cells", self.p_cells, "must be >= 100")
        if self.refine_iters < 30:
            raise RangeError("refine_iters", self.refine_iters, "must be >= 30")
        if not self.p_max_factor >= 1.0:
            raise RangeError("p_max_factor", self.p_max_factor, "must be >= 1")


class RegionStraddle(ValueError):
    """A finite-difference stencil crosses a known breakpoint."""


def _fields(p: ModelParams):
    return float(p.v), float(p.c), float(p.delta), float(p.beta), float(p.r), float(p.k)


def oracle_scan(params: ModelParams, regime, penalty: float = 0.0, cfg: OracleConfig | None = None):
    """Quadrature profit plus the mass of each strategy on the grid."""
    cfg = cfg or OracleConfig()
    p = _as_params(params)
    regime = Regime.parse(regime)
    counts = np.zeros(4, dtype=np.int64)
    value = _scan(*_fields(p), regime is Regime.D, float(getattr(penalty, "p", penalty)), cfg.f_cells, counts)
    masses = {
        s: counts[j] / cfg.f_cells
        for j, s in enumerate((Strategy.NAI, Strategy.AI, Strategy.AINAI, Strategy.AIAI))
    }
    return value, masses


def oracle_profit(params: ModelParams, regime, penalty: float = 0.0, cfg: OracleConfig | None = None) -> float:
    return oracle_scan(params, regime, penalty, cfg)[0]


def penalty_ceiling(params: ModelParams) -> float:
    """Penalty beyond which concealment is worse than disclosure for every f.

    At f = 0 concealing pays (1-beta)v - beta p against 0 for disclosing, and
    the gap only shrinks with f, so any p above (1-beta)v/beta extinguishes it.
    """
    p = _as_params(params)
    return (1.0 - p.beta) * p.v / p.beta


def _golden_max(fn, a: float, b: float, iters: int) -> tuple[float, float]:
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fn(d)
    return (c, fc) if fc >= fd else (d, fd)


def oracle_p_star(params: ModelParams, cfg: OracleConfig | None = None) -> tuple[float, float]:
    """Grid-then-golden search for the profit-maximising penalty.

    Returns (penalty, profit). Profit beyond the deterrence level is flat, so
    only the profit is meaningful to compare, not the location.
    """
    cfg = cfg or OracleConfig()
    p = _as_params(params)
    fields = _fields(p)
    top = cfg.p_max_factor * max(penalty_ceiling(p), 0.01)
    grid = np.linspace(0.0, top, cfg.p_cells + 1)
    values = _scan_many(*fields, grid, cfg.f_cells)
    # ties go to the largest penalty: on the deterrence plateau the platform
    # is indifferent and the higher penalty leaves no concealment sliver
    i = int(len(values) - 1 - np.argmax(values[::-1]))
    best_p, best_val = float(grid[i]), float(values[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, cfg.p_cells)]
    counts = np.zeros(4, dtype=np.int64)

    def fn(x):
        return _scan(*fields, True, x, cfg.f_cells, counts)

    x, fx = _golden_max(fn, float(lo), float(hi), cfg.refine_iters)
    if fx > best_val:
        best_p, best_val = x, fx
    return best_p, best_val


@dataclass(frozen=True)
class RegionCell:
    delta: float
    v: float
    strategies: frozenset[Strategy]
    chosen: Regime
    p_star: float
    profit_N: float
    profit_D_star: float


def oracle_cell(params: ModelParams, cfg: OracleConfig | None = None) -> RegionCell:
    cfg = cfg or OracleConfig()
    p = _as_params(params)
    pen, prof_d = oracle_p_star(p, cfg)
    prof_n = oracle_profit(p, Regime.N, 0.0, cfg)
    _, masses = oracle_scan(p, Regime.D, pen, cfg)
    present = frozenset(s for s, m in masses.items() if m > 0)
    chosen = Regime.D if prof_d > prof_n else Regime.N
    return RegionCell(p.delta, p.v, present, chosen, pen, prof_n, prof_d)


def oracle_region_map(base: ModelParams, deltas, vs, cfg: OracleConfig | None = None) -> list[list[RegionCell]]:
    """Oracle classification of every (delta, v) cell, delta-major.

    ``base`` supplies every field except delta and v. Cells are independent
    and evaluated in a fixed order, so the output does not depend on how
    the work is scheduled.
    """
    cfg = cfg or OracleConfig()
    base = _as_params(base)
    return [
        [oracle_cell(base.with_(delta=float(d), v=float(v)), cfg) for v in vs]
        for d in deltas
    ]


def finite_difference(fn, at: float, h: float = 1e-5, breakpoints=()) -> float:
    """Central difference (fn(at+h) - fn(at-h)) / 2h.

    Raises RegionStraddle if a breakpoint lies within the stencil.
    """
    if not h > 0:
        raise ValueError("step must be positive")
    for b in breakpoints:
        if at - h <= b <= at + h:
            raise RegionStraddle(f"breakpoint {b!r} inside [{at - h!r}, {at + h!r}]")
    return (fn(at + h) - fn(at - h)) / (2.0 * h)
