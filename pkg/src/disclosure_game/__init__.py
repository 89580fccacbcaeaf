"""Equilibrium solver for a platform choosing whether to mandate AI-content disclosure."""

from .closedform import (
    PenaltyRegion,
    compute_thresholds,
    cutoffs_D,
    p_star,
    penalty_region,
    profit_D,
    profit_D_star,
    profit_N,
)
from .equilibrium import Regime, Strategy, best_response, segment, strategy_set
from .params import ModelParams, NumericsConfig, RangeError, ConfigError, load_params, validate
from .policy import regime_boundaries, regime_choice, statics_prediction
from .welfare import creator_surplus, quality, transparency, welfare_comparison

__all__ = [
    "ConfigError",
    "ModelParams",
    "NumericsConfig",
    "PenaltyRegion",
    "RangeError",
    "Regime",
    "Strategy",
    "best_response",
    "compute_thresholds",
    "creator_surplus",
    "cutoffs_D",
    "load_params",
    "p_star",
    "penalty_region",
    "profit_D",
    "profit_D_star",
    "profit_N",
    "quality",
    "regime_boundaries",
    "regime_choice",
    "segment",
    "statics_prediction",
    "strategy_set",
    "transparency",
    "validate",
    "welfare_comparison",
]
