"""Model primitives, validation and the shared numerics configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from pathlib import Path

DEFAULT_V_BAR = 3.0

PARAM_KEYS = ("v", "c", "delta", "beta", "r", "k", "v_bar")


class RangeError(ValueError):
    """A parameter lies outside the model's domain."""

    def __init__(self, field: str, value: float, reason: str):
        self.field = field
        self.value = value
        super().__init__(f"{field}={value!r}: {reason}")


class ConfigError(ValueError):
    """A parameter file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class Region(str, Enum):
    ACTIVE = "Active"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class ModelParams:
    """Primitive tuple of the disclosure game.

    ``v`` is AI content quality (human quality is 1), ``c`` the human
    production cost, ``delta`` the AI cost factor, ``beta`` detection
    accuracy, ``r`` the platform commission, ``k`` the trust discount
    applied after detected concealment and ``v_bar`` the upper bound on v.
    """

    v: float
    c: float
    delta: float
    beta: float
    r: float
    k: float
    v_bar: float = DEFAULT_V_BAR

    @property
    def cost_gap(self) -> float:
        """Cost saved by switching to AI, c(1 - delta)."""
        return self.c * (1.0 - self.delta)

    def with_(self, **changes) -> ModelParams:
        return replace(self, **changes)

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class ValidatedParams:
    params: ModelParams
    region: Region

    @property
    def active(self) -> bool:
        return self.region is Region.ACTIVE


@dataclass(frozen=True)
class CreatorType:
    f: float

    def __post_init__(self):
        if not 0.0 <= self.f <= 1.0:
            raise RangeError("f", self.f, "must lie in [0, 1]")


@dataclass(frozen=True)
class PenaltyPolicy:
    p: float

    def __post_init__(self):
        if not self.p >= 0.0:
            raise RangeError("p", self.p, "penalty must be non-negative")


@dataclass(frozen=True)
class NumericsConfig:
    f_grid_size: int = 200_000
    p_grid_size: int = 100
    abs_tol: float = 1e-4
    boundary_eps: float = 1e-3

    def __post_init__(self):
        if self.f_grid_size < 1000:
            raise RangeError("f_grid_size", self.f_grid_size, "must be >= 1000")
        if self.p_grid_size < 100:
            raise RangeError("p_grid_size", self.p_grid_size, "must be >= 100")
        if not self.abs_tol > 0:
            raise RangeError("abs_tol", self.abs_tol, "must be positive")
        if not self.boundary_eps > 0:
            raise RangeError("boundary_eps", self.boundary_eps, "must be positive")


def adoption_threshold(params: ModelParams) -> float:
    """Quality below which no creator ever adopts AI."""
    keep = 1.0 - params.r
    return (keep - params.cost_gap) / keep


def _check_open(name: str, value: float, lo: float, hi: float) -> None:
    if not (math.isfinite(value) and lo < value < hi):
        raise RangeError(name, value, f"must lie in ({lo}, {hi})")


def validate(raw: ModelParams) -> ValidatedParams:
    """Check ranges and tag the adoption region.

    Raises RangeError naming the first offending field. The region
    v <= (1-r-c(1-delta))/(1-r), where AI is never adopted, is flagged
    as Degenerate rather than rejected.
    """
    if isinstance(raw, ValidatedParams):
        raw = raw.params
    if not (math.isfinite(raw.v_bar) and raw.v_bar > 1.0):
        # v's upper bound is meaningless without a sane v_bar
        raise RangeError("v_bar", raw.v_bar, "must exceed 1")
    _check_open("v", raw.v, 0.0, raw.v_bar)
    if not (math.isfinite(raw.c) and raw.c > 0.0):
        raise RangeError("c", raw.c, "must be positive")
    _check_open("delta", raw.delta, 0.0, 1.0)
    _check_open("beta", raw.beta, 0.5, 1.0)
    _check_open("r", raw.r, 0.0, 1.0)
    _check_open("k", raw.k, 0.0, 1.0)
    if raw.cost_gap >= 1.0 - raw.r:
        raise RangeError(
            "c", raw.c,
            "c(1-delta) must be below 1-r, otherwise disclosed AI dominates human content",
        )
    region = Region.ACTIVE if raw.v > adoption_threshold(raw) else Region.DEGENERATE
    return ValidatedParams(params=raw, region=region)


def _as_params(params) -> ModelParams:
    return params.params if isinstance(params, ValidatedParams) else params


def parse_params_text(text: str, defaults: dict[str, float] | None = None) -> ModelParams:
    """Parse flat ``key=value`` lines. Blank lines and ``#`` comments are skipped."""
    values: dict[str, float] = {"v_bar": DEFAULT_V_BAR}
    if defaults:
        values.update(defaults)
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected key=value, got {stripped!r}", lineno)
        key, _, value = (part.strip() for part in stripped.partition("="))
        if key not in PARAM_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        try:
            values[key] = float(value)
        except ValueError:
            raise ConfigError(f"{key}: not a decimal literal: {value!r}", lineno) from None
    missing = [key for key in PARAM_KEYS if key not in values]
    if missing:
        raise ConfigError(f"missing keys: {', '.join(missing)}")
    return ModelParams(**{key: values[key] for key in PARAM_KEYS})


def load_params(path: str | Path, defaults: dict[str, float] | None = None) -> ModelParams:
    return parse_params_text(Path(path).read_text(), defaults)


def dump_params(params: ModelParams) -> str:
    return "".join(f"{key}={getattr(params, key)!r}\n" for key in PARAM_KEYS)
