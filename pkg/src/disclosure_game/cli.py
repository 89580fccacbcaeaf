"""Command-line front end: ``eval``, ``sweep`` and ``check``.

Exit codes: 0 success, 2 config parse error, 3 parameter out of range,
4 I/O error, 5 check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import closedform as cf
from .equilibrium import Regime, Strategy, segment
from .oracle import OracleConfig
from .params import (
    DEFAULT_V_BAR,
    PARAM_KEYS,
    ConfigError,
    ModelParams,
    NumericsConfig,
    RangeError,
    adoption_threshold,
    parse_params_text,
    validate,
)
from .policy import regime_choice
from .suite import SUITES, SuiteConfig, UnknownSuite, run_suite
from .welfare import creator_surplus, quality, transparency, welfare_comparison

EXIT_OK, EXIT_PARSE, EXIT_RANGE, EXIT_IO, EXIT_CHECK = 0, 2, 3, 4, 5

# fixed primitives of the published region plots
FIGURE_PARAMS = {"c": 0.5, "beta": 0.6, "r": 0.3, "k": 0.8, "v_bar": DEFAULT_V_BAR}

DEFAULT_COLUMNS = (
    "region_tag", "strategy_set", "p_star", "profit_N", "profit_D_star", "chosen",
    "cs_N", "cs_D", "t_N", "t_D", "q_N", "q_D",
)

PRESETS = {
    # non-disclosure sorting
    "fig1": ("f0", "strategy_set_N", "profit_N", "cs_N", "t_N", "q_N"),
    # disclosure sorting at the optimal penalty
    "fig2": ("region_tag", "p_star", "f1", "f2", "f12", "strategy_set", "profit_D_star"),
    "fig3": DEFAULT_COLUMNS,
    "fig4": DEFAULT_COLUMNS,
}
PRESET_AXES = (("delta", 0.02, 0.98), ("v", 0.3, 2.5))
PRESET_GRID = (200, 200)

_SET_ORDER = (Strategy.NAI, Strategy.AINAI, Strategy.AIAI, Strategy.AI)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    axis1: Axis
    axis2: Axis
    fixed: ModelParams
    outputs: tuple[str, ...] = DEFAULT_COLUMNS

    def __post_init__(self):
        if self.axis1.name == self.axis2.name:
            raise CliError("sweep axes must name distinct parameters", EXIT_PARSE)
        for axis in (self.axis1, self.axis2):
            if axis.name not in PARAM_KEYS or axis.name == "v_bar":
                raise CliError(f"cannot sweep over {axis.name!r}", EXIT_PARSE)
            if axis.steps < 2:
                raise CliError(f"{axis.name}: need at least 2 steps", EXIT_PARSE)
        unknown = [c for c in self.outputs if c not in _COLUMNS]
        if unknown:
            raise CliError(f"unknown output columns: {', '.join(unknown)}", EXIT_PARSE)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _set_label(strategies) -> str:
    return "{" + ",".join(s.value for s in _SET_ORDER if s in strategies) + "}"


def _region_tag(p: ModelParams) -> str:
    if p.v <= adoption_threshold(p):
        return "Degenerate"
    return cf.penalty_region(p).value


class _Cell:
    """Lazily computed quantities of one grid point."""

    def __init__(self, params: ModelParams):
        self.p = params
        self.pen, _ = cf.p_star(params)
        self.seg_n = segment(params, Regime.N)
        self.seg_d = segment(params, Regime.D, self.pen)
        self.cut = cf.cutoffs_D(params, self.pen)
        self.welfare = welfare_comparison(params)
        self.decision = regime_choice(params)


_COLUMNS = {
    "region_tag": lambda c: _region_tag(c.p),
    "strategy_set": lambda c: _set_label(c.seg_d.strategies()),
    "strategy_set_N": lambda c: _set_label(c.seg_n.strategies()),
    "p_star": lambda c: _fmt(c.pen),
    "profit_N": lambda c: _fmt(c.decision.profit_N),
    "profit_D_star": lambda c: _fmt(c.decision.profit_D_star),
    "chosen": lambda c: c.decision.chosen.value,
    "cs_N": lambda c: _fmt(c.welfare.cs_N),
    "cs_D": lambda c: _fmt(c.welfare.cs_D),
    "t_N": lambda c: _fmt(c.welfare.t_N),
    "t_D": lambda c: _fmt(c.welfare.t_D),
    "q_N": lambda c: _fmt(c.welfare.q_N),
    "q_D": lambda c: _fmt(c.welfare.q_D),
    "f0": lambda c: _fmt(c.cut.f0),
    "f1": lambda c: _fmt(c.cut.f1),
    "f2": lambda c: _fmt(c.cut.f2),
    "f12": lambda c: _fmt(c.cut.f12),
}


def sweep_rows(spec: SweepSpec):
    """Yield CSV rows (header first), axis1-major."""
    yield ["axis1", "axis2", *spec.outputs]
    for a in spec.axis1.values():
        for b in spec.axis2.values():
            raw = spec.fixed.with_(**{spec.axis1.name: float(a), spec.axis2.name: float(b)})
            cell = _Cell(_validated(raw))
            yield [_fmt(a), _fmt(b), *(_COLUMNS[col](cell) for col in spec.outputs)]


def write_sweep(spec: SweepSpec, out_path: str) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    n = 0
    for row in sweep_rows(spec):
        writer.writerow(row)
        n += 1
    try:
        with open(out_path, "w", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        raise CliError(f"cannot write {out_path}: {exc}", EXIT_IO) from None
    return n - 1


# ---- helpers --------------------------------------------------------------

def _read_config(path: str | None, defaults: dict | None = None) -> ModelParams:
    if path is None:
        if defaults is None:
            raise CliError("a config file is required", EXIT_PARSE)
        return ModelParams(**defaults)
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from None
    try:
        return parse_params_text(text, defaults)
    except ConfigError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _validated(params: ModelParams) -> ModelParams:
    try:
        return validate(params).params
    except RangeError as exc:
        raise CliError(f"invalid parameter {exc}", EXIT_RANGE) from None


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        n1, n2 = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise CliError(f"--grid expects <n1>x<n2>, got {text!r}", EXIT_PARSE) from None
    return n1, n2


def _parse_axis(text: str) -> tuple[str, float, float]:
    try:
        name, lo, hi = text.split(":")
        return name, float(lo), float(hi)
    except ValueError:
        raise CliError(f"axis expects name:min:max, got {text!r}", EXIT_PARSE) from None


def _parse_penalty(text: str):
    if text == "optimal":
        return None
    try:
        value = float(text)
    except ValueError:
        raise CliError(f"--penalty expects 'optimal' or a number, got {text!r}", EXIT_PARSE) from None
    if not value >= 0:
        raise CliError(f"invalid parameter p={value!r}: penalty must be non-negative", EXIT_RANGE)
    return value


# ---- commands -------------------------------------------------------------

def evaluate(params: ModelParams, regime: str = "choose", penalty=None) -> dict:
    """Structured summary of one parameter point."""
    p = _validated(params)
    pen_star, tag = cf.p_star(p)
    pen = pen_star if penalty is None else penalty
    th = cf.compute_thresholds(p)
    pn = cf.profit_N(p)
    pd = cf.profit_D(p, pen)
    if penalty is None:
        decision = regime_choice(p)
        chosen = decision.chosen
    else:
        chosen = Regime.D if pd > pn else Regime.N
    shown = chosen if regime == "choose" else Regime.parse(regime)
    seg = segment(p, shown, pen if shown is Regime.D else 0.0)
    return {
        "params": p.as_dict(),
        "region": "Active" if p.v > adoption_threshold(p) else "Degenerate",
        "thresholds": asdict(th),
        "delta0_shape": cf.shape_delta0(p),
        "cutoffs": asdict(cf.cutoffs_D(p, pen)),
        "segmentation": {"regime": shown.value, "penalty": seg.penalty, "segments": seg.as_records()},
        "p_star": pen_star,
        "region_tag": tag.value,
        "penalty": pen,
        "profit_N": pn,
        "profit_D": pd,
        "profit_D_star": cf.profit_D_star(p),
        "cs_N": creator_surplus(p, Regime.N),
        "cs_D": creator_surplus(p, Regime.D, pen),
        "t_N": transparency(p, Regime.N),
        "t_D": transparency(p, Regime.D, pen),
        "q_N": quality(p, Regime.N),
        "q_D": quality(p, Regime.D, pen),
        "chosen": chosen.value,
    }


def cmd_eval(args) -> int:
    params = _read_config(args.config)
    doc = evaluate(params, args.regime, _parse_penalty(args.penalty))
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def build_sweep_spec(args) -> SweepSpec:
    preset = args.preset
    defaults = dict(FIGURE_PARAMS, v=1.0, delta=0.5) if preset or args.config is None else None
    fixed = _read_config(args.config, defaults)
    axes = list(PRESET_AXES)
    if args.axis1:
        axes[0] = _parse_axis(args.axis1)
    if args.axis2:
        axes[1] = _parse_axis(args.axis2)
    n1, n2 = _parse_grid(args.grid) if args.grid else PRESET_GRID
    outputs = PRESETS[preset] if preset else DEFAULT_COLUMNS
    if args.columns:
        outputs = tuple(c.strip() for c in args.columns.split(",") if c.strip())
    return SweepSpec(Axis(*axes[0], n1), Axis(*axes[1], n2), fixed, tuple(outputs))


def cmd_sweep(args) -> int:
    spec = build_sweep_spec(args)
    n = write_sweep(spec, args.out)
    print(f"wrote {n} rows to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    v_bar = DEFAULT_V_BAR
    if args.config:
        v_bar = _validated(_read_config(args.config)).v_bar
    try:
        numerics = NumericsConfig(f_grid_size=args.f_cells, abs_tol=args.tol)
        cfg = SuiteConfig(numerics=numerics, oracle=OracleConfig(f_cells=args.f_cells), v_bar=v_bar)
    except RangeError as exc:
        raise CliError(f"invalid setting {exc}", EXIT_RANGE) from None
    try:
        report = run_suite(args.suite, args.draws, args.seed, cfg)
    except UnknownSuite:
        raise CliError(f"unknown suite {args.suite!r}", EXIT_PARSE) from None
    print(report.to_json())
    print(f"{report.suite}: {len(report.failures)} failures in {report.elapsed:.2f}s", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="disclosure-game", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one parameter point")
    ev.add_argument("config", help="key=value parameter file")
    ev.add_argument("--regime", choices=("N", "D", "choose"), default="choose")
    ev.add_argument("--penalty", default="optimal", help="'optimal' or a number")
    ev.set_defaults(func=cmd_eval)

    sw = sub.add_parser("sweep", help="two-parameter grid written as CSV")
    sw.add_argument("config", nargs="?", help="fixed parameters (axis fields are ignored)")
    sw.add_argument("--preset", choices=sorted(PRESETS))
    sw.add_argument("--grid", help="<n1>x<n2>, default 200x200")
    sw.add_argument("--axis1", help="name:min:max, default delta:0.02:0.98")
    sw.add_argument("--axis2", help="name:min:max, default v:0.3:2.5")
    sw.add_argument("--columns", help="comma-separated output columns")
    sw.add_argument("--out", required=True)
    sw.set_defaults(func=cmd_sweep)

    ch = sub.add_parser("check", help="run a randomised check suite")
    ch.add_argument("config", nargs="?", help="optional file supplying v_bar")
    ch.add_argument("--suite", required=True, choices=SUITES)
    ch.add_argument("--draws", type=int, default=200)
    ch.add_argument("--seed", type=int, default=0)
    ch.add_argument("--f-cells", type=int, default=200_000)
    ch.add_argument("--tol", type=float, default=1e-4)
    ch.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
