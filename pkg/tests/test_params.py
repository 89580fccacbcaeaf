import pytest

from disclosure_game.params import (
    ConfigError,
    CreatorType,
    ModelParams,
    NumericsConfig,
    PenaltyPolicy,
    RangeError,
    Region,
    dump_params,
    load_params,
    parse_params_text,
    validate,
)


def test_validate_active(fig):
    assert validate(fig).region is Region.ACTIVE


def test_validate_degenerate(fig):
    assert validate(fig.with_(v=0.5)).region is Region.DEGENERATE


def test_validate_is_idempotent(fig):
    once = validate(fig)
    assert validate(once) == once


@pytest.mark.parametrize("field,value", [
    ("beta", 0.4), ("beta", 1.0), ("delta", 0.0), ("r", 1.0), ("k", 0.0),
    ("c", -0.1), ("v", 0.0), ("v", 3.0), ("v_bar", 1.0),
])
def test_validate_names_offending_field(fig, field, value):
    with pytest.raises(RangeError) as err:
        validate(fig.with_(**{field: value}))
    assert err.value.field == field


def test_cost_gap_beyond_commission_share_rejected(fig):
    with pytest.raises(RangeError) as err:
        validate(fig.with_(c=2.0, delta=0.5, r=0.3))
    assert err.value.field == "c"


def test_small_types():
    assert CreatorType(0.3).f == 0.3
    with pytest.raises(RangeError):
        CreatorType(1.2)
    with pytest.raises(RangeError):
        PenaltyPolicy(-1.0)
    with pytest.raises(RangeError):
        NumericsConfig(f_grid_size=10)


def test_parse_roundtrip(fig, tmp_path):
    path = tmp_path / "p.cfg"
    path.write_text("# figure point\n" + dump_params(fig) + "\n")
    assert load_params(path) == fig


def test_parse_defaults_v_bar():
    p = parse_params_text("v=1\nc=0.5\ndelta=0.5\nbeta=0.6\nr=0.3\nk=0.8\n")
    assert p.v_bar == 3.0


@pytest.mark.parametrize("text,line", [
    ("v=1\nbogus=2\n", 2),
    ("v=1\nc=abc\n", 2),
    ("v 1\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ConfigError) as err:
        parse_params_text(text)
    assert err.value.line == line


def test_parse_missing_keys():
    with pytest.raises(ConfigError, match="missing"):
        parse_params_text("v=1\n")


def test_with_returns_copy(fig):
    other = fig.with_(v=2.0)
    assert other.v == 2.0 and fig.v == 1.0
    assert isinstance(other, ModelParams)
