import numpy as np
import pytest

from easense.errors import ConfigError, InvalidGridError, ShapeError
from easense.hyperspace import (
    PRESETS,
    HyperSpace,
    ParamSpec,
    decode,
    encode,
    get_preset,
    grid_delta,
    resolve_space,
    snap_to_grid,
)


def test_grid_delta_values():
    assert grid_delta(4) == pytest.approx(2 / 3)
    assert grid_delta(10) == pytest.approx(10 / 18)


@pytest.mark.parametrize("p", [1, 3, 9])
def test_grid_delta_rejects_bad_levels(p):
    with pytest.raises(InvalidGridError):
        grid_delta(p)


def test_decode_continuous_integer_and_categories():
    space = HyperSpace(params=[
        ParamSpec(name="c", kind="continuous", lower=0.0, upper=4.0),
        ParamSpec(name="i", kind="integer", lower=10, upper=1000),
        ParamSpec(name="cat", kind="categorical", categories=["bin", "exp"]),
        ParamSpec(name="flag", kind="boolean"),
    ])
    config = decode(space, [0.25, 0.0, 0.75, 0.2])
    assert config == {"c": 1.0, "i": 10, "cat": "exp", "flag": False}
    assert decode(space, [1.0, 1.0, 1.0, 1.0]) == {"c": 4.0, "i": 1000, "cat": "exp", "flag": True}


def test_decode_integer_rounds_half_up():
    spec = ParamSpec(name="i", kind="integer", lower=0, upper=10)
    assert spec.decode_one(0.05) == 1
    assert spec.decode_one(0.04) == 0


def test_decode_rejects_wrong_length(unit_space):
    with pytest.raises(ShapeError):
        decode(unit_space, [0.1, 0.2, 0.3])


def test_encode_inverts_decode_for_numeric_and_labels():
    space = get_preset("de")
    u = np.array([0.5, 0.25, 0.3, 0.4, 0.6, 0.875, 0.2])
    config = decode(space, u)
    again = decode(space, encode(space, config))
    for name, value in config.items():
        if isinstance(value, str):
            assert again[name] == value
        else:
            assert again[name] == pytest.approx(value, rel=1e-12)


def test_encode_missing_param_raises(unit_space):
    with pytest.raises(ShapeError):
        encode(unit_space, {"x1": 0.5})


def test_snap_to_grid_ties_round_up():
    np.testing.assert_allclose(snap_to_grid([0.0, 0.5, 1.0, 0.06], 10), [0.0, 5 / 9, 1.0, 1 / 9])


def test_preset_sizes():
    assert {name: space.k for name, space in PRESETS.items()} == {"cmaes": 5, "de": 7, "nsga3": 6, "moead": 7}


def test_unknown_preset():
    with pytest.raises(ConfigError):
        get_preset("pso")


def test_resolve_inline_space():
    space = resolve_space([{"name": "a", "kind": "continuous", "lower": 0, "upper": 2}])
    assert space.names == ["a"]


@pytest.mark.parametrize("spec", [
    {"name": "a", "kind": "continuous", "lower": 1, "upper": 1},
    {"name": "a", "kind": "categorical", "categories": ["only"]},
    {"name": "a", "kind": "categorical", "categories": ["x", "x"]},
])
def test_invalid_domains(spec):
    with pytest.raises(ValueError):
        ParamSpec.model_validate(spec)


def test_duplicate_names_rejected():
    spec = ParamSpec(name="a", kind="boolean")
    with pytest.raises(ValueError):
        HyperSpace(params=[spec, spec])
