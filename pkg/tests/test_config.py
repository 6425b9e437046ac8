import json

import pytest

from easense.config import config_from_dict, load_config
from easense.errors import ConfigError
from easense.problems import MOO10, SOO33


def test_defaults_follow_the_algorithm():
    soo = config_from_dict({"algorithm": "cmaes", "problems": ["sphere"]})
    assert soo.metric_names == ["best"] and soo.binning() == (50, 2.0)
    assert soo.space.k == 5
    moo = config_from_dict({"algorithm": "moead"})
    assert moo.metric_names == ["gd", "igd", "hv"] and moo.binning() == (20, 0.99)
    assert moo.problem_ids == MOO10
    assert config_from_dict({"algorithm": "de"}).problem_ids == SOO33


def test_inline_hyperspace(tiny_de):
    config = config_from_dict(tiny_de)
    assert config.space.names == ["lambda", "beta_min", "b_type"]


@pytest.mark.parametrize("update", [
    {"p": 5},
    {"metrics": ["igd"]},
    {"problems": ["dtlz2"]},
    {"problems": ["nowhere"]},
    {"runs": 0},
    {"unknown_field": 1},
    {"hyperspace": "pso"},
])
def test_invalid_documents(tiny_de, update):
    with pytest.raises(ConfigError):
        config_from_dict({**tiny_de, **update})


def test_fingerprint_ignores_location_and_parallelism(tiny_de):
    a = config_from_dict(tiny_de)
    b = config_from_dict({**tiny_de, "output_dir": "elsewhere", "parallelism": 4})
    c = config_from_dict({**tiny_de, "seed": 4})
    assert a.fingerprint() == b.fingerprint() != c.fingerprint()


def test_environment_overrides(tiny_de, monkeypatch):
    monkeypatch.setenv("EASENSE_OUTPUT_DIR", "/tmp/override")
    monkeypatch.setenv("EASENSE_PARALLELISM", "3")
    config = config_from_dict(tiny_de)
    assert config.output_dir == "/tmp/override" and config.parallelism == 3
    monkeypatch.setenv("EASENSE_PARALLELISM", "many")
    with pytest.raises(ConfigError):
        config_from_dict(tiny_de)


def test_load_config_errors(tmp_path, tiny_de):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(tiny_de))
    assert load_config(path).algorithm == "de"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(path)
    path.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        load_config(path)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")


def test_package_exports_the_experiment_entry_points():
    import easense
    from easense import runner

    assert easense.run_experiment is runner.run_experiment
    assert easense.load_config is load_config
    assert set(easense.PRESETS) == {"de", "cmaes", "nsga3", "moead"}
