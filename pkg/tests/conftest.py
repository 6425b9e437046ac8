import numpy as np
import pytest

from easense.hyperspace import HyperSpace, ParamSpec


@pytest.fixture
def unit_space():
    """Two continuous parameters on [0, 1], so decoded values equal unit coordinates."""
    return HyperSpace(params=[
        ParamSpec(name="x1", kind="continuous", lower=0.0, upper=1.0),
        ParamSpec(name="x2", kind="continuous", lower=0.0, upper=1.0),
    ])


@pytest.fixture
def ishigami_space():
    return HyperSpace(params=[
        ParamSpec(name=f"x{i}", kind="continuous", lower=-np.pi, upper=np.pi) for i in range(1, 4)
    ])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def tiny_de(tmp_path):
    """A DE Morris experiment small enough to run end to end in a test."""
    return {
        "algorithm": "de",
        "hyperspace": [
            {"name": "lambda", "kind": "integer", "lower": 10, "upper": 20},
            {"name": "beta_min", "kind": "continuous", "lower": 0.0, "upper": 1.0},
            {"name": "b_type", "kind": "categorical", "categories": ["best", "rand"]},
        ],
        "method": "morris",
        "r": 3,
        "p": 4,
        "problems": ["sphere_n2", "rastrigin_n2"],
        "runs": 2,
        "budget": 60,
        "seed": 3,
        "output_dir": str(tmp_path / "de"),
    }


@pytest.fixture
def tiny_nsga3(tmp_path):
    return {
        "algorithm": "nsga3",
        "hyperspace": [
            {"name": "lambda", "kind": "integer", "lower": 10, "upper": 16},
            {"name": "sbx_prob", "kind": "continuous", "lower": 0.0, "upper": 1.0},
        ],
        "method": "sobol",
        "n": 4,
        "problems": ["dtlz2_m2_n4"],
        "runs": 1,
        "budget": 64,
        "seed": 1,
        "output_dir": str(tmp_path / "nsga3"),
    }
