import numpy as np
import pytest

from zblfsim import default_params, load_config


@pytest.fixture
def params():
    return default_params()


@pytest.fixture(scope="session")
def default_config():
    return load_config()


CALM_START = ["sim.q1_0=0.0", "sim.q2_0=1.0", "sim.qdot1_0=2.0", "sim.qdot2_0=0.0"]


@pytest.fixture
def short_config():
    """Small run starting on the desired trajectory: smooth and fast."""
    return load_config(overrides=["sim.t_end=0.05"] + CALM_START)


@pytest.fixture
def rng():
    return np.random.default_rng(42)
