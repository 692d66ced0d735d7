import numpy as np
import pytest

from slr.simulation import SimConfig, simulate_dataset


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_compositions(rng, n, p):
    raw = rng.lognormal(mean=0.0, sigma=1.0, size=(n, p))
    return raw / raw.sum(axis=1, keepdims=True)


@pytest.fixture
def noiseless_case_i():
    cfg = SimConfig.for_case("i", n=100, p=30, sigma_eps=0.0, sigma_y=0.0, seed=7)
    return simulate_dataset(cfg)
