import numpy as np
import pytest

from qcorr import OptimizerConfig, named


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def paper_state():
    return named("paper_example")


@pytest.fixture
def fast_config():
    # coarser grid keeps the unit tests quick; acceptance uses defaults
    return OptimizerConfig(grid_theta=64, grid_phi=64)
