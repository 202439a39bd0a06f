import numpy as np
import pytest

from bellcorr import sampling


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_density(rng):
    return sampling.density(rng, 4)


@pytest.fixture
def admissible_triples(rng):
    return sampling.admissible(rng, 50)
