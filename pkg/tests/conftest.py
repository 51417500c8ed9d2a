import numpy as np
import pytest

from factorkde import CopulaFamily, OneFactorModel


@pytest.fixture
def gumbel14():
    return CopulaFamily.gumbel(1.4)


@pytest.fixture
def clayton2():
    return CopulaFamily.clayton(2.0)


@pytest.fixture
def indep():
    return CopulaFamily.independence()


@pytest.fixture
def uniform_matrix():
    def _make(n, d, seed=0):
        rng = np.random.default_rng(seed)
        return rng.uniform(1e-4, 1 - 1e-4, size=(n, d))
    return _make


def model_of(fam, d):
    return OneFactorModel.homogeneous(fam, d)
