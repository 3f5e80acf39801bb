import numpy as np
import pytest

from swapenum import backend


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=backend.available())
def kernels(request):
    return backend.get(request.param)
