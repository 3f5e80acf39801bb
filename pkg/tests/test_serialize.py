import math

import numpy as np
import pytest

from swapenum import serialize


def test_sorted_keys_and_17_digits():
    text = serialize.dumps({"b": 0.1, "a": [1, 2.0, True, None]}, indent=None)
    assert text == '{"a": [1,2.0,true,null],"b": 0.10000000000000001}'


def test_round_trip_is_stable():
    data = {"x": [1 / 3, 2.5e-17, -0.0, 1e300], "n": np.int64(4), "arr": np.array([0.1, 0.2])}
    once = serialize.dumps(data)
    assert serialize.dumps(serialize.loads(once)) == once


def test_floats_round_trip_exactly():
    for x in (1 / 3, math.pi, 5e-324, 2.0**-60):
        assert serialize.loads(serialize.dumps(x)) == x


def test_rejects_non_finite_and_unknown():
    with pytest.raises(ValueError):
        serialize.dumps(float("nan"))
    with pytest.raises(TypeError):
        serialize.dumps(object())
