import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")


def nonneg_matrices(max_n=4, max_m=4, levels=4):
    """Small matrices with entries k/levels, so ties and dominations are common."""
    shapes = st.tuples(st.integers(1, max_n), st.integers(1, max_m))
    return shapes.flatmap(lambda s: arrays(
        float, s, elements=st.integers(0, levels).map(lambda k: k / levels)))


def nonneg_vectors(n, max_value=4.0):
    return arrays(float, n, elements=st.floats(0, max_value, allow_nan=False, allow_subnormal=False))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
