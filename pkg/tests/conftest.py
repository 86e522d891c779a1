import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci", derandomize=True, max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much,
                           HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_unit_points(k, rng):
    pts = rng.normal(size=(k, 3))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)
