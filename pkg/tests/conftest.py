import random

import pytest
from hypothesis import HealthCheck, settings

from derivk.linalg import F32003, QQ

settings.register_profile("derivk", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("derivk")


@pytest.fixture(params=[QQ, F32003], ids=["Q", "F32003"])
def field(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(12345)
