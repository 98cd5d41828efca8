import os

import pytest
from hypothesis import HealthCheck, settings

from linsets.field_tower import make_tower

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=25, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def f4():
    return make_tower(2, 1, 2)


@pytest.fixture(scope="session")
def f8():
    return make_tower(2, 1, 3)


@pytest.fixture(scope="session")
def f9():
    return make_tower(3, 1, 2)


@pytest.fixture(scope="session")
def f16():
    # q = 4, n = 2
    return make_tower(2, 2, 2)
