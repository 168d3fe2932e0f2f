import os
import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "cfa", max_examples=60, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("cfa")

SEED = int(os.environ.get("CFA_SEED", "20240611"))


@pytest.fixture
def rng():
    return random.Random(SEED)
