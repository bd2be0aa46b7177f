import numpy as np
import pytest

from skewgroup.harness import Context, load_fixture

FIXTURES = ("EX-A", "EX-B", "EX-C", "EX-D", "EX-E")
FREE = ("EX-A", "EX-B", "EX-E")


@pytest.fixture(scope="session")
def contexts():
    """Session-wide contexts, one per bundled fixture, built lazily."""
    built = {}

    def get(name):
        if name not in built:
            built[name] = Context(load_fixture(name))
        return built[name]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
