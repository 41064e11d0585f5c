import pytest

from src.config import HarnessConfig
from src.stability import compute_constants
from src.tree import CompactGroupSpec, default_window


@pytest.fixture(params=[3, 5])
def prime(request):
    return request.param


@pytest.fixture(scope="session")
def small_config():
    """Standard representation at p = 3 with sample counts fit for unit tests"""
    return HarnessConfig(prime=3, samples=6, chain_samples=3, decomposition_samples=5, translation_units=[1, 2])


@pytest.fixture(scope="session")
def small_constants(small_config):
    return compute_constants(
        small_config.rep_spec(),
        small_config.omega_set(),
        small_config.norm(),
        small_config.window(),
        small_config.level,
        small_config.enumeration_budget,
    )


@pytest.fixture
def window():
    return default_window(3)


@pytest.fixture
def torus():
    return CompactGroupSpec.torus(3)
