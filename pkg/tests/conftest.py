import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ensemble_teleport import CoefficientVector, sample_mixed_uniform, sample_pure_uniform

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_coefficients(rng, n, kind="mixed"):
    """n valid coefficient vectors drawn from the Bloch ball or sphere."""
    draw = sample_pure_uniform if kind == "pure" else sample_mixed_uniform
    return [draw(rng) for _ in range(n)]


def random_hermitian(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return m + m.conj().T


@pytest.fixture
def coefficient_samples(rng):
    return random_coefficients(rng, 100)


def bloch_coefficients(x, y, z):
    return CoefficientVector.from_bloch(x, y, z)
