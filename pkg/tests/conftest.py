import pathlib

import pytest
from hypothesis import HealthCheck, settings

from smoothnum import primes, specfun, zetazeros

import oracles

FIXTURE_DIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
ZEROS_PATH = FIXTURE_DIR / "zeros1e4.txt"

# Reproducible CI runs: derandomized, no wall-clock flakiness on the
# heavier numerical properties.
settings.register_profile(
    "smoothnum",
    derandomize=True,
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("smoothnum")


@pytest.fixture(scope="session")
def rho_table():
    return specfun.default_rho_table()


@pytest.fixture(scope="session")
def pt100k():
    return primes.sieve(10**5)


@pytest.fixture(scope="session")
def zeros10k():
    return zetazeros.load_zeros(ZEROS_PATH, height=10010.0)


@pytest.fixture(scope="session")
def gpf100k():
    return oracles.gpf_sieve(10**5)
