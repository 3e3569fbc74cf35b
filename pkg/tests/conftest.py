import pytest

from quadratios.arith import shared_sieve


@pytest.fixture(scope="session")
def sieve():
    return shared_sieve()
