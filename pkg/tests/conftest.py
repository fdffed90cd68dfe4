import pytest

from symcert import sieve_upto


@pytest.fixture(scope="session")
def sieve_1m():
    """The default-sized sieve; built once for the whole run."""
    return sieve_upto(10**6)


@pytest.fixture(scope="session")
def sieve_small():
    return sieve_upto(10**4)
