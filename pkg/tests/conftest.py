import pytest

from tribadic import prime_context


@pytest.fixture(scope="session")
def ctx5():
    return prime_context(5, 24)


@pytest.fixture(scope="session")
def ctx7():
    return prime_context(7, 24)


@pytest.fixture(scope="session")
def ctx83():
    return prime_context(83, 24)


@pytest.fixture(scope="session")
def ctx269():
    return prime_context(269, 24)
