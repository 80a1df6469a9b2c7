import pytest

from rademacher.cyclotomic import make_context

# desk-scale parameter set used throughout; cyclotomic degrees stay small
CI_PAIRS = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)]


@pytest.fixture(scope="session")
def ctx23():
    return make_context(2, 3)


@pytest.fixture(scope="session")
def ctx25():
    return make_context(2, 5)


@pytest.fixture(scope="session")
def ctx35():
    return make_context(3, 5)
