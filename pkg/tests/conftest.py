import pytest

from orbitfactor import gf


@pytest.fixture(scope="session")
def F2():
    return gf.prime_field(2)


@pytest.fixture(scope="session")
def F3():
    return gf.prime_field(3)


@pytest.fixture(scope="session")
def F5():
    return gf.prime_field(5)


@pytest.fixture(scope="session")
def F7():
    return gf.prime_field(7)


@pytest.fixture(scope="session")
def F19():
    return gf.prime_field(19)


@pytest.fixture(scope="session")
def F4():
    return gf.field_create(2, 2)


@pytest.fixture(scope="session")
def F9():
    return gf.field_create(3, 2)
