import pytest

from sal import designs


@pytest.fixture(scope="session")
def fano():
    return designs.construct_fano()


@pytest.fixture(scope="session")
def ag2():
    return designs.construct_ag(2)


@pytest.fixture(scope="session")
def ag3():
    return designs.construct_ag(3)


@pytest.fixture(scope="session")
def skolem13():
    return designs.construct_skolem(13)


@pytest.fixture(scope="session")
def sts3():
    return designs.construct_ag(1)
