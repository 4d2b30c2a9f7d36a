import pytest

from mrkit.corpus import (
    b1,
    b2,
    b3,
    c1,
    c2,
    c3,
    cubic_corpus,
    fa1,
    fa2,
    i3,
    mr_corpus,
    n5,
)


@pytest.fixture(scope="session")
def B1():
    return b1()


@pytest.fixture(scope="session")
def B2():
    return b2()


@pytest.fixture(scope="session")
def B3():
    return b3()


@pytest.fixture(scope="session")
def I3():
    return i3()


@pytest.fixture(scope="session")
def C1():
    return c1()


@pytest.fixture(scope="session")
def C2():
    return c2()


@pytest.fixture(scope="session")
def C3():
    return c3()


@pytest.fixture(scope="session")
def N5():
    return n5()


@pytest.fixture(scope="session")
def FA1():
    return fa1()


@pytest.fixture(scope="session")
def FA2():
    return fa2()


@pytest.fixture(scope="session")
def corpus():
    return cubic_corpus()


@pytest.fixture(scope="session")
def mr_instances():
    return mr_corpus()


def lab(algebra, label):
    """Index of the element carrying the given label."""
    return algebra.labels.index(label)
