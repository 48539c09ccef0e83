import pytest

from hypergroups import Hypergroup, chain_hypergroup, cyclic_group, symmetric_group, trivial


def make_k2(name="K2"):
    return Hypergroup([[0b01, 0b10], [0b10, 0b11]], [0, 1], ["1", "g"], name)


def make_v3():
    return chain_hypergroup(2)


@pytest.fixture
def T():
    return trivial()


@pytest.fixture
def Z2():
    return cyclic_group(2)


@pytest.fixture
def K2():
    return make_k2()


@pytest.fixture
def V3():
    return make_v3()


@pytest.fixture
def S3():
    return symmetric_group(3)
