import pytest

from cqh import fixtures as fx


@pytest.fixture(scope="session")
def oct_pair():
    return fx.octonions()


@pytest.fixture(scope="session")
def mat_pair():
    return fx.mat_z2()


@pytest.fixture(scope="session")
def self_pair():
    return fx.self_z2()


@pytest.fixture(scope="session")
def notsg_pair():
    return fx.notsg_z2()


@pytest.fixture(scope="session")
def dual_pair():
    return fx.dual_numbers_cq()


@pytest.fixture(scope="session")
def h4t_pair():
    return fx.twisted_sweedler()


@pytest.fixture(scope="session")
def galois_algebras(self_pair, mat_pair, oct_pair, h4t_pair):
    return {"self": self_pair[1], "mat": mat_pair[1], "oct": oct_pair[1], "h4t": h4t_pair[1]}


@pytest.fixture(scope="session")
def all_algebras(galois_algebras, notsg_pair, dual_pair):
    d = dict(galois_algebras)
    d["notsg"] = notsg_pair[1]
    d["dual"] = dual_pair[1]
    return d
