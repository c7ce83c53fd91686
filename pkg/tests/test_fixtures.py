import itertools

import pytest

from cqh import fixtures as fx
from cqh.comodule import associator_failure, verify_comodule_algebra
from cqh.coquasi import functional_values, verify_all
from cqh.exactlin import GF


def test_cyclic_group_table():
    G = fx.GroupPresentation.cyclic(3)
    assert G.inverse == [0, 2, 1]
    with pytest.raises(ValueError):
        fx.GroupPresentation([[0, 1], [0, 1]])


def test_trivial_cocycle_gives_hopf_z2():
    h = fx.hopf_z2()
    assert set(functional_values(h.omega)) == {1}
    assert functional_values(h.beta) == [1, 1]


def test_sign_cocycle_gives_cq_z2():
    h = fx.cq_z2()
    w = functional_values(h.omega)
    assert w[7] == -1 and w.count(-1) == 1
    assert functional_values(h.beta) == [1, -1]


def test_invalid_cocycles_rejected():
    G = fx.GroupPresentation.cyclic(2)
    with pytest.raises(fx.CocycleInvalid):
        fx.Cocycle3(G, {(1, 1, 1): -1, (1, 1, 0): -1})
    with pytest.raises(fx.CocycleInvalid):
        fx.Cocycle3(G, {(1, 1, 1): 0})
    G3 = fx.GroupPresentation.cyclic(3)
    with pytest.raises(fx.CocycleInvalid):
        fx.Cocycle3(G3, {(1, 1, 1): 2})


def test_cocycles_on_z3_roots_of_unity_mod_7():
    # omega(x, y, z) = c^(x (y + z - [y + z]) / 3) is a 3-cocycle on Z_3 for c^3 = 1
    F = GF(7)
    G = fx.GroupPresentation.cyclic(3)
    c = F(2)
    w = fx.Cocycle3(G, lambda x, y, z: c ** (x * ((y + z) - (y + z) % 3) // 3), F)
    assert verify_all(fx.group_coquasi_hopf(G, w)).ok


def test_grading_violation():
    h = fx.hopf_z2()
    with pytest.raises(fx.GradingViolation):
        fx.graded_comodule_algebra(h, [0, 1], {(0, 0): {1: 1}}, {0: 1})


def test_quasi_associativity_failure():
    # octonion table over the untwisted (Z_2)^3 host is not associative
    h = fx._kz2_3()
    F = fx.cayley_sign(3)
    prods = {(x, y): {x ^ y: F(x, y)} for x in range(8) for y in range(8)}
    with pytest.raises(fx.QuasiAssociativityFailed) as e:
        fx.graded_comodule_algebra(h, list(range(8)), prods, {0: 1})
    assert e.value.witness


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cayley_sign_matches_doubling_oracle(n):
    signs = fx.cayley_oracle_match(n)
    assert signs is not None and signs[0] == 1


def test_doubling_table_small_cases():
    T = fx.cayley_dickson_table(1)
    assert T[(1, 1)] == -1
    Q = fx.cayley_dickson_table(2)
    # i j = k, j i = -k
    assert Q[(1, 2)] == -Q[(2, 1)]
    assert all(Q[(x, x)] == -1 for x in range(1, 4))


def test_cayley_n1_is_complex_numbers():
    Ht, At, *_ = fx.cayley_algebra(1)
    assert At.mul(1, 1) == {0: -1}
    assert set(functional_values(Ht.omega)) == {1}


def test_cayley_n2_is_associative_quaternions():
    Ht, At, *_ = fx.cayley_algebra(2)
    assert set(functional_values(Ht.omega)) == {1}
    assert associator_failure(At) is None
    ij, ji = At.mul(1, 2), At.mul(2, 1)
    assert set(ij) == {3} and ij[3] == -ji[3]


def test_cayley_n3_is_the_octonion_fixture():
    Ht, At, *_ = fx.cayley_algebra(3)
    h, A = fx.octonions()
    assert Ht.omega == h.omega
    assert At.mult == A.mult
    assert -1 in functional_values(Ht.omega)
    assert verify_all(Ht).ok
    assert verify_comodule_algebra(At).ok


def test_octonions_alternative_not_associative():
    _, A = fx.octonions()
    wit = associator_failure(A)
    assert wit is not None
    for x, y in itertools.product(range(8), repeat=2):
        # alternativity x(xy) = (xx)y on basis vectors
        assert A.mul(x, A.mul(x, y)) == A.mul(A.mul(x, x), y)


@pytest.mark.parametrize("name", ["self", "mat", "notsg", "dual"])
def test_small_fixtures_verify(name, all_algebras):
    assert verify_comodule_algebra(all_algebras[name]).ok


def test_fixture_registry_builds():
    for name, (build, host) in fx.FIXTURES.items():
        assert build() is not None
        assert host is None or host in fx.FIXTURES
