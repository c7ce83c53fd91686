import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cqh import fixtures as fx
from cqh.coquasi import HostMismatch, functional_values, verify_all
from cqh.comodule import verify_comodule_algebra
from cqh.twist import (GaugeTwist, UL_VARIANTS, drinfeld_twist, monoidal_iso_check,
                       twist_bialgebra, twist_comodule_algebra, twisted_associator_of_f,
                       verify_twist)


def group_f_oracle(h):
    """f on group-likes with the coproducts collapsed by hand."""
    G = h.group
    m, inv = G.mul, G.inverse

    def p(x, y):
        return (h.al(x) * h.al(y) * h.om(inv[y], inv[x], x)
                * h.omi(m(inv[y], inv[x]), x, y))

    def f(x, y):
        xy = m(x, y)
        return h.be(xy) * p(x, y) * h.omi(m(inv[y], inv[x]), xy, inv[xy])

    return f


def test_trivial_twist_is_identity():
    for h in (fx.cq_z2(), fx.sweedler()):
        t = GaugeTwist.trivial(h)
        assert verify_twist(t).ok
        assert twist_bialgebra(h, t).same_structure(h)
    _, A = fx.self_z2()
    At = twist_comodule_algebra(A, GaugeTwist.trivial(A.host))
    assert At.mult == A.mult and At.coaction == A.coaction


def test_sign_twist_on_z2():
    h = fx.hopf_z2()
    t = GaugeTwist.from_values(h, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1})
    Ht = twist_bialgebra(h, t)
    assert set(functional_values(Ht.omega)) == {1}
    assert Ht.mult == h.mult
    assert verify_all(Ht).ok
    _, A = fx.self_z2()
    At = twist_comodule_algebra(A, t, Ht)
    assert At.mul(1, 1) == {0: -1}


def test_cayley_twist_gives_nontrivial_reassociator():
    h = fx._kz2_3()
    Ht = twist_bialgebra(h, fx.cayley_twist(3, h))
    vals = functional_values(Ht.omega)
    assert len(vals) == 512 and vals.count(-1) > 0
    assert verify_all(Ht).ok


def test_host_mismatch():
    t = GaugeTwist.trivial(fx.sweedler())
    with pytest.raises(HostMismatch):
        twist_bialgebra(fx.hopf_z2(), t)
    _, A = fx.self_z2()
    with pytest.raises(HostMismatch):
        twist_comodule_algebra(A, t)


@pytest.mark.parametrize("name", ["hopf_z2", "cq_z2", "sweedler", "oct_h"])
def test_twist_round_trip(name):
    h = fx.FIXTURES[name][0]() if name in fx.FIXTURES else fx.sweedler()
    t = fx.random_twist(h, seed=3) if h.dim <= 4 else fx.cayley_twist(3, h)
    Ht = twist_bialgebra(h, t)
    back = twist_bialgebra(Ht, t.inverse_on(Ht))
    assert back.same_structure(h)


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_twists_of_sweedler(seed):
    h = fx.sweedler()
    t = fx.random_twist(h, seed)
    assert verify_twist(t).ok
    Ht = twist_bialgebra(h, t)
    assert verify_all(Ht).ok
    A = fx.comodule_algebra_over_itself(h)
    assert verify_comodule_algebra(twist_comodule_algebra(A, t, Ht)).ok
    assert twist_bialgebra(Ht, t.inverse_on(Ht)).same_structure(h)


@pytest.mark.parametrize("which", ["self", "mat", "h4t"])
def test_monoidal_isomorphism(which, all_algebras):
    A = all_algebras[which]
    h = A.host
    t = fx.random_twist(h, seed=5)
    assert monoidal_iso_check(A, A, A, t).ok


def test_monoidal_isomorphism_octonions(oct_pair):
    h, A = oct_pair
    assert monoidal_iso_check(A, A, A, fx.cayley_twist(3, h)).ok


def test_drinfeld_hopf_z2_collapses():
    h = fx.hopf_z2()
    d = drinfeld_twist(h)
    e2 = GaugeTwist.trivial(h).tau
    assert d.p == e2 and d.q == e2 and d.f.tau == e2


def test_drinfeld_cq_z2_value():
    h = fx.cq_z2()
    d = drinfeld_twist(h)
    oracle = group_f_oracle(h)
    assert d.f.t(1, 1) == oracle(1, 1) == -1
    assert d.report["twist f"].passed


def test_drinfeld_octonion_host_against_oracle():
    h = fx.oct_host()
    d = drinfeld_twist(h)
    assert d.report.ok
    oracle = group_f_oracle(h)
    assert all(d.f.t(x, y) == oracle(x, y) for x, y in itertools.product(range(8), repeat=2))


@pytest.mark.parametrize("name", ["sweedler", "h4t"])
def test_drinfeld_identities_non_group(name, h4t_pair):
    h = fx.sweedler() if name == "sweedler" else h4t_pair[0]
    d = drinfeld_twist(h)
    assert d.report.ok, d.report.failures()
    assert d.f_tilde is not None


def test_ul_reading_resolved_on_twisted_sweedler(h4t_pair):
    d = drinfeld_twist(h4t_pair[0])
    assert set(d.ul_variants) == set(UL_VARIANTS)
    assert [k for k, v in d.ul_variants.items() if v] == ["inv/inv"]


@pytest.mark.parametrize("name", ["hopf_z2", "cq_z2", "oct_h"])
def test_twisted_associator_of_f(name):
    h = fx.FIXTURES[name][0]()
    rep = twisted_associator_of_f(h)
    assert rep.ok
    if name == "cq_z2":
        Hf = twist_bialgebra(h, drinfeld_twist(h).f)
        assert Hf.om(1, 1, 1) == h.om(1, 1, 1) == -1


def test_twisted_associator_of_f_h4t(h4t_pair):
    assert twisted_associator_of_f(h4t_pair[0]).ok
