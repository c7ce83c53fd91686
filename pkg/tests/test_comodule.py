import pytest
from hypothesis import given, settings, strategies as st

from cqh import fixtures as fx
from cqh.comodule import (BNotCoinvariant, GammaNotTotalIntegral, RelHopfModule,
                          adjunction_counit, adjunction_unit, associator_failure, eta_iso,
                          free_B_module, hom_dimension_check, induce_module,
                          induced_action_on_AH, is_total_integral, module_coinvariants,
                          regular_B_module, regular_module, rho_tilde_exactness,
                          total_integral_search, trace_map, triangle_identities,
                          trivial_B_module, unit_inverse_via_trace, verify_comodule_algebra,
                          verify_hopf_module)
from cqh.coquasi import CoquasiHopf
from cqh.exactlin import BasedSpace, LinMap, formula_map, is_bijective, rank, tensor


def trivial_algebra(h):
    return fx.graded_comodule_algebra(h, [0], {(0, 0): {0: 1}}, {0: 1}, labels=["1"])


def flat_omega(h):
    """h with its reassociator replaced by eps (x) eps (x) eps."""
    H = h.space
    triv = formula_map([H] * 3, [], lambda x, y, z: {(): 1}, h.field)
    m = h.structure_maps()
    return CoquasiHopf(H, m["comult"], m["counit"], m["mult"], m["unit"], triv, m["antipode"],
                       m["alpha"], m["beta"], omega_inv=triv)


# --- comodule algebras

def test_octonions_quasi_associative(oct_pair):
    _, A = oct_pair
    assert verify_comodule_algebra(A).ok


def test_octonions_over_flat_host_fail(oct_pair):
    h, A = oct_pair
    from cqh.comodule import ComoduleAlgebra
    flat = flat_omega(h)
    flat.group = h.group
    bad = ComoduleAlgebra(flat, A.space, A.coaction, A.mult, A.one)
    rep = verify_comodule_algebra(bad)
    assert not rep.ok
    (fail,) = [c for c in rep.failures() if c.name == "asoc comod alg"]
    assert fail.witness


def test_coinvariants(all_algebras):
    dims = {"self": 1, "mat": 2, "oct": 1, "notsg": 2, "dual": 1}
    for name, d in dims.items():
        B = all_algebras[name].coinvariants()
        assert B.dim == d, name
        assert B.report.ok
    B = all_algebras["mat"].coinvariants()
    # diagonal matrices: E11 and E22
    support = set()
    for v in B.subspace.basis_vectors:
        support |= set(v)
    assert support == {0, 3}


# --- relative Hopf modules

def test_module_coinvariants_examples(self_pair, notsg_pair):
    _, A = self_pair
    N, sub, rep = module_coinvariants(regular_module(A))
    assert rep.ok and sub.dim == A.coinvariants().dim
    N, sub, rep = module_coinvariants(induced_action_on_AH(A))
    assert rep.ok and sub.dim == A.dim
    # A placed in degree g over an algebra concentrated in degree e
    _, P = notsg_pair
    h = P.host
    co = formula_map([P.space], [P.space, h.space], lambda i: {(i, 1): 1}, P.field)
    M = RelHopfModule(P, P.space, LinMap(P.space, tensor(P.space, h.space), co.cols, P.field),
                      P.mult)
    assert verify_hopf_module(M).ok
    assert module_coinvariants(M)[1].dim == 0


def test_induce_module_examples(mat_pair, oct_pair):
    _, A = mat_pair
    M = induce_module(regular_B_module(A), A)
    assert M.report.ok and M.dim == A.dim
    M2 = induce_module(free_B_module(A, 2), A)
    assert M2.report.ok and M2.dim == 8
    _, O = oct_pair
    Mk = induce_module(trivial_B_module(O), O)
    assert Mk.report.ok and Mk.dim == 8


def test_trivial_B_module_needs_B_equal_k(mat_pair):
    with pytest.raises(ValueError):
        trivial_B_module(mat_pair[1])


def test_induce_rejects_module_over_other_coinvariants(mat_pair, notsg_pair, oct_pair):
    # same dimension of B, different subalgebra
    with pytest.raises(BNotCoinvariant):
        induce_module(regular_B_module(notsg_pair[1]), mat_pair[1])
    with pytest.raises(BNotCoinvariant):
        induce_module(regular_B_module(mat_pair[1]), oct_pair[1])


@pytest.mark.parametrize("name", ["self", "mat", "oct", "h4t"])
def test_counit_bijective_on_galois(name, galois_algebras):
    A = galois_algebras[name]
    for M in (regular_module(A), induced_action_on_AH(A)):
        eps, _, rep = adjunction_counit(M)
        assert rep.ok and is_bijective(eps)


def test_counit_not_surjective_on_notsg(notsg_pair):
    _, A = notsg_pair
    eps, _, rep = adjunction_counit(induced_action_on_AH(A))
    assert rep.ok
    assert rank(eps) < eps.codomain.dim


def test_unit_examples(mat_pair, oct_pair, notsg_pair):
    u, _, _, rep = adjunction_unit(regular_B_module(mat_pair[1]), mat_pair[1])
    assert rep.ok and is_bijective(u)
    u, _, _, rep = adjunction_unit(trivial_B_module(oct_pair[1]), oct_pair[1])
    assert rep.ok and is_bijective(u)
    u, _, _, rep = adjunction_unit(regular_B_module(notsg_pair[1]), notsg_pair[1])
    assert rep.ok


@pytest.mark.parametrize("name", ["self", "mat", "oct", "notsg", "dual"])
def test_triangle_identities_and_hom(name, all_algebras):
    A = all_algebras[name]
    M = regular_module(A)
    assert triangle_identities(regular_B_module(A), M).ok
    assert hom_dimension_check(M).ok
    assert hom_dimension_check(induced_action_on_AH(A)).ok


# --- eta and A (x) H

def test_eta_hopf_collapse(self_pair):
    h, A = self_pair
    e, ei, rep = eta_iso(A)
    assert rep.ok
    X = e.codomain
    for x in range(2):
        for a in range(2):
            assert e.cols[x * 2 + a] == {X.index((a, x ^ a)): 1}


@pytest.mark.parametrize("name", ["oct", "h4t", "mat", "dual"])
def test_eta_is_inverse_pair(name, all_algebras):
    assert eta_iso(all_algebras[name])[2].ok


def test_eta_trivial_algebra():
    h = fx.cq_z2()
    A = trivial_algebra(h)
    e, ei, rep = eta_iso(A)
    assert rep.ok
    assert e == LinMap(e.domain, e.codomain, [{i: 1} for i in range(h.dim)], h.field)


def test_action_on_AH(self_pair, oct_pair):
    _, A = self_pair
    M = induced_action_on_AH(A)
    assert M.report.ok
    for a in range(2):
        for x in range(2):
            for b in range(2):
                assert M.act(a * 2 + x, b) == {(a ^ b) * 2 + (x ^ b): 1}
    O = induced_action_on_AH(oct_pair[1])
    assert O.report.ok
    one = oct_pair[1].one
    assert all(O.act(m, one) == {m: 1} for m in range(O.dim))


# --- total integrals, trace, exactness

def test_total_integral_examples(self_pair, oct_pair, mat_pair, dual_pair):
    for A in (self_pair[1], oct_pair[1], mat_pair[1], dual_pair[1]):
        g = total_integral_search(A)
        assert g is not None and is_total_integral(A, g)
    # colinear maps kZ_2 -> kZ_2 are diagonal; unitality pins gamma(e) only
    g = total_integral_search(self_pair[1])
    assert g.cols[0] == {0: 1} and set(g.cols[1]) <= {1}


def test_trace_map_octonions(oct_pair):
    _, A = oct_pair
    g = total_integral_search(A)
    tB, raw, rep = trace_map(A, g)
    assert rep.ok
    assert raw.cols[0] == A.one
    assert all(not raw.cols[x] for x in range(1, 8))
    assert unit_inverse_via_trace(trivial_B_module(A), A, g).ok


def test_trace_map_rejects_non_integral(oct_pair):
    _, A = oct_pair
    zero = LinMap.zero(A.host.space, A.space, A.field)
    with pytest.raises(GammaNotTotalIntegral):
        trace_map(A, zero)


@pytest.mark.parametrize("name", ["self", "oct", "mat", "notsg"])
def test_rho_tilde_exact(name, all_algebras):
    assert rho_tilde_exactness(regular_module(all_algebras[name])).ok


def test_rho_tilde_zero_module(self_pair):
    _, A = self_pair
    Z = BasedSpace([])
    M = RelHopfModule(A, Z, LinMap.zero(Z, tensor(Z, A.host.space), A.field),
                      LinMap.zero(tensor(Z, A.space), Z, A.field))
    assert rho_tilde_exactness(M).ok


# --- property: twisted group algebras over Z_2 x Z_2 with random signs

@settings(max_examples=15, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -3]), min_size=3, max_size=3))
def test_twisted_group_algebras_are_galois(vals):
    """u_x u_y = c(x, y) u_{xy} with c a normalized 2-cocycle of a random twist."""
    from cqh.galois import build_can, strongly_graded_check
    from cqh.twist import GaugeTwist, twist_bialgebra, twist_comodule_algebra
    G = fx.GroupPresentation.z2_power(2)
    h = fx.group_coquasi_hopf(G, fx.Cocycle3.trivial(G))
    tv = {(x, y): 1 for x in range(4) for y in range(4)}
    tv.update({(1, 2): vals[0], (2, 1): vals[1], (3, 3): vals[2]})
    t = GaugeTwist.from_values(h, tv)
    Ht = twist_bialgebra(h, t)
    Ht.group = G
    A = twist_comodule_algebra(fx.comodule_algebra_over_itself(h), t, Ht)
    assert verify_comodule_algebra(A).ok
    g = build_can(A)
    assert g.galois and g.report.ok
    assert strongly_graded_check(A, g).ok
