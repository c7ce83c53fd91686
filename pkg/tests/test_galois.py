import itertools
from fractions import Fraction

import pytest
import sympy

from cqh import fixtures as fx
from cqh.comodule import (induce_module, regular_B_module, regular_module, trivial_B_module)
from cqh.coquasi import functional
from cqh.exactlin import LinMap, is_bijective
from cqh.galois import (CanNotSurjective, CleftData, NotGalois, build_can, build_can_prime,
                        can_M, change_antipode_compat, cleft_change_antipode,
                        cleft_from_galois_nb, cleft_search, colinear_splitting_search,
                        delta_for_gamma, epsilon_is_twisted_can, HostNotGroupAlgebra, flatness_status,
                        inversecleaving_implied, nb_gamma, normal_basis_from_cleft,
                        normal_basis_search, strongly_graded_check, theorem_big_battery,
                        translation_map, twist_invariance, verify_cleft)
from cqh.twist import GaugeTwist


def sympy_rank(f):
    return sympy.Matrix(f.entries).rank()


def octonion_can_oracle():
    """64 x 64 matrix of a (x) b -> ab (x) |b| beta(|b|) omega^-1(|a|, |b|, |b|) built
    straight from the sign table."""
    F = fx.cayley_sign(3)

    def w(x, y, z):
        return Fraction(F(y, z) * F(x, y ^ z), F(x ^ y, z) * F(x, y))

    M = sympy.zeros(64, 64)
    for x, y in itertools.product(range(8), repeat=2):
        beta = 1 / w(y, y, y)
        M[(x ^ y) * 8 + y, x * 8 + y] = F(x, y) * beta / w(x, y, y)
    return M


# --- the Galois map

def test_octonion_can_against_oracle(oct_pair):
    g = build_can(oct_pair[1])
    M = octonion_can_oracle()
    assert sympy.Matrix(g.raw.entries) == M
    assert M.rank() == g.rank == 64


@pytest.mark.parametrize("name,rank_,target", [("self", 4, 4), ("mat", 8, 8), ("oct", 64, 64),
                                               ("h4t", 16, 16), ("notsg", 2, 4), ("dual", 3, 4)])
def test_can_rank(name, rank_, target, all_algebras):
    g = build_can(all_algebras[name])
    assert g.report.ok
    assert (g.rank, g.target_dim) == (rank_, target)
    assert sympy_rank(g.can) == sympy_rank(g.raw) == rank_
    assert g.galois == (rank_ == target)


def test_self_can_hopf_collapse(self_pair):
    g = build_can(self_pair[1])
    # can(a (x) b) = ab (x) b on kZ_2
    for a, b in itertools.product(range(2), repeat=2):
        assert g.raw.cols[a * 2 + b] == {(a ^ b) * 2 + b: 1}


def test_notsg_verdict(notsg_pair):
    g = build_can(notsg_pair[1])
    assert g.verdict == ("NotGalois", 2, 2)
    assert g.summary() == "NOT GALOIS corank=2"
    with pytest.raises(NotGalois):
        g.require()


def test_summary_line(oct_pair):
    assert build_can(oct_pair[1]).summary() == "GALOIS rank=64/64"


# --- change of antipode

def test_change_antipode_compat_examples(dual_pair, oct_pair, self_pair):
    _, A = self_pair
    rep = change_antipode_compat(A, A.host.counit)
    assert rep.ok and rep.stated_psi_U
    _, D = dual_pair
    rep = change_antipode_compat(D, functional(D.host.space, [1, -1], D.field))
    assert rep.ok
    _, O = oct_pair
    rep = change_antipode_compat(O, functional(O.host.space, [1, 2, -1, 3, -2, 5, 1, -3], O.field))
    assert rep.ok
    # the map with U in place of U^-1 does not factor unless U*U = eps
    assert rep.stated_psi_U is False


def test_change_antipode_compat_sweedler(h4t_pair):
    A = h4t_pair[1]
    U = functional(A.host.space, [1, -1, 2, 3], A.field)
    assert change_antipode_compat(A, U).ok


# --- can prime and Xi

@pytest.mark.parametrize("name", ["self", "mat", "oct", "notsg", "dual"])
def test_can_prime_printed_xi(name, all_algebras):
    canp, Xi, rep = build_can_prime(all_algebras[name])
    assert rep.ok, rep.failures()


def test_can_prime_trivial_host():
    G = fx.GroupPresentation.cyclic(1)
    h = fx.group_coquasi_hopf(G, fx.Cocycle3.trivial(G))
    A = fx.comodule_algebra_over_itself(h)
    canp, Xi, rep = build_can_prime(A)
    assert rep.ok and Xi == LinMap.identity(Xi.domain, A.field)


def test_can_prime_self_formula(self_pair):
    canp, _, _ = build_can_prime(self_pair[1])
    # can'(a (x) b) = a_0 b (x) a_1 = ab (x) a
    for a, b in itertools.product(range(2), repeat=2):
        assert canp.cols[a * 2 + b] == {(a ^ b) * 2 + a: 1}


def test_can_prime_structure_on_twisted_sweedler(h4t_pair):
    canp, Xi, rep = build_can_prime(h4t_pair[1])
    for name in ("can prime well defined", "can prime colinear",
                 "can prime bijective iff can bijective", "Xi factors through the coaction"):
        assert rep[name].passed, name


@pytest.mark.xfail(strict=True, reason="printed Xi does not intertwine can and can' on twisted H4")
def test_can_prime_printed_xi_twisted_sweedler(h4t_pair):
    _, _, rep = build_can_prime(h4t_pair[1])
    assert rep["Xi can = can'"].passed


# --- twist invariance

@pytest.mark.parametrize("n", [1, 2, 3])
def test_twist_invariance_cayley(n):
    h = fx.group_coquasi_hopf(fx.GroupPresentation.z2_power(n),
                              fx.Cocycle3.trivial(fx.GroupPresentation.z2_power(n)))
    A = fx.comodule_algebra_over_itself(h)
    assert twist_invariance(A, fx.cayley_twist(n, h)).ok


def test_twist_invariance_trivial_and_random(h4t_pair, self_pair):
    _, A = self_pair
    assert twist_invariance(A, GaugeTwist.trivial(A.host)).ok
    B = h4t_pair[1]
    assert twist_invariance(B, fx.random_twist(B.host, seed=9)).ok


# --- counit as twisted can

@pytest.mark.parametrize("name", ["self", "mat", "oct", "h4t", "notsg", "dual"])
def test_epsilon_is_twisted_can(name, all_algebras):
    assert epsilon_is_twisted_can(all_algebras[name]).ok


# --- translation map

@pytest.mark.parametrize("name", ["self", "mat", "oct", "h4t"])
def test_translation_map(name, galois_algebras):
    tm = translation_map(build_can(galois_algebras[name]))
    assert tm.report.ok, tm.report.failures()


def test_translation_self(self_pair):
    _, A = self_pair
    tm = translation_map(build_can(A))
    assert tm.terms(1) == [((1, 1), 1)]
    assert A.mul(1, 1) == {0: 1}


def test_translation_alpha_at_each_degree(oct_pair):
    h, A = oct_pair
    tm = translation_map(build_can(A))
    for x in range(8):
        s = {}
        for (l, r), c in tm.terms(x):
            for k, v in A.mul(l, r).items():
                s[k] = s.get(k, 0) + c * v
        assert {k: v for k, v in s.items() if v} == {0: h.al(x)}


def test_translation_needs_galois(notsg_pair):
    with pytest.raises(NotGalois):
        translation_map(build_can(notsg_pair[1]))


# --- can_M

def test_can_M_examples(oct_pair, mat_pair):
    _, A = oct_pair
    g = build_can(A)
    cm, rep = can_M(regular_module(A), g)
    assert rep.ok and cm.cols == g.can.cols
    cm, rep = can_M(induce_module(trivial_B_module(A), A), g)
    assert rep.ok and is_bijective(cm)
    _, M = mat_pair
    cm, rep = can_M(induce_module(regular_B_module(M), M))
    assert rep.ok and is_bijective(cm) and cm.domain.dim == 8


def test_can_M_on_notsg(notsg_pair):
    _, A = notsg_pair
    cm, rep = can_M(regular_module(A))
    assert rep.ok and not is_bijective(cm)


# --- cleft extensions

def test_verify_cleft_self(self_pair):
    h, A = self_pair
    ident = LinMap(h.space, A.space, [{0: 1}, {1: 1}], A.field)
    good = CleftData(A, ident, LinMap(h.space, A.space, h.antipode.cols, A.field))
    assert verify_cleft(good).ok
    bad = CleftData(A, ident, LinMap.zero(h.space, A.space, A.field))
    assert not verify_cleft(bad)["convolutiedeltagama"].passed
    assert delta_for_gamma(A, ident) == good.delta


def test_cleft_change_antipode_self(self_pair):
    h, A = self_pair
    ident = LinMap(h.space, A.space, [{0: 1}, {1: 1}], A.field)
    c = CleftData(A, ident, ident)
    c2 = cleft_change_antipode(c, functional(h.space, [1, -1], A.field))
    assert c2.delta.cols[1] == {1: -1}
    assert verify_cleft(c2).ok
    assert cleft_change_antipode(c, h.counit).delta == c.delta


def test_cleft_change_antipode_oct(oct_pair):
    _, A = oct_pair
    c, _ = cleft_search(A)
    U = functional(A.host.space, [1, -2, 3, 1, 1, -1, 2, 5], A.field)
    assert verify_cleft(cleft_change_antipode(c, U)).ok


@pytest.mark.parametrize("name", ["self", "mat", "oct", "h4t"])
def test_cleft_pipeline(name, galois_algebras):
    A = galois_algebras[name]
    g = build_can(A)
    nb, info = normal_basis_search(A)
    assert nb is not None and nb.report.ok
    c = cleft_from_galois_nb(g, nb)
    assert c.report.ok
    assert inversecleaving_implied(c)
    nb2 = normal_basis_from_cleft(c, modules=[regular_module(A)])
    assert nb2.report.ok


def test_normal_basis_self_formulas(self_pair):
    h, A = self_pair
    ident = LinMap(h.space, A.space, [{0: 1}, {1: 1}], A.field)
    nb = normal_basis_from_cleft(CleftData(A, ident, ident))
    # nu(1 (x) h) = h, nu^-1(a) = 1 (x) a
    assert nb.nu.cols == [{0: 1}, {1: 1}]
    assert nb.nu_inverse.cols == [{0: 1}, {1: 1}]


def test_normal_basis_mat_offdiagonal(mat_pair):
    h, A = mat_pair
    gam = LinMap(h.space, A.space, [{0: 1, 3: 1}, {1: 1, 2: 1}], A.field)
    dl = delta_for_gamma(A, gam)
    assert dl is not None
    nb = normal_basis_from_cleft(CleftData(A, gam, dl))
    assert nb.report.ok and nb.nu.shape == (4, 4)


def test_normal_basis_search_rejects_notsg(notsg_pair):
    nb, info = normal_basis_search(notsg_pair[1])
    assert nb is None


FIXTURE_ALGEBRAS = ["self", "mat", "oct", "h4t", "notsg", "dual"]


@pytest.mark.parametrize("name", FIXTURE_ALGEBRAS)
def test_cleft_iff_galois_and_normal_basis(name, all_algebras):
    A = all_algebras[name]
    c, info = cleft_search(A)
    nb, _ = normal_basis_search(A)
    assert info["cleft"] == (build_can(A).galois and nb is not None)
    assert (c is not None and c.report.ok) == info["cleft"]


def test_dual_numbers_normal_basis_without_cleaving(dual_pair):
    _, A = dual_pair
    nb, _ = normal_basis_search(A)
    assert nb is not None
    assert delta_for_gamma(A, nb_gamma(nb)) is None
    assert cleft_search(A)[1]["reason"] == "normal basis gamma admits no delta"


# --- splitting, strong grading, battery

@pytest.mark.parametrize("name", ["self", "mat", "oct", "h4t"])
def test_colinear_splitting(name, galois_algebras):
    A = galois_algebras[name]
    sp = colinear_splitting_search(build_can(A), modules=[regular_module(A)])
    assert sp.report.ok
    for ident in ("r0", "lr", "l0", "alr"):
        assert sp.report[ident].passed


def test_colinear_splitting_needs_surjective_can(notsg_pair):
    with pytest.raises(CanNotSurjective):
        colinear_splitting_search(build_can(notsg_pair[1]))


@pytest.mark.parametrize("name,strong", [("mat", True), ("oct", True), ("notsg", False),
                                         ("self", True), ("dual", False)])
def test_strongly_graded(name, strong, all_algebras):
    rep = strongly_graded_check(all_algebras[name])
    assert rep.ok and rep.strongly_graded is strong
    assert all((d == e) for d, e in rep.components.values()) is strong


def test_strongly_graded_needs_group_host(h4t_pair):
    with pytest.raises(HostNotGroupAlgebra):
        strongly_graded_check(h4t_pair[1])


@pytest.mark.parametrize("name,value,flat", [("oct", True, "B = k"), ("mat", True, "free"),
                                             ("notsg", False, "free"), ("self", True, "B = k")])
def test_battery(name, value, flat, all_algebras):
    gr = theorem_big_battery(all_algebras[name])
    assert gr.consistent and gr.flatness == flat
    assert set(gr.conditions.values()) == {value}


def test_flatness_status(all_algebras):
    assert flatness_status(all_algebras["dual"]) == "B = k"
    assert flatness_status(all_algebras["h4t"]) == "B = k"
