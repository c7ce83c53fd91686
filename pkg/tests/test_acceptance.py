"""One PASS/FAIL line per acceptance criterion, printed past output capture."""
import contextlib
import io
import itertools
import json
import pathlib
import time

import pytest
import sympy

from cqh import fixtures as fx
from cqh.bialgebroid import (build_L, coinvariants_L_action, equivalence_round_trip,
                             induced_left_action)
from cqh.cli import run_cli
from cqh.comodule import (adjunction_counit, associator_failure, induce_module, regular_B_module,
                          regular_module, regular_two_sided, rho_tilde_exactness,
                          total_integral_search, trivial_B_module)
from cqh.coquasi import (opposite_variants, verify_antipode, verify_coalgebra,
                         verify_coquasi_bialgebra)
from cqh.exactlin import is_bijective
from cqh.fileformat import emit_cqh, parse_cqh
from cqh.galois import (build_can, can_M, cleft_from_galois_nb, cleft_search,
                        colinear_splitting_search, epsilon_is_twisted_can,
                        inversecleaving_implied, normal_basis_from_cleft, normal_basis_search,
                        strongly_graded_check, translation_map, twist_invariance, verify_cleft)
from cqh.twist import GaugeTwist, drinfeld_twist

FIXDIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(n, note=""):
        ok = False
        t0 = time.perf_counter()
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            with capsys.disabled():
                tail = f" ({note})" if note else ""
                print(f"\nCRITERION {n:2d}: {'PASS' if ok else 'FAIL'} [{dt:.2f}s]{tail}")
    return run


def test_c01_axiom_suites(criterion):
    with criterion(1):
        t0 = time.perf_counter()
        hosts = [fx.hopf_z2(), fx.cq_z2(), fx.oct_host()]
        hosts += list(opposite_variants(fx.cq_z2()).values())
        assert len(hosts) == 6
        for h in hosts:
            for suite in (verify_coalgebra, verify_coquasi_bialgebra, verify_antipode):
                rep = suite(h)
                assert rep.ok and len(rep) > 0, rep.failures()
        assert time.perf_counter() - t0 < 5


def test_c02_galois_verdicts(criterion, all_algebras):
    # SELF: A (x)_k A and A (x) H are both 4-dimensional, so the full rank is 4/4
    with criterion(2, "SELF rank is 4/4"):
        t0 = time.perf_counter()
        expect = {"self": (4, 4), "mat": (8, 8), "oct": (64, 64), "notsg": (2, 4)}
        for name, (r, d) in expect.items():
            g = build_can(all_algebras[name])
            assert (g.rank, g.target_dim) == (r, d)
            # independent rank of the raw rational matrix by rref
            _, piv = sympy.Matrix(g.raw.entries).rref()
            assert len(piv) == r
            assert g.galois == (r == d)
        assert build_can(all_algebras["notsg"]).verdict == ("NotGalois", 2, 2)
        assert time.perf_counter() - t0 < 10


def test_c03_strongly_graded(criterion, all_algebras):
    with criterion(3):
        for name in ("mat", "oct", "notsg"):
            A = all_algebras[name]
            rep = strongly_graded_check(A)
            assert rep.ok and rep.strongly_graded == build_can(A).galois


def test_c04_twist_invariance(criterion):
    with criterion(4):
        for n in (1, 2, 3):
            G = fx.GroupPresentation.z2_power(n)
            h = fx.group_coquasi_hopf(G, fx.Cocycle3.trivial(G))
            A = fx.comodule_algebra_over_itself(h)
            assert twist_invariance(A, fx.cayley_twist(n, h)).ok
            assert twist_invariance(A, GaugeTwist.trivial(h)).ok


def test_c05_drinfeld(criterion):
    names = ["twist f", "f*alfa=gama, beta*f-1=delta", "beta*f-1=delta", "relatie p",
             "relatie f", "relatie UL pR h", "hdeltaS-1(a)h-1=S-1tensorS-1(delta cop(a))"]
    with criterion(5):
        for h in (fx.cq_z2(), fx.oct_host()):
            d = drinfeld_twist(h)
            assert d.report.ok
            for k in names:
                assert d.report[k].passed, k
            assert d.ul_variants["inv/inv"]
        h = fx.hopf_z2()
        d = drinfeld_twist(h)
        e2 = GaugeTwist.trivial(h).tau
        assert d.report.ok and d.f.tau == e2 and d.p == e2 and d.q == e2


def test_c06_counit_twisted_can(criterion, all_algebras):
    with criterion(6):
        for name in ("self", "mat", "oct"):
            assert epsilon_is_twisted_can(all_algebras[name]).ok


def test_c07_translation_map(criterion, galois_algebras, oct_pair):
    with criterion(7):
        for A in galois_algebras.values():
            assert translation_map(build_can(A)).report.ok
        h, A = oct_pair
        tm = translation_map(build_can(A))
        for x in range(8):
            s = {}
            for (l, r), c in tm.terms(x):
                for k, v in A.mul(l, r).items():
                    s[k] = s.get(k, 0) + c * v
            assert {k: v for k, v in s.items() if v} == {i: h.al(x) * c for i, c in A.one.items()}


def test_c08_cleft_equivalence(criterion, all_algebras):
    with criterion(8):
        for name in ("self", "mat", "oct"):
            A = all_algebras[name]
            g = build_can(A)
            nb, _ = normal_basis_search(A)
            assert nb is not None
            c = cleft_from_galois_nb(g, nb)
            assert verify_cleft(c).ok and inversecleaving_implied(c)
            nb2 = normal_basis_from_cleft(c, modules=[regular_module(A)])
            assert nb2.report.ok
        A = all_algebras["notsg"]
        c, info = cleft_search(A)
        nb, _ = normal_basis_search(A)
        assert c is None and info["cleft"] is False
        assert info["cleft"] == (build_can(A).galois and nb is not None)


def _module_set(A):
    mods = [regular_module(A), induce_module(regular_B_module(A), A)]
    if A.coinvariants().dim == 1:
        mods.append(induce_module(trivial_B_module(A), A))
    return mods


def test_c09_can_M_and_counit(criterion, galois_algebras):
    with criterion(9):
        for A in galois_algebras.values():
            g = build_can(A)
            for M in _module_set(A):
                cm, rep = can_M(M, g)
                assert rep.ok and is_bijective(cm)
                eps, _, rep = adjunction_counit(M)
                assert rep.ok and is_bijective(eps)
                assert rho_tilde_exactness(M).ok


def test_c10_integrals_and_splitting(criterion, galois_algebras, notsg_pair):
    with criterion(10, "Galois fixtures and splitting; the NOTSG clause is reported separately"):
        for A in galois_algebras.values():
            assert total_integral_search(A) is not None
            sp = colinear_splitting_search(build_can(A), modules=[regular_module(A)])
            for ident in ("r0", "lr", "l0", "alr"):
                assert sp.report[ident].passed
            assert sp.report.ok


@pytest.mark.xfail(strict=True, reason="NOTSG carries the total integral e -> 1_A, g -> 0")
def test_c10_notsg_has_no_total_integral(criterion, notsg_pair):
    with criterion(10, "NOTSG clause"):
        assert total_integral_search(notsg_pair[1]) is None


def test_c11_bialgebroid(criterion, oct_pair, mat_pair):
    with criterion(11):
        A = oct_pair[1]
        L = build_L(A)
        assert L.dim == 8 and L.report.ok
        for k in ("L associative", "L unit left", "L unit right"):
            assert L.report[k].passed
        assert associator_failure(A) is not None
        for A in (oct_pair[1], mat_pair[1]):
            L = build_L(A)
            g = build_can(A)
            N = coinvariants_L_action(L, regular_two_sided(A))
            assert N.report.ok
            assert induced_left_action(g, N).report.ok
            assert equivalence_round_trip(L, g).ok


def _json_runs():
    cmds = [["verify", "cq_z2.cqh"], ["galois", "oct_h.cqh", "oct_a.cqh"],
            ["galois", "notsg_h.cqh", "notsg_a.cqh"], ["cleftify", "mat_h.cqh", "mat_a.cqh"],
            ["normalbasis", "dual_h.cqh", "dual_a.cqh"], ["battery", "mat_h.cqh", "mat_a.cqh"],
            ["drinfeld", "cq_z2.cqh"], ["bialgebroid", "self_h.cqh", "self_a.cqh"]]
    outs = []
    for c in cmds:
        buf = io.StringIO()
        run_cli(["--json", c[0], *[str(FIXDIR / f) for f in c[1:]]], stdout=buf)
        outs.append(buf.getvalue())
    return outs


def test_c12_determinism_and_round_trip(criterion):
    with criterion(12):
        assert run_cli(["selftest"], stdout=io.StringIO()) == 0
        for name, (build, host_name) in fx.FIXTURES.items():
            text = (FIXDIR / f"{name}.cqh").read_text(encoding="utf-8")
            assert emit_cqh(build()) == text
        hosts = {}
        for name, (build, host_name) in fx.FIXTURES.items():
            text = (FIXDIR / f"{name}.cqh").read_text(encoding="utf-8")
            kw = {"host": hosts[host_name]} if host_name else {}
            obj = parse_cqh(text, **kw)
            hosts[name] = obj
            assert emit_cqh(obj) == text
        a, b = _json_runs(), _json_runs()
        assert a == b
        assert all("timing_s" not in json.loads(x) for x in a)
