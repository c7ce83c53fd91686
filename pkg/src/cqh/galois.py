"""The Galois map and its relatives: translation maps, cleft data, normal
bases and an instance-level battery for the equivalent Galois conditions."""
from __future__ import annotations

import os
import random

from .checks import CheckReport
from .comodule import (BalancedTensor, ComoduleAlgebra, adjunction_counit, adjunction_unit,
                       induce_module, induced_action_on_AH, module_coinvariants,
                       regular_B_module, regular_module, restrict_to_B, scal,
                       total_integral_search, trivial_B_module)
from .coquasi import UNotConvolutionInvertible, change_antipode, convolution_inverse, terms
from .exactlin import (BasedSpace, LinMap, compose, formula_map, invert, is_bijective, kernel,
                       kron, rank, solve, tensor, vec_add)
from .twist import GaugeTwist, drinfeld_twist, twist_comodule_algebra


class NotGalois(ValueError):
    def __init__(self, rank_, corank):
        super().__init__(f"can is not bijective (rank {rank_}, corank {corank})")
        self.rank = rank_
        self.corank = corank


class CanNotSurjective(ValueError):
    pass


class CleftVerificationFailed(ValueError):
    def __init__(self, report):
        super().__init__("cleft equations fail: " + ", ".join(c.name for c in report.failures()))
        self.report = report


class NormalBasisInvalid(ValueError):
    pass


class HostNotGroupAlgebra(ValueError):
    pass


def default_seed():
    return int(os.environ.get("CQH_SEED", "0"))


def _acc(out, key, c):
    if c:
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)


def over_host(A, h):
    """The same comodule algebra data seen over another structure on H."""
    return ComoduleAlgebra(h, A.space, A.coaction, A.mult, A.one)


def balanced_square(A):
    """A (x)_B A."""
    return BalancedTensor(restrict_to_B(regular_module(A), "A"), A)


def can_raw(A, h=None):
    """a (x) b -> a_0 b_0 (x) omega^{-1}(a_1, b_1 beta(b_2), S(b_3)) b_4 on A (x) A."""
    h = h or A.host
    X = A.space

    def fn(a, b):
        out = {}
        for (a0, a1), x in A.coact(a):
            for (b0, b1, b2, b3, b4), y in A.coact(b, 4):
                be = h.be(b2)
                if not be:
                    continue
                w = h.omi(a1, b1, h.S(b3))
                if not w:
                    continue
                c = x * y * be * w
                for k, z in A.mul(a0, b0).items():
                    _acc(out, (k, b4), c * z)
        return out

    return formula_map([X, X], [X, h.space], fn, A.field)


class GaloisData:
    def __init__(self, algebra, tensor_sq, can, raw, report):
        self.algebra = algebra
        self.host = algebra.host
        self.B = algebra.coinvariants()
        self.tensor_sq = tensor_sq
        self.can = can
        self.raw = raw
        self.report = report
        self.rank = rank(can)
        self.target_dim = can.codomain.dim
        self.corank = self.target_dim - self.rank
        self.galois = self.rank == can.domain.dim == self.target_dim
        self.can_inverse = invert(can) if self.galois else None

    @property
    def verdict(self):
        if self.galois:
            return ("Galois",)
        return ("NotGalois", self.rank, self.corank)

    def summary(self):
        if self.galois:
            return f"GALOIS rank={self.rank}/{self.target_dim}"
        return f"NOT GALOIS corank={self.corank}"

    def require(self):
        if not self.galois:
            raise NotGalois(self.rank, self.corank)
        return self

    def rep_of(self, v):
        """A representative in A (x) A of a vector of A (x)_B A."""
        return self.tensor_sq.sect.apply(v)


def _second_leg_coactions(A, T):
    """Coactions on A (x)_B A (second leg) and on A (x) H (comultiplication)."""
    H, F = A.host, A.field
    idA = LinMap.identity(A.space, F)
    idH = LinMap.identity(H.space, F)
    raw = kron(idA, A.coaction)
    on_T = compose(kron(T.proj, idH), compose(raw, T.sect))
    return on_T, kron(idA, H.comult), raw


def _hat_coaction(A):
    """rho^(a (x) b) = a_0 (x) b (x) a_1 on A (x) A."""
    X, H = A.space, A.host

    def fn(a, b):
        return {(a0, b, a1): x for (a0, a1), x in A.coact(a)}

    return formula_map([X, X], [X, X, H.space], fn, A.field)


def _check_coaction(A, H):
    """rho(a (x) h) = a_0 (x) h_2 (x) a_1 S(h_1) on A (x) H."""
    X = A.space

    def fn(a, h):
        out = {}
        for (a0, a1), x in A.coact(a):
            for (h1, h2), y in H.cop(h):
                for k, z in H.mul(a1, H.S(h1)).items():
                    _acc(out, (a0, h2, k), x * y * z)
        return out

    return formula_map([X, H.space], [X, H.space, H.space], fn, A.field)


def build_can(A):
    rep = CheckReport("galois map")
    H, F = A.host, A.field
    T = balanced_square(A)
    raw = can_raw(A)
    rep.record("can well defined", T.kills_relations(raw))
    can = T.descend(raw)
    X = tensor(A.space, H.space)
    can = LinMap(T.space, X, can.cols, F)
    co_T, co_AH, _ = _second_leg_coactions(A, T)
    idH = LinMap.identity(H.space, F)
    rep.equal("can colinear", compose(co_AH, can), compose(kron(can, idH), co_T))

    def one_b(b):
        out = {}
        for (b0, b1, b2), x in A.coact(b, 2):
            be = H.be(b1)
            if be:
                _acc(out, (b0, b2), x * be)
        return out

    lhs = formula_map([A.space], [T.space], lambda b: T.cls({(i, b): c for i, c in A.one.items()}), F)
    rep.equal("can(1 (x) a)", compose(can, lhs), formula_map([A.space], [A.space, H.space], one_b, F))
    hat = _hat_coaction(A)
    rep.record("hat coaction well defined",
               compose(kron(T.proj, idH), compose(hat, T.relations)).is_zero())
    hat_T = compose(kron(T.proj, idH), compose(hat, T.sect))
    check = _check_coaction(A, H)
    rep.equal("can left colinear", compose(check, can), compose(kron(can, idH), hat_T))
    return GaloisData(A, T, can, raw, rep)


def change_antipode_compat(A, U):
    """can for the antipode changed by U against psi(a (x) h) = a (x) U^{-1}(h_1) h_2."""
    h = A.host
    Uinv = convolution_inverse(U, h)
    if Uinv is None:
        raise UNotConvolutionInvertible("U has no convolution inverse")
    h2 = change_antipode(h, U)
    A2 = over_host(A, h2)
    g1, g2 = build_can(A), build_can(A2)
    F = A.field
    H = h.space

    def psi(vals):
        def fn(a, x):
            out = {}
            for (x1, x2), c in h.cop(x):
                if vals[x1]:
                    _acc(out, (a, x2), c * vals[x1])
            return out
        return formula_map([A.space, H], [A.space, H], fn, F)

    from .coquasi import functional_values
    uv, uiv = functional_values(U), functional_values(Uinv)
    p_inv, p = psi(uiv), psi(uv)
    rep = CheckReport("change of antipode")
    rep.record("same coinvariants", g1.tensor_sq.dim == g2.tensor_sq.dim)
    rep.equal("can S' = psi_{U^-1} can S", g2.raw, compose(p_inv, g1.raw))
    rep.equal("psi invertible", compose(p, p_inv), LinMap.identity(p.domain, F))
    rep.record("same verdict", g1.galois == g2.galois)
    rep.stated_psi_U = g2.raw == compose(p, g1.raw)
    return rep


def build_can_prime(A, data=None):
    """can' on A (x)_B A, the map Xi with Xi can = can', and its inverse."""
    h, F = A.host, A.field
    h.require_bijective_antipode()
    H, X = h.space, A.space
    Si = h.Sinv
    data = data or drinfeld_twist(h)
    fv, fi = data.f.t, data.f.ti
    rep = CheckReport("can prime")
    T = balanced_square(A)

    def cp(a, b):
        out = {}
        for (a0, a1, a2, a3, a4), x in A.coact(a, 4):
            bs = h.be(Si(a2))
            if not bs:
                continue
            for (b0, b1), y in A.coact(b):
                w = h.om(scal(Si(a3), bs), a1, b1)
                if not w:
                    continue
                for k, z in A.mul(a0, b0).items():
                    _acc(out, (k, a4), x * y * w * z)
        return out

    raw = formula_map([X, X], [X, H], cp, F)
    rep.record("can prime well defined", T.kills_relations(raw))
    canp = LinMap(T.space, tensor(X, H), T.descend(raw).cols, F)

    def xi(a, k):
        out = {}
        for (a0, a1, a2, a3, a4, a5), x in A.coact(a, 5):
            be = h.be(a3)
            if not be:
                continue
            for (k1, k2, k3), y in h.cop(k, 3):
                w = fv(k2, Si(a1))
                if not w:
                    continue
                w *= h.omi(k3, scal(a2, be), h.S(a4))
                if w:
                    for j, z in h.mul(a5, h.S(k1)).items():
                        _acc(out, (a0, j), x * y * w * z)
        return out

    def xi_inv(a, k):
        out = {}
        for (a0, a1, a2, a3, a4, a5), x in A.coact(a, 5):
            be = h.be(a2)
            if not be:
                continue
            for (k1, k2, k3), y in h.cop(k, 3):
                w = fi(Si(k2), a4)
                if not w:
                    continue
                w *= h.om(scal(a1, be), h.S(a3), k3)
                if w:
                    for j, z in h.mul(Si(k1), a5).items():
                        _acc(out, (a0, j), x * y * w * z)
        return out

    Xi = formula_map([X, H], [X, H], xi, F)
    Xii = formula_map([X, H], [X, H], xi_inv, F)
    g = build_can(A)
    rep.equal("Xi can = can'", compose(Xi, g.can), canp)
    rep.equal("Xi Xi^-1 = id", compose(Xi, Xii), LinMap.identity(Xi.domain, F))
    rep.equal("Xi^-1 Xi = id", compose(Xii, Xi), LinMap.identity(Xi.domain, F))
    idH = LinMap.identity(H, F)
    hat = _hat_coaction(A)
    hat_T = compose(kron(T.proj, idH), compose(hat, T.sect))
    first = formula_map([X, H], [X, H, H],
                        lambda a, k: {(a, k1, k2): c for (k1, k2), c in h.cop(k)}, F)
    rep.equal("can prime colinear", compose(first, canp), compose(kron(canp, idH), hat_T))
    rep.record("can prime bijective iff can bijective",
               (rank(canp) == canp.codomain.dim == T.space.dim) == g.galois)
    if g.galois:
        xt = compose(canp, g.can_inverse)
        rep.record("Xi factors through the coaction", _factors_through_coaction(A, xt))
    return canp, Xi, rep


def _factors_through_coaction(A, xt):
    # is xt(a (x) k) = a_0 (x) Phi(a_1, k) for some Phi: H (x) H -> H?  unknowns Phi[x, k, j]
    n, d = A.host.dim, A.dim
    rows, rhs = [], []
    for a in range(d):
        for k in range(n):
            eq = {}
            for (a0, a1), c in A.coact(a):
                for j in range(n):
                    eq.setdefault(a0 * n + j, {})
                    _acc(eq[a0 * n + j], (a1 * n + k) * n + j, c)
            col = xt.cols[a * n + k]
            for r in range(d * n):
                rows.append(eq.get(r, {}))
                rhs.append(col.get(r, 0))
    M = LinMap.from_rows(BasedSpace.numbered(n ** 3), BasedSpace.numbered(len(rows)), rows, A.field)
    return solve(M, rhs) is not None


def theta_map(A, t, inverse=False):
    """a (x) h -> a_0 (x) h_2 tau(a_1, S(h_1)) (tau^{-1} when inverse)."""
    h = t.host
    P = t.ti if inverse else t.t

    def fn(a, k):
        out = {}
        for (a0, a1), x in A.coact(a):
            for (k1, k2), y in h.cop(k):
                w = P(a1, h.S(k1))
                if w:
                    _acc(out, (a0, k2), x * y * w)
        return out

    return formula_map([A.space, h.space], [A.space, h.space], fn, A.field)


def can_twist_formula(A, t):
    """a_0 b_0 (x) tau(a_1 b_1, S(b_5)) omega^{-1}(a_2, b_2, beta(b_3) S(b_4)) b_6."""
    h, X = A.host, A.space

    def fn(a, b):
        out = {}
        for (a0, a1, a2), x in A.coact(a, 2):
            for (b0, b1, b2, b3, b4, b5, b6), y in A.coact(b, 6):
                be = h.be(b3)
                if not be:
                    continue
                w = t.t(h.mul(a1, b1), h.S(b5))
                if not w:
                    continue
                w *= h.omi(a2, b2, scal(h.S(b4), be))
                if w:
                    for k, z in A.mul(a0, b0).items():
                        _acc(out, (k, b6), x * y * w * z)
        return out

    return formula_map([X, X], [X, h.space], fn, A.field)


def twist_invariance(A, t):
    """can of the twisted extension B in A_{tau^-1} over H_tau against theta o can."""
    At = twist_comodule_algebra(A, t)
    rep = CheckReport("twist invariance")
    F = A.field
    g, gt = build_can(A), build_can(At)
    th, thi = theta_map(A, t), theta_map(A, t, inverse=True)
    rep.equal("can twist", gt.raw, can_twist_formula(A, t))
    rep.equal("can_tau = theta can", gt.raw, compose(th, g.raw))
    rep.equal("theta theta^-1 = id", compose(th, thi), LinMap.identity(th.domain, F))
    rep.equal("theta^-1 theta = id", compose(thi, th), LinMap.identity(th.domain, F))
    rep.record("same coinvariants", g.tensor_sq.dim == gt.tensor_sq.dim)
    rep.record("same verdict", g.galois == gt.galois,
               detail=f"{g.summary()} vs {gt.summary()}")
    return rep


def epsilon_is_twisted_can(A, data=None):
    """The counit of A (x) H against can twisted by f~."""
    h, F = A.host, A.field
    h.require_bijective_antipode()
    Si = h.Sinv
    data = data or drinfeld_twist(h)
    fv = data.f.t
    rep = CheckReport("counit as twisted can")
    M = induced_action_on_AH(A)
    X, H = A.space, h.space
    # a (x) b -> (a (x) 1) b
    one = h.unit

    def eps(a, b):
        out = {}
        for i, c in one.items():
            vec_add(out, M.act(a * H.dim + i, b), c)
        return {divmod(k, H.dim): c for k, c in out.items()}

    def closed(a, b):
        out = {}
        for (a0, a1, a2), x in A.coact(a, 2):
            for (b0, b1, b2, b3, b4, b5, b6), y in A.coact(b, 6):
                be = h.be(b3)
                if not be:
                    continue
                w = fv(b5, Si(h.mul(a1, b1)))
                if not w:
                    continue
                w *= h.omi(a2, scal(b2, be), h.S(b4))
                if w:
                    for k, z in A.mul(a0, b0).items():
                        _acc(out, (k, b6), x * y * w * z)
        return out

    e = formula_map([X, X], [X, H], eps, F)
    rep.equal("epsilon pt AtensorH", e, formula_map([X, X], [X, H], closed, F))
    ft = data.f_tilde
    rep.equal("epsilon = theta_f~ can", e, compose(theta_map(A, ft), can_raw(A)))
    T = balanced_square(A)
    rep.record("epsilon well defined", T.kills_relations(e))
    eq = T.descend(e)
    g = build_can(A)
    rep.record("epsilon and can simultaneously bijective",
               is_bijective(LinMap(T.space, tensor(X, H), eq.cols, F)) == g.galois)
    return rep


# ---------------------------------------------------------------- translation map

class TranslationMap:
    def __init__(self, galois, rows, report):
        self.galois = galois
        self.rows = rows
        self.report = report

    def terms(self, x):
        """Representative terms ((l, r), c) of can^{-1}(1 (x) x) in A (x) A."""
        g = self.galois
        dA = g.algebra.dim
        v = {}
        for i, c in terms(x):
            vec_add(v, self.rows.cols[i], c)
        return [(divmod(k, dA), c) for k, c in g.rep_of(v).items()]


def translation_map(g):
    g.require()
    A, h, F = g.algebra, g.host, g.algebra.field
    T = g.tensor_sq
    X, H = A.space, h.space
    rep = CheckReport("translation map")
    cls = T.cls
    cinv = g.can_inverse
    one = A.one
    rows = compose(cinv, formula_map([H], [X, H], lambda k: {(i, k): c for i, c in one.items()}, F))
    rows = LinMap(H, T.space, rows.cols, F)
    tm = TranslationMap(g, rows, rep)
    idH = LinMap.identity(H, F)
    co_T, _, _ = _second_leg_coactions(A, T)
    # (5.1)
    rep.equal("translation colinear", kron(rows, idH) @ h.comult, co_T @ rows)
    # (5.2) multiplication descends to A (x)_B A
    m_desc = T.kills_relations(A.mult)
    rep.record("multiplication balanced", m_desc)
    lr = compose(A.mult, compose(T.sect, rows))
    rep.equal("l(h)r(h)=alpha(h)1",
              lr, formula_map([H], [X], lambda k: {i: c * h.al(k) for i, c in one.items()}, F))
    # (5.3)
    hat = _hat_coaction(A)
    hat_T = compose(kron(T.proj, idH), compose(hat, T.sect))

    def l0(k):
        out = {}
        for (k1, k2), c in h.cop(k):
            for t_, x in rows.cols[k2].items():
                for j, y in h.S(k1).items():
                    _acc(out, (t_, j), c * x * y)
        return out

    rep.equal("translation left leg S-colinear", hat_T @ rows,
              formula_map([H], [T.space, H], l0, F))

    # (5.4)
    def alr(a):
        out = {}
        for (a0, a1, a2), x in A.coact(a, 2):
            be = h.be(a1)
            if not be:
                continue
            for (l, r), y in tm.terms(a2):
                for k, z in A.mul(a0, l).items():
                    _acc(out, (k, r), x * y * z * be)
        return cls(out)

    rep.equal("a0 beta(a1) l(a2) (x) r(a2) = 1 (x) a", formula_map([X], [T.space], alr, F),
              formula_map([X], [T.space], lambda a: cls({(i, a): c for i, c in one.items()}), F))
    # (5.5)
    data = drinfeld_twist(h) if h.antipode_inv is not None else None
    if data is not None:
        fi = data.f.ti

        def lhs(x, y):
            v = {}
            for k, c in h.mul(x, y).items():
                vec_add(v, rows.cols[k], c)
            return v

        def rhs(x, y):
            out = {}
            for (x1, x2), a in h.cop(x):
                for (y1, y2), b in h.cop(y):
                    w = fi(x1, y1)
                    if not w:
                        continue
                    for (li, ri), c in tm.terms(y2):
                        for (lj, rj), d in tm.terms(x2):
                            for p, u in A.mul(li, lj).items():
                                for q, v in A.mul(rj, ri).items():
                                    _acc(out, (p, q), a * b * w * c * d * u * v)
            return cls(out)

        rep.equal("l(hg) (x) r(hg) = f^-1 l(g)l(h) (x) r(h)r(g)",
                  formula_map([H, H], [T.space], lhs, F), formula_map([H, H], [T.space], rhs, F))

    # property (4): (c (x) 1) can^{-1}(d (x) k) = can^{-1}(c_0 d_0 (x) k_2) omega^{-1}(c_1, d_1, S(k_1))
    def left_mult(c):
        def fn(t_):
            out = {}
            for k, x in T.sect.cols[t_].items():
                a, b = divmod(k, A.dim)
                for j, y in A.mul(c, a).items():
                    _acc(out, (j, b), x * y)
            return cls(out)
        return fn

    def p4_l(c, d, k):
        v = cinv.apply({d * H.dim + k: 1})
        out = {}
        for t_, x in v.items():
            vec_add(out, left_mult(c)(t_), x)
        return out

    def p4_r(c, d, k):
        out = {}
        for (c0, c1), x in A.coact(c):
            for (d0, d1), y in A.coact(d):
                for (k1, k2), z in h.cop(k):
                    w = h.omi(c1, d1, h.S(k1))
                    if not w:
                        continue
                    for j, u in A.mul(c0, d0).items():
                        vec_add(out, cinv.apply({j * H.dim + k2: 1}), x * y * z * w * u)
        return out

    rep.equal("can^-1 left A-linearity", formula_map([X, X, H], [T.space], p4_l, F),
              formula_map([X, X, H], [T.space], p4_r, F))
    return tm


# ---------------------------------------------------------------- can_M

def can_M(M, g=None):
    """can_M on M (x)_B A, with colinearity and the factorization F2 (I (x) can) G1."""
    A = M.algebra
    g = g or build_can(A)
    h, F = A.host, A.field
    X, H, Ms = A.space, h.space, M.space
    rep = CheckReport("can_M")
    T = BalancedTensor(restrict_to_B(M), A)

    def fn(m, a):
        out = {}
        for (m0, m1), x in M.coact(m):
            for (a0, a1, a2, a3, a4), y in A.coact(a, 4):
                be = h.be(a2)
                if not be:
                    continue
                w = h.omi(m1, scal(a1, be), h.S(a3))
                if w:
                    for k, z in M.act(m0, a0).items():
                        _acc(out, (k, a4), x * y * w * z)
        return out

    raw = formula_map([Ms, X], [Ms, H], fn, F)
    rep.record("can_M well defined", T.kills_relations(raw))
    cm = LinMap(T.space, tensor(Ms, H), T.descend(raw).cols, F)
    idM, idH = LinMap.identity(Ms, F), LinMap.identity(H, F)
    co_T = compose(kron(T.proj, idH), compose(kron(idM, A.coaction), T.sect))
    rep.equal("can_M colinear", compose(kron(idM, h.comult), cm), compose(kron(cm, idH), co_T))
    # factorization through M (x) (A (x)_B A)
    Tq = g.tensor_sq
    G1 = formula_map([Ms, X], [Ms, Tq.space],
                     lambda m, a: {(m, t_): c for t_, c in Tq.cls({(i, a): x for i, x in A.one.items()}).items()}, F)

    def f2(m, a, k):
        out = {}
        for (m0, m1), x in M.coact(m):
            for (a0, a1), y in A.coact(a):
                for (k1, k2), z in h.cop(k):
                    w = h.omi(m1, a1, h.S(k1))
                    if w:
                        for j, u in M.act(m0, a0).items():
                            _acc(out, (j, k2), x * y * z * w * u)
        return out

    F2 = formula_map([Ms, X, H], [Ms, H], f2, F)
    rep.equal("can_M = F2 (I (x) can) G1", raw, F2 @ kron(idM, g.can) @ G1)
    bij = is_bijective(cm)
    rep.record("can_M bijective when Galois", bij or not g.galois, detail=f"bijective={bij}")
    return cm, rep


# ---------------------------------------------------------------- cleft

class CleftData:
    def __init__(self, algebra, gamma, delta):
        self.algebra = algebra
        self.gamma = gamma
        self.delta = delta


def _conv_terms(A, f1, f2, pre=None):
    """h -> f1(h_1) w(h_2) f2(h_3) with a scalar functional w in the middle (or none)."""
    h = A.host
    n = 3 if pre else 2

    def fn(x):
        out = {}
        for legs, c in h.cop(x, n):
            if pre:
                w = pre(legs[1])
                if not w:
                    continue
                c = c * w
            vec_add(out, A.mul(f1.cols[legs[0]], f2.cols[legs[-1]]), c)
        return out

    return formula_map([h.space], [A.space], fn, A.field)


def verify_cleft(c):
    A = c.algebra
    h, F = A.host, A.field
    H, X = h.space, A.space
    rep = CheckReport("cleft")
    idH = LinMap.identity(H, F)
    gam, dl = c.gamma, c.delta
    rep.equal("gamma colinear", A.coaction @ gam, kron(gam, idH) @ h.comult)

    def inv_cl(x):
        out = {}
        for (x1, x2), a in h.cop(x):
            for k, y in dl.cols[x2].items():
                for j, z in h.S(x1).items():
                    _acc(out, (k, j), a * y * z)
        return out

    rep.equal("inversecleaving", A.coaction @ dl, formula_map([H], [X, H], inv_cl, F))
    one = A.one
    rep.equal("convolutiedeltagama", _conv_terms(A, dl, gam),
              formula_map([H], [X], lambda x: {i: v * h.al(x) for i, v in one.items()}, F))
    rep.equal("convolutiegamabetadelta", _conv_terms(A, gam, dl, pre=h.be),
              formula_map([H], [X], lambda x: {i: v * h.eps(x) for i, v in one.items()}, F))
    return rep


def _delta_system(A, gam, with_inverse_cleaving=False):
    """Rows and right-hand side of the cleft equations, linear in delta for fixed gamma.

    Unknown delta[h][a] sits at h*dA + a.
    """
    h = A.host
    dA, dH = A.dim, h.dim
    one = A.one
    rows, rhs = [], []
    for x in range(dH):
        eq1, eq2 = {}, {}
        for (x1, x2), a in h.cop(x):
            for k, y in gam.cols[x2].items():
                for l in range(dA):
                    for j, z in A.mul(l, k).items():
                        eq1.setdefault(j, {})
                        _acc(eq1[j], x1 * dA + l, a * y * z)
        for (x1, x2, x3), a in h.cop(x, 3):
            be = h.be(x2)
            if not be:
                continue
            for k, y in gam.cols[x1].items():
                for l in range(dA):
                    for j, z in A.mul(k, l).items():
                        eq2.setdefault(j, {})
                        _acc(eq2[j], x3 * dA + l, a * y * z * be)
        al, ep = h.al(x), h.eps(x)
        for j in range(dA):
            rows.append(eq1.get(j, {}))
            rhs.append(one.get(j, 0) * al)
            rows.append(eq2.get(j, {}))
            rhs.append(one.get(j, 0) * ep)
    if with_inverse_cleaving:
        # rho(delta(x)) = delta(x_2) (x) S(x_1)
        for x in range(dH):
            eqs = {}
            for l in range(dA):
                for (l0, l1), c in A.coact(l):
                    eqs.setdefault((l0, l1), {})
                    _acc(eqs[(l0, l1)], x * dA + l, c)
            for (x1, x2), a in h.cop(x):
                for j, z in h.S(x1).items():
                    for l in range(dA):
                        eqs.setdefault((l, j), {})
                        _acc(eqs[(l, j)], x2 * dA + l, -a * z)
            for key in sorted(eqs):
                rows.append(eqs[key])
                rhs.append(0)
    U = BasedSpace.numbered(dA * dH, "d")
    R = BasedSpace.numbered(max(len(rows), 1), "r")
    return LinMap.from_rows(U, R, rows or [{}], A.field), rhs


def inversecleaving_implied(c):
    """Whether the two convolution equations alone force delta for this gamma."""
    M, _ = _delta_system(c.algebra, c.gamma)
    return kernel(M).dim == 0


def delta_for_gamma(A, gam):
    """Some delta making (gamma, delta) cleft, or None."""
    M, rhs = _delta_system(A, gam, with_inverse_cleaving=True)
    sol = solve(M, rhs)
    if sol is None:
        return None
    dA = A.dim
    cols = [{} for _ in range(A.host.dim)]
    for idx, v in sol.items():
        if v:
            x, a = divmod(idx, dA)
            cols[x][a] = v
    return LinMap(A.host.space, A.space, cols, A.field)


def cleft_search(A, seed=None, tries=64):
    """Decide cleftness: (CleftData or None, info).

    A cleaving map makes b (x) h -> b gamma(h) a normal basis, so candidates come from
    normal_basis_search; for each one delta is a linear solve.  If a normal basis gamma
    admits no delta then A is not cleft (cleft would force Galois, and Galois plus this
    normal basis would make gamma cleaving).
    """
    nb, info = normal_basis_search(A, seed=seed, tries=tries)
    info = dict(info)
    if nb is None:
        info["cleft"] = False
        return None, info
    gam = nb_gamma(nb)
    dl = delta_for_gamma(A, gam)
    if dl is None:
        info.update(cleft=False, reason="normal basis gamma admits no delta")
        return None, info
    c = CleftData(A, gam, dl)
    c.report = verify_cleft(c)
    info["cleft"] = c.report.ok
    return c, info

def cleft_change_antipode(c, U):
    A = c.algebra
    h = A.host
    if convolution_inverse(U, h) is None:
        raise UNotConvolutionInvertible("U has no convolution inverse")
    from .coquasi import functional_values
    uv = functional_values(U)
    h2 = change_antipode(h, U)
    A2 = over_host(A, h2)

    def fn(x):
        out = {}
        for (x1, x2), a in h.cop(x):
            if uv[x1]:
                vec_add(out, c.delta.cols[x2], a * uv[x1])
        return out

    d2 = formula_map([h.space], [A.space], fn, A.field)
    return CleftData(A2, c.gamma, d2)


class NormalBasisData:
    def __init__(self, algebra, nu, nu_inverse, report):
        self.algebra = algebra
        self.nu = nu
        self.nu_inverse = nu_inverse
        self.report = report


def _nu_from_gamma(A, gamma):
    B = A.coinvariants()
    h = A.host
    return formula_map([B.space, h.space], [A.space],
                       lambda b, x: A.mul(B.vec(b), gamma.cols[x]), A.field)


def verify_normal_basis(A, nu, nu_inv, rep=None):
    rep = rep or CheckReport("normal basis")
    B = A.coinvariants()
    h, F = A.host, A.field
    BH = tensor(B.space, h.space)
    rep.equal("nu nu^-1 = id", nu @ nu_inv, LinMap.identity(A.space, F))
    rep.equal("nu^-1 nu = id", nu_inv @ nu, LinMap.identity(BH, F))
    lin_l = formula_map([B.space, B.space, h.space], [A.space],
                        lambda b1, b2, x: nu.apply({k * h.dim + x: c for k, c in B.mul(b1, b2).items()}), F)
    lin_r = formula_map([B.space, B.space, h.space], [A.space],
                        lambda b1, b2, x: A.mul(B.vec(b1), nu.cols[b2 * h.dim + x]), F)
    rep.equal("nu left B-linear", lin_l, lin_r)
    idB = LinMap.identity(B.space, F)
    idH = LinMap.identity(h.space, F)
    rep.equal("nu colinear", A.coaction @ nu, kron(nu, idH) @ kron(idB, h.comult))
    return rep


def trace_module(M, delta):
    """t_M(m) = m_0 beta(m_1) delta(m_2), as a vector-valued map M -> M."""
    A = M.algebra
    h = A.host

    def fn(m):
        out = {}
        for (m0, m1, m2), x in M.coact(m, 2):
            be = h.be(m1)
            if be:
                vec_add(out, M.act(m0, delta.cols[m2]), x * be)
        return out

    return formula_map([M.space], [M.space], fn, A.field)


def normal_basis_from_cleft(c, modules=()):
    rep = verify_cleft(c)
    if not rep.ok:
        raise CleftVerificationFailed(rep)
    A = c.algebra
    h, F = A.host, A.field
    B = A.coinvariants()
    nu = _nu_from_gamma(A, c.gamma)

    def ninv(a):
        acc = {}
        for (a0, a1, a2, a3), x in A.coact(a, 3):
            be = h.be(a1)
            if be:
                for k, y in A.mul(a0, c.delta.cols[a2]).items():
                    _acc(acc.setdefault(a3, {}), k, x * be * y)
        out = {}
        for a3, v in acc.items():
            co = B.subspace.coordinates(v)
            if co is None:
                return None
            for k, y in co.items():
                _acc(out, (k, a3), y)
        return out

    raw = [ninv(a) for a in range(A.dim)]
    rep.record("nu^-1 lands in B (x) H", all(r is not None for r in raw))
    if not rep.ok:
        raise CleftVerificationFailed(rep)
    BH = tensor(B.space, h.space)
    nu_inv = formula_map([A.space], [B.space, h.space], lambda a: raw[a], F)
    nu_inv = LinMap(A.space, BH, nu_inv.cols, F)
    verify_normal_basis(A, nu, nu_inv, rep)
    for M in modules:
        rep.extend(chi_check(M, trace_module(M, c.delta), c.gamma, label=getattr(M, "name", "M")))
    return NormalBasisData(A, nu, nu_inv, rep)


def chi_check(M, tM, gamma, label="M"):
    """chi(m) = t_M(m_0) (x)_B gamma(m_1) against the counit of M."""
    rep = CheckReport("chi")
    eps, ind, _ = adjunction_counit(M)
    N, sub, _ = module_coinvariants(M)
    T = ind.balanced
    rep.record(f"t_M lands in coinvariants ({label})", sub.contains_image(tM))
    if not rep.ok:
        return rep

    def fn(m):
        out = {}
        for (m0, m1), x in M.coact(m):
            co = sub.coordinates(tM.cols[m0])
            for n_, y in co.items():
                for a, z in gamma.cols[m1].items():
                    _acc(out, (n_, a), x * y * z)
        return T.cls(out)

    chi = formula_map([M.space], [T.space], fn, M.field)
    rep.equal(f"chi eps = id ({label})", chi @ eps, LinMap.identity(T.space, M.field))
    rep.equal(f"eps chi = id ({label})", eps @ chi, LinMap.identity(M.space, M.field))
    return rep


def nb_gamma(nb):
    """gamma(h) = nu(1 (x) h)."""
    A = nb.algebra
    B = A.coinvariants()
    dH = A.host.dim
    one = B.subspace.coordinates(A.one)
    return formula_map([A.host.space], [A.space],
                       lambda x: nb.nu.apply({b * dH + x: c for b, c in one.items()}), A.field)


def cleft_from_galois_nb(g, nb):
    if not g.galois:
        raise NotGalois(g.rank, g.corank)
    A = nb.algebra
    rep = verify_normal_basis(A, nb.nu, nb.nu_inverse)
    if not rep.ok:
        raise NormalBasisInvalid(", ".join(c.name for c in rep.failures()))
    h, F = A.host, A.field
    B = A.coinvariants()
    dH = h.dim
    gamma = nb_gamma(nb)

    # Gamma = (I (x) eps) nu^{-1} : A -> B, as a vector of A
    def Gam(a):
        out = {}
        for k, c in nb.nu_inverse.cols[a].items():
            b, x = divmod(k, dH)
            e = h.eps(x)
            if e:
                vec_add(out, B.vec(b), c * e)
        return out

    tm = translation_map(g)

    def dl(x):
        out = {}
        for (l, r), c in tm.terms(x):
            vec_add(out, A.mul(l, Gam(r)), c)
        return out

    delta = formula_map([h.space], [A.space], dl, F)
    c = CleftData(A, gamma, delta)
    c.report = verify_cleft(c)
    return c


def _random_vector(basis, rng, field, span=7):
    out = {}
    for v in basis:
        c = rng.randint(-span, span)
        if c:
            vec_add(out, v, field(c))
    return out


def normal_basis_search(A, seed=None, tries=64):
    """A normal basis, or None.  Returns (data or None, info)."""
    B = A.coinvariants()
    h, F = A.host, A.field
    dA, dB, dH = A.dim, B.dim, h.dim
    info = {"inconclusive": False, "tried": 0, "reason": ""}
    if dA != dB * dH:
        info["reason"] = f"dimension reject {dA} != {dB}*{dH}"
        return None, info
    # unknown nu(b (x) x)[a] at (b*dH + x)*dA + a
    var = lambda b, x, a: (b * dH + x) * dA + a
    rows = []
    for b1 in range(dB):
        for b2 in range(dB):
            for x in range(dH):
                eq = {}
                for k, c in B.mul(b1, b2).items():
                    for a in range(dA):
                        eq.setdefault(a, {})
                        _acc(eq[a], var(k, x, a), c)
                for a2 in range(dA):
                    for a, c in A.mul(B.vec(b1), a2).items():
                        eq.setdefault(a, {})
                        _acc(eq[a], var(b2, x, a2), -c)
                rows.extend(eq.values())
    for b in range(dB):
        for x in range(dH):
            eq = {}
            for a2 in range(dA):
                for (a, k), c in A.coact(a2):
                    eq.setdefault((a, k), {})
                    _acc(eq[(a, k)], var(b, x, a2), c)
            for (x1, x2), c in h.cop(x):
                for a in range(dA):
                    eq.setdefault((a, x2), {})
                    _acc(eq[(a, x2)], var(b, x1, a), -c)
            rows.extend(eq.values())
    U = BasedSpace.numbered(dA * dB * dH, "n")
    sol = kernel(LinMap.from_rows(U, BasedSpace.numbered(len(rows), "r"), rows, F))
    BH = tensor(B.space, h.space)

    def as_map(v):
        cols = [{} for _ in range(dB * dH)]
        for k, c in v.items():
            j, a = divmod(k, dA)
            cols[j][a] = c
        return LinMap(BH, A.space, cols, F)

    candidates = list(sol.basis_vectors)
    if F.char:
        from itertools import product
        if F.char ** sol.dim <= 4096:
            candidates = []
            for coeffs in product(range(F.char), repeat=sol.dim):
                v = {}
                for c, b in zip(coeffs, sol.basis_vectors):
                    if c:
                        vec_add(v, b, F(c))
                candidates.append(v)
    rng = random.Random(default_seed() if seed is None else seed)
    extra = [] if (F.char and F.char ** sol.dim <= 4096) else \
        [_random_vector(sol.basis_vectors, rng, F) for _ in range(tries)]
    for v in candidates + extra:
        info["tried"] += 1
        if not v:
            continue
        nu = as_map(v)
        inv = invert(nu)
        if inv is not None:
            rep = verify_normal_basis(A, nu, inv)
            if rep.ok:
                return NormalBasisData(A, nu, inv, rep), info
    info["inconclusive"] = sol.dim > 0 and not (F.char and F.char ** sol.dim <= 4096)
    info["reason"] = "no invertible element found" + (" (inconclusive)" if info["inconclusive"] else "")
    return None, info


# ---------------------------------------------------------------- splitting

def colinear_maps_H_to_A(A):
    """Basis of the colinear maps H -> A, as lists of columns."""
    h, F = A.host, A.field
    dA, dH = A.dim, h.dim
    rows = []
    for x in range(dH):
        eq = {}
        for a2 in range(dA):
            for (a, k), c in A.coact(a2):
                eq.setdefault((a, k), {})
                _acc(eq[(a, k)], x * dA + a2, c)
        for (x1, x2), c in h.cop(x):
            for a in range(dA):
                eq.setdefault((a, x2), {})
                _acc(eq[(a, x2)], x1 * dA + a, -c)
        rows.extend(eq.values())
    U = BasedSpace.numbered(dA * dH, "c")
    sol = kernel(LinMap.from_rows(U, BasedSpace.numbered(len(rows), "r"), rows, F))
    out = []
    for v in sol.basis_vectors:
        cols = [{} for _ in range(dH)]
        for k, c in v.items():
            x, a = divmod(k, dA)
            cols[x][a] = c
        out.append(cols)
    return out


class Splitting:
    def __init__(self, theta, report):
        self.theta = theta
        self.report = report


def colinear_splitting_search(g, modules=()):
    """theta : A (x) H -> A (x) A, colinear for both coactions, with can~ theta = id."""
    A, h, F = g.algebra, g.host, g.algebra.field
    if g.rank != g.target_dim:
        raise CanNotSurjective(f"can has corank {g.corank}")
    dA, dH = A.dim, h.dim
    C = colinear_maps_H_to_A(A)
    nC = len(C)
    # theta(a (x) x) = sum_{b, c} lam[a, b, c] b (x) C_c(x); unknown index (a*dA + b)*nC + c
    var = lambda a, b, c: (a * dA + b) * nC + c
    can_cols = g.raw.cols
    rows, rhs = [], []
    for a in range(dA):
        for x in range(dH):
            eq = {}
            for b in range(dA):
                for ci, col in enumerate(C):
                    for y, c in col[x].items():
                        for k, z in can_cols[b * dA + y].items():
                            eq.setdefault(k, {})
                            _acc(eq[k], var(a, b, ci), c * z)
            for k in range(dA * dH):
                rows.append(eq.get(k, {}))
                rhs.append(1 if k == a * dH + x else 0)
    # left colinearity: hat(theta(a (x) x)) = (theta (x) id) check(a (x) x)
    for a in range(dA):
        for x in range(dH):
            eq = {}
            for b in range(dA):
                for ci, col in enumerate(C):
                    for y, c in col[x].items():
                        for (b0, b1), z in A.coact(b):
                            eq.setdefault((b0, y, b1), {})
                            _acc(eq[(b0, y, b1)], var(a, b, ci), c * z)
            for (a0, a1), u in A.coact(a):
                for (x1, x2), v in h.cop(x):
                    for k, w in h.mul(a1, h.S(x1)).items():
                        for b in range(dA):
                            for ci, col in enumerate(C):
                                for y, c in col[x2].items():
                                    eq.setdefault((b, y, k), {})
                                    _acc(eq[(b, y, k)], var(a0, b, ci), -u * v * w * c)
            for r in eq.values():
                rows.append(r)
                rhs.append(0)
    U = BasedSpace.numbered(dA * dA * max(nC, 1), "t")
    R = BasedSpace.numbered(len(rows), "r")
    lam = solve(LinMap.from_rows(U, R, rows, F), rhs) if nC else None
    if lam is None:
        return None

    def theta(a, x):
        out = {}
        for k, c in lam.items():
            ab, ci = divmod(k, nC)
            a2, b = divmod(ab, dA)
            if a2 != a:
                continue
            for y, z in C[ci][x].items():
                _acc(out, (b, y), c * z)
        return out

    X, H = A.space, h.space
    th = formula_map([X, H], [X, X], theta, F)
    rep = CheckReport("colinear splitting")
    rep.equal("can~ theta = id", g.raw @ th, LinMap.identity(th.domain, F))
    one = A.one

    def lt(x):
        out = {}
        for i, c in one.items():
            vec_add(out, th.cols[i * dH + x], c)
        return [(divmod(k, dA), c) for k, c in out.items()]

    def r0_l(x):
        out = {}
        for (x1, x2), a in h.cop(x):
            for (l, r), c in lt(x1):
                _acc(out, (l, r, x2), a * c)
        return out

    def r0_r(x):
        out = {}
        for (l, r), c in lt(x):
            for (r0, r1), d in A.coact(r):
                _acc(out, (l, r0, r1), c * d)
        return out

    rep.equal("r0", formula_map([H], [X, X, H], r0_l, F), formula_map([H], [X, X, H], r0_r, F))

    def lr(x):
        out = {}
        for (l, r), c in lt(x):
            vec_add(out, A.mul(l, r), c)
        return out

    rep.equal("lr", formula_map([H], [X], lr, F),
              formula_map([H], [X], lambda x: {i: c * h.al(x) for i, c in one.items()}, F))

    def l0_l(x):
        out = {}
        for (l, r), c in lt(x):
            for (l0, l1), d in A.coact(l):
                _acc(out, (l0, r, l1), c * d)
        return out

    def l0_r(x):
        out = {}
        for (x1, x2), a in h.cop(x):
            for (l, r), c in lt(x2):
                for k, d in h.S(x1).items():
                    _acc(out, (l, r, k), a * c * d)
        return out

    rep.equal("l0", formula_map([H], [X, X, H], l0_l, F), formula_map([H], [X, X, H], l0_r, F))
    T = g.tensor_sq

    def alr(a):
        out = {}
        for (a0, a1, a2), x in A.coact(a, 2):
            be = h.be(a1)
            if not be:
                continue
            for (l, r), c in lt(a2):
                for k, z in A.mul(a0, l).items():
                    _acc(out, (k, r), x * be * c * z)
        return T.cls(out)

    rep.equal("alr", formula_map([X], [T.space], alr, F),
              formula_map([X], [T.space], lambda a: T.cls({(i, a): c for i, c in one.items()}), F))
    for M in modules:
        rep.extend(chi_M_check(M, lt, label=getattr(M, "name", "M")))
    return Splitting(th, rep)


def chi_M_check(M, lt, label="M"):
    """chi_M(m) = m_0 beta(m_1) l~(m_2) (x)_B r~(m_2) inverts the counit."""
    A = M.algebra
    h, F = A.host, A.field
    rep = CheckReport("chi_M")
    eps, ind, _ = adjunction_counit(M)
    N, sub, _ = module_coinvariants(M)
    T = ind.balanced
    ok = True

    def fn(m):
        nonlocal ok
        raw = {}
        for (m0, m1, m2), x in M.coact(m, 2):
            be = h.be(m1)
            if not be:
                continue
            for (l, r), c in lt(m2):
                for k, z in M.act(m0, l).items():
                    _acc(raw, (k, r), x * be * c * z)
        # first legs must combine into coinvariants: regroup by r
        by_r = {}
        for (k, r), c in raw.items():
            by_r.setdefault(r, {})[k] = c
        out = {}
        for r, v in by_r.items():
            co = sub.coordinates(v)
            if co is None:
                ok = False
                continue
            for n_, c in co.items():
                _acc(out, (n_, r), c)
        return T.cls(out)

    chi = formula_map([M.space], [T.space], fn, F)
    rep.record(f"chi_M lands in M^coH (x) A ({label})", ok)
    rep.equal(f"chi_M eps = id ({label})", chi @ eps, LinMap.identity(T.space, F))
    rep.equal(f"eps chi_M = id ({label})", eps @ chi, LinMap.identity(M.space, F))
    return rep


# ---------------------------------------------------------------- graded case

def homogeneous_components(A):
    h = A.host
    if not hasattr(h, "group"):
        raise HostNotGroupAlgebra("the host was not built from a group")
    G = h.group
    F = A.field
    comps = {}
    for x in range(G.order):
        tw = formula_map([A.space], [A.space, h.space], lambda a: {(a, x): 1}, F)
        comps[x] = kernel(A.coaction - tw, prefix=f"d{x}_")
    return comps


def strongly_graded_check(A, g=None):
    h = A.host
    comps = homogeneous_components(A)
    G = h.group
    F = A.field
    rep = CheckReport("strongly graded")

    def span_products(x, y):
        vs = []
        for u in comps[x].basis_vectors:
            for v in comps[y].basis_vectors:
                vs.append(A.mul(u, v))
        from .exactlin import Subspace
        return Subspace.span(A.space, vs, F) if vs else None

    e = G.identity
    strong = True
    # dim of A_g A_g^-1 against dim A_e, per degree
    rep.components = {}
    for x in range(G.order):
        sp = span_products(x, G.inverse[x])
        d = sp.dim if sp else 0
        strong &= d == comps[e].dim
        rep.components[G.labels[x]] = (d, comps[e].dim)
    full = True
    for x in range(G.order):
        for y in range(G.order):
            sp = span_products(x, y)
            z = G.mul(x, y)
            d = sp.dim if sp else 0
            full &= d == comps[z].dim
    g = g or build_can(A)
    rep.strongly_graded = strong
    rep.record("A_gh = A_g A_h iff A_g A_g^-1 = A_e", full == strong)
    rep.record("strongly graded iff Galois", strong == g.galois,
               detail=f"strongly graded={strong}, {g.summary()}")
    return rep


# ---------------------------------------------------------------- battery

def free_basis_search(A, side="left", seed=None, tries=64):
    """Elements x_1..x_r with (b_i, j) -> b_i x_j (or x_j b_i) a basis of A, or None."""
    B = A.coinvariants()
    F = A.field
    dA, dB = A.dim, B.dim
    if dA % dB:
        return None
    r = dA // dB
    rng = random.Random(default_seed() if seed is None else seed)
    basis = [{i: 1} for i in range(dA)]
    for _ in range(tries):
        xs = [_random_vector(basis, rng, F) for _ in range(r)]
        cols = []
        for b in range(dB):
            for x in xs:
                cols.append(A.mul(B.vec(b), x) if side == "left" else A.mul(x, B.vec(b)))
        m = LinMap(BasedSpace.numbered(dA, "f"), A.space, cols, F)
        if is_bijective(m):
            return xs
    return None


class GaloisReport:
    def __init__(self, conditions, report, flatness):
        self.conditions = conditions
        self.report = report
        self.flatness = flatness

    @property
    def consistent(self):
        vals = {v for v in self.conditions.values() if v is not None}
        return len(vals) <= 1

    def to_dict(self):
        return {"conditions": dict(self.conditions), "flatness": self.flatness,
                "consistent": self.consistent, "report": self.report.to_dict()}


def flatness_status(A):
    """"B = k", "free" (a left B-basis was found) or "undetermined"."""
    if A.coinvariants().dim == 1:
        return "B = k"
    if free_basis_search(A, "left") is not None:
        return "free"
    return "undetermined"


def theorem_big_battery(A):
    h = A.host
    h.require_bijective_antipode()
    rep = CheckReport("equivalent Galois conditions")
    g = build_can(A)
    B = A.coinvariants()
    gamma = total_integral_search(A)
    surj = g.rank == g.target_dim
    c1 = gamma is not None and surj
    rep.record("total integral exists", gamma is not None, detail="")
    rep.record("can surjective", surj, detail=g.summary())
    flat = flatness_status(A)
    c45 = (g.galois) if flat != "undetermined" else None
    # proxies: counit on a test set of Hopf modules, unit on a test set of B-modules
    mods = [("A", regular_module(A)), ("B (x)_B A", induce_module(regular_B_module(A), A)),
            ("A (x) H", induced_action_on_AH(A))]
    eps_ok = True
    for name, M in mods:
        eps, _, _ = adjunction_counit(M)
        b = is_bijective(eps)
        rep.record(f"counit bijective on {name}", b)
        eps_ok &= b
    Ns = [("B", regular_B_module(A))]
    if B.dim == 1:
        Ns.append(("k", trivial_B_module(A)))
    unit_ok = True
    for name, N in Ns:
        u, _, _, _ = adjunction_unit(N, A)
        b = is_bijective(u)
        rep.record(f"unit bijective on {name}", b)
        unit_ok &= b
    conditions = {"(1) total integral and can surjective": c1,
                  "(2/3) adjunction bijective on test modules": eps_ok and unit_ok,
                  "(4/5) can bijective and A flat over B": c45}
    gr = GaloisReport(conditions, rep, flat)
    rep.record("conditions consistent", gr.consistent,
               detail=", ".join(f"{k}={v}" for k, v in conditions.items()))
    return gr
