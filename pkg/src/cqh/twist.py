"""Gauge twists of coquasi-Hopf algebras and comodule algebras, and the
Drinfeld twist f measuring how far S is from an anti-algebra map."""
from __future__ import annotations

from .checks import CheckReport, VerificationFailed
from .coquasi import (CoquasiHopf, HostMismatch, convolution, convolution_inverse,
                      functional_values, tensor_power, terms)
from .exactlin import LinMap, formula_map, tensor, vec_add


class Pairing:
    """A functional on H (x) H evaluated on basis indices or vectors."""

    def __init__(self, n, values):
        self.n = n
        self.values = values

    def __call__(self, x, y):
        n, vals = self.n, self.values
        if type(x) is int and type(y) is int:
            return vals[x * n + y]
        s = 0
        for i, a in terms(x):
            for j, b in terms(y):
                v = vals[i * n + j]
                if v:
                    s += a * b * v
        return s


class GaugeTwist:
    def __init__(self, host, tau, tau_inv=None):
        self.host = host
        self.field = host.field
        n = host.dim
        if tau.shape != (1, n * n):
            raise ValueError("a twist is a functional on H (x) H")
        self.square = tensor_power(host, 2)
        if tau_inv is None:
            tau_inv = convolution_inverse(tau, self.square)
            if tau_inv is None:
                raise ValueError("the twist is not convolution invertible")
        self.tau = tau
        self.tau_inv = tau_inv
        self.t = Pairing(n, functional_values(tau))
        self.ti = Pairing(n, functional_values(tau_inv))

    @classmethod
    def trivial(cls, host):
        n = host.dim
        e = host.eps_values
        vals = [e[i] * e[j] for i in range(n) for j in range(n)]
        from .coquasi import functional
        tau = functional(tensor(host.space, host.space), vals, host.field)
        return cls(host, tau, tau)

    @classmethod
    def from_values(cls, host, values):
        """values: dict (i, j) -> scalar, zero elsewhere."""
        from .coquasi import functional
        n = host.dim
        vals = [0] * (n * n)
        for (i, j), c in values.items():
            vals[i * n + j] = host.field(c)
        return cls(host, functional(tensor(host.space, host.space), vals, host.field))

    def inverse_on(self, twisted):
        """tau^{-1} seen as a twist of the twisted algebra."""
        return GaugeTwist(twisted, self.tau_inv, self.tau)


def verify_twist(t):
    rep = CheckReport("gauge twist")
    sq = t.square
    rep.equal("twist convolution inverse", convolution(t.tau, t.tau_inv, sq), sq.counit)
    rep.equal("twist convolution inverse (left)", convolution(t.tau_inv, t.tau, sq), sq.counit)
    h = t.host
    H, F = h.space, h.field
    u = h.unit
    rep.equal("twist normalization left", formula_map([H], [], lambda x: {(): t.t(u, x)}, F),
              h.counit)
    rep.equal("twist normalization right", formula_map([H], [], lambda x: {(): t.t(x, u)}, F),
              h.counit)
    return rep


def twist_bialgebra(h, t):
    """H_tau with the twisted product, reassociator, alpha and beta."""
    if t.host is not h and not (t.host.dim == h.dim and t.host.comult == h.comult
                                and t.host.mult == h.mult):
        raise HostMismatch("the twist lives on another coquasi-bialgebra")
    H, F = h.space, h.field
    T, Ti = t.t, t.ti

    def mult(x, y):
        out = {}
        for (x1, x2, x3), a in h.cop(x, 3):
            for (y1, y2, y3), b in h.cop(y, 3):
                w = T(x1, y1)
                if w:
                    w *= Ti(x3, y3)
                    if w:
                        vec_add(out, h.mul(x2, y2), a * b * w)
        return out

    def omega(x, y, z):
        s = 0
        for (x1, x2, x3, x4), a in h.cop(x, 4):
            for (y1, y2, y3, y4, y5), b in h.cop(y, 5):
                for (z1, z2, z3, z4), c in h.cop(z, 4):
                    w = T(y1, z1)
                    if not w:
                        continue
                    w *= T(x1, h.mul(y2, z2))
                    if not w:
                        continue
                    w *= h.om(x2, y3, z3)
                    if not w:
                        continue
                    w *= Ti(h.mul(x3, y4), z4) * Ti(x4, y5)
                    if w:
                        s += a * b * c * w
        return {(): s}

    def alpha(x):
        s = 0
        for (x1, x2, x3), a in h.cop(x, 3):
            al = h.al(x2)
            if al:
                s += a * al * Ti(h.S(x1), x3)
        return {(): s}

    def beta(x):
        s = 0
        for (x1, x2, x3), a in h.cop(x, 3):
            be = h.be(x2)
            if be:
                s += a * be * T(x1, h.S(x3))
        return {(): s}

    m = formula_map([H, H], [H], mult, F)
    m = LinMap(tensor(H, H), H, m.cols, F)
    om = formula_map([H, H, H], [], omega, F)
    return CoquasiHopf(H, h.comult, h.counit, m, h.unit, om, h.antipode,
                       formula_map([H], [], alpha, F), formula_map([H], [], beta, F),
                       antipode_inv=h.antipode_inv)


def twist_comodule_algebra(A, t, twisted_host=None):
    """A_{tau^{-1}}: a . b = a_0 b_0 tau^{-1}(a_1, b_1), over H_tau."""
    from .comodule import ComoduleAlgebra
    h = A.host
    if t.host is not h and not (t.host.dim == h.dim and t.host.mult == h.mult):
        raise HostMismatch("the twist lives on another coquasi-bialgebra")
    Ht = twisted_host or twist_bialgebra(h, t)
    X, F = A.space, A.field

    def mult(a, b):
        out = {}
        for (a0, a1), x in A.coact(a):
            for (b0, b1), y in A.coact(b):
                w = t.ti(a1, b1)
                if w:
                    vec_add(out, A.mul(a0, b0), x * y * w)
        return out

    m = formula_map([X, X], [X], mult, F)
    m = LinMap(tensor(X, X), X, m.cols, F)
    return ComoduleAlgebra(Ht, X, A.coaction, m, A.one)


# ---------------------------------------------------------------- monoidal isomorphism

def tensor_comodule(U, V, host=None):
    """U (x) V with the codiagonal coaction u_0 (x) v_0 (x) u_1 v_1."""
    from .comodule import Comodule
    h = host or U.host
    F = h.field
    X = tensor(U.space, V.space)

    def co(u, v):
        out = {}
        for (u0, u1), a in U.coact(u):
            for (v0, v1), b in V.coact(v):
                for k, c in h.mul(u1, v1).items():
                    key = (u0, v0, k)
                    out[key] = out.get(key, 0) + a * b * c
        return out

    cm = formula_map([U.space, V.space], [U.space, V.space, h.space], co, F)
    return Comodule(h, X, LinMap(X, tensor(X, h.space), cm.cols, F))


def associator_map(U, V, W, host=None):
    """phi((u (x) v) (x) w) = u_0 (x) (v_0 (x) w_0) omega(u_1, v_1, w_1)."""
    h = host or U.host

    def phi(u, v, w):
        out = {}
        for (u0, u1), a in U.coact(u):
            for (v0, v1), b in V.coact(v):
                for (w0, w1), c in W.coact(w):
                    x = h.om(u1, v1, w1)
                    if x:
                        out[(u0, v0, w0)] = out.get((u0, v0, w0), 0) + a * b * c * x
        return out

    return formula_map([U.space, V.space, W.space], [U.space, V.space, W.space], phi, h.field)


def monoidal_iso_check(U, V, W, t, twisted_host=None):
    """Instance check that v (x) w -> v_0 (x) w_0 tau^{-1}(v_1, w_1) is a monoidal
    structure for the identity functor from H-comodules to H_tau-comodules."""
    from .comodule import Comodule
    from .exactlin import compose, kron
    h = t.host
    Ht = twisted_host or twist_bialgebra(h, t)
    F = h.field
    rep = CheckReport("monoidal isomorphism")

    def Phi(P, Q):
        def fn(p, q):
            out = {}
            for (p0, p1), a in P.coact(p):
                for (q0, q1), b in Q.coact(q):
                    w = t.ti(p1, q1)
                    if w:
                        out[(p0, q0)] = out.get((p0, q0), 0) + a * b * w
            return out
        return formula_map([P.space, Q.space], [P.space, Q.space], fn, F)

    def over(M, host):
        return Comodule(host, M.space, M.coaction)

    Ut, Vt, Wt = over(U, Ht), over(V, Ht), over(W, Ht)
    UV, VW = tensor_comodule(U, V, h), tensor_comodule(V, W, h)
    UVt = tensor_comodule(Ut, Vt, Ht)
    idH = LinMap.identity(h.space, F)
    P = Phi(U, V)
    rep.equal("monoidal iso colinear", compose(UV.coaction, P), compose(kron(P, idH), UVt.coaction))
    idU = LinMap.identity(U.space, F)
    idW = LinMap.identity(W.space, F)
    lhs = compose(associator_map(U, V, W, h), compose(Phi(UV, W), kron(P, idW)))
    rhs = compose(Phi(U, VW), compose(kron(idU, Phi(V, W)), associator_map(Ut, Vt, Wt, Ht)))
    rep.equal("monoidal iso associator", lhs, rhs)
    return rep


# ---------------------------------------------------------------- Drinfeld twist

class DrinfeldTwistData:
    def __init__(self, host, p, q, f, f_tilde, report, ul_variants):
        self.host = host
        self.p = p
        self.q = q
        self.f = f
        self.f_tilde = f_tilde
        self.report = report
        self.ul_variants = ul_variants


UL_VARIANTS = ("inv/inv", "plain/inv", "inv/plain", "plain/plain")


def drinfeld_pieces(h):
    """p, q and f as functionals on H (x) H."""
    H, F = h.space, h.field

    def p_(x, y):
        s = 0
        for (x1, x2, x3, x4, x5), a in h.cop(x, 5):
            al = h.al(x3)
            if not al:
                continue
            for (y1, y2, y3, y4), b in h.cop(y, 4):
                w = al * h.al(y3)
                if not w:
                    continue
                w *= h.om(h.S(y2), h.S(x2), x4)
                if w:
                    w *= h.omi(h.mul(h.S(y1), h.S(x1)), x5, y4)
                    if w:
                        s += a * b * w
        return {(): s}

    def q_(x, y):
        s = 0
        for (x1, x2, x3, x4), a in h.cop(x, 4):
            be = h.be(x3)
            if not be:
                continue
            for (y1, y2, y3, y4, y5), b in h.cop(y, 5):
                w = be * h.be(y3)
                if not w:
                    continue
                w *= h.om(h.mul(x1, y1), h.S(y5), h.S(x4))
                if w:
                    w *= h.omi(x2, y2, h.S(y4))
                    if w:
                        s += a * b * w
        return {(): s}

    p = formula_map([H, H], [], p_, F)
    P = Pairing(h.dim, functional_values(p))

    def f_(x, y):
        s = 0
        for (x1, x2, x3, x4, x5), a in h.cop(x, 5):
            for (y1, y2, y3, y4, y5), b in h.cop(y, 5):
                w = h.be(h.mul(x4, y4))
                if not w:
                    continue
                w *= P(x2, y2)
                if not w:
                    continue
                w *= h.omi(h.mul(h.S(y1), h.S(x1)), h.mul(x3, y3), h.S(h.mul(x5, y5)))
                if w:
                    s += a * b * w
        return {(): s}

    return p, formula_map([H, H], [], q_, F), formula_map([H, H], [], f_, F)


def drinfeld_twist(h, strict=True):
    H, F = h.space, h.field
    rep = CheckReport("drinfeld twist")
    p, q, fmap = drinfeld_pieces(h)
    P = Pairing(h.dim, functional_values(p))
    Q = Pairing(h.dim, functional_values(q))
    finv = convolution_inverse(fmap, tensor_power(h, 2))
    rep.record("f convolution invertible", finv is not None)
    if finv is None:
        if strict:
            raise VerificationFailed("f convolution invertible", rep)
        return DrinfeldTwistData(h, p, q, None, None, rep, {})
    f = GaugeTwist(h, fmap, finv)
    for c in verify_twist(f):
        rep.record("f " + c.name, c.passed, c.witness)
    fv, fi = f.t, f.ti

    def twf_l(x, y):
        out = {}
        for (x1, x2), a in h.cop(x):
            for (y1, y2), b in h.cop(y):
                w = fv(x1, y1)
                if w:
                    vec_add(out, h.S(h.mul(x2, y2)), a * b * w)
        return out

    def twf_r(x, y):
        out = {}
        for (x1, x2), a in h.cop(x):
            for (y1, y2), b in h.cop(y):
                w = fv(x2, y2)
                if w:
                    vec_add(out, h.mul(h.S(y1), h.S(x1)), a * b * w)
        return out

    rep.equal("twist f", formula_map([H, H], [H], twf_l, F), formula_map([H, H], [H], twf_r, F))

    def fa(x, y):
        s = 0
        for (x1, x2), a in h.cop(x):
            for (y1, y2), b in h.cop(y):
                w = fv(x1, y1)
                if w:
                    s += a * b * w * h.al(h.mul(x2, y2))
        return {(): s}

    rep.equal("f*alfa=gama, beta*f-1=delta", formula_map([H, H], [], fa, F), p)

    def bf(x, y):
        s = 0
        for (x1, x2), a in h.cop(x):
            for (y1, y2), b in h.cop(y):
                w = h.be(h.mul(x1, y1))
                if w:
                    s += a * b * w * fi(x2, y2)
        return {(): s}

    rep.equal("beta*f-1=delta", formula_map([H, H], [], bf, F), q)
    alS = formula_map([H], [], lambda x: {(): h.al(h.S(x))}, F)

    def rel(pair):
        def fn(x):
            s = 0
            for (x1, x2, x3), a in h.cop(x, 3):
                be = h.be(x2)
                if be:
                    s += a * be * pair(x1, h.S(x3))
            return {(): s}
        return formula_map([H], [], fn, F)

    rep.equal("relatie p", rel(P), alS)
    rep.equal("relatie f", rel(fv), alS)
    variants = {}
    f_tilde = None
    if h.antipode_inv is not None:
        Si = h.Sinv

        def ul_left(X):
            def fn(x, y):
                s = 0
                for (x1, x2), a in h.cop(x):
                    for (y1, y2, y3, y4), b in h.cop(y, 4):
                        al = h.al(Si(y3))
                        if not al:
                            continue
                        w = fi(Si(y1), Si(x1))
                        if w:
                            s += a * b * al * w * X(y4, Si(y2), Si(x2))
                return {(): s}
            return formula_map([H, H], [], fn, F)

        def ul_right(Y):
            def fn(x, y):
                s = 0
                for (x1, x2), a in h.cop(x):
                    for (y1, y2, y3, y4, y5), b in h.cop(y, 5):
                        be = h.be(y3)
                        if not be:
                            continue
                        w = fv(y5, Si(h.mul(x1, y1)))
                        if w:
                            s += a * b * be * w * Y(x2, y2, h.S(y4))
                return {(): s}
            return formula_map([H, H], [], fn, F)

        lefts = {"inv": ul_left(h.omi), "plain": ul_left(h.om)}
        rights = {"inv": ul_right(h.omi), "plain": ul_right(h.om)}
        for name in UL_VARIANTS:
            l, r = name.split("/")
            variants[name] = lefts[l] == rights[r]
        rep.equal("relatie UL pR h", lefts["inv"], rights["inv"],
                  detail="variants holding: " + ",".join(k for k, v in variants.items() if v))

        def ft(x, y):
            return {(): fv(Si(y), Si(x))}

        def fti(x, y):
            return {(): fi(Si(y), Si(x))}

        f_tilde = GaugeTwist(h, formula_map([H, H], [], ft, F), formula_map([H, H], [], fti, F))
        for c in verify_twist(f_tilde):
            rep.record("twist h " + c.name.replace("twist ", ""), c.passed, c.witness)
        tv = f_tilde.t

        def hd_l(x, y):
            out = {}
            for (x1, x2), a in h.cop(x):
                for (y1, y2), b in h.cop(y):
                    w = tv(x1, y1)
                    if w:
                        vec_add(out, Si(h.mul(x2, y2)), a * b * w)
            return out

        def hd_r(x, y):
            out = {}
            for (x1, x2), a in h.cop(x):
                for (y1, y2), b in h.cop(y):
                    w = tv(x2, y2)
                    if w:
                        vec_add(out, h.mul(Si(y1), Si(x1)), a * b * w)
            return out

        rep.equal("hdeltaS-1(a)h-1=S-1tensorS-1(delta cop(a))",
                  formula_map([H, H], [H], hd_l, F), formula_map([H, H], [H], hd_r, F))
    data = DrinfeldTwistData(h, p, q, f, f_tilde, rep, variants)
    if strict:
        bad = rep.failures()
        if bad:
            raise VerificationFailed(bad[0].name, rep)
    return data


def twisted_associator_of_f(h, data=None):
    data = data or drinfeld_twist(h)
    rep = CheckReport("twisted associator")
    H, F = h.space, h.field
    Hf = twist_bialgebra(h, data.f)
    rep.equal("omega f", Hf.omega,
              formula_map([H] * 3, [], lambda x, y, z: {(): h.om(h.S(z), h.S(y), h.S(x))}, F))
    if data.f_tilde is not None:
        Ht = twist_bialgebra(h, data.f_tilde)
        Si = h.Sinv
        rep.equal("omega f tilde", Ht.omega,
                  formula_map([H] * 3, [], lambda x, y, z: {(): h.om(Si(z), Si(y), Si(x))}, F))
    return rep
