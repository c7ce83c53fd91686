"""The algebra L = (A (x) A^op)^{coH}, its modules, and the tensor product over A
inside the comodule category."""
from __future__ import annotations

from .checks import CheckReport
from .comodule import (RelHopfModule, RightModule, TwoSidedModule, induce_module,
                       module_coinvariants, regular_two_sided, verify_two_sided)
from .coquasi import HostMismatch, terms
from .exactlin import (K, BasedSpace, LinMap, cokernel_quotient, compose, formula_map,
                       is_bijective, kernel, kron, rank, solve, tensor, vec_add)
from .galois import flatness_status, translation_map


class ModuleNotTwoSided(ValueError):
    pass


def _acc(d, k, c):
    if c:
        v = d.get(k, 0) + c
        if v:
            d[k] = v
        else:
            d.pop(k, None)


def codiagonal_coaction(A):
    """a (x) b -> a_0 (x) b_0 (x) a_1 b_1 on A (x) A."""
    h = A.host
    X = A.space

    def co(a, b):
        out = {}
        for (a0, a1), x in A.coact(a):
            for (b0, b1), y in A.coact(b):
                for k, z in h.mul(a1, b1).items():
                    _acc(out, (a0, b0, k), x * y * z)
        return out

    return formula_map([X, X], [X, X, h.space], co, A.field)


class BialgebroidL:
    def __init__(self, algebra, carrier, mult, unit, source, target, report):
        self.algebra = algebra
        self.carrier = carrier
        self.mult = mult
        self.unit = unit
        self.source = source
        self.target = target
        self.report = report
        self.space = carrier.space
        self.dim = carrier.dim
        self.field = algebra.field

    def vec(self, j):
        """Basis element j of L as a vector of A (x) A."""
        return self.carrier.basis_vectors[j]

    def mul(self, x, y):
        out = {}
        d = self.dim
        for i, a in terms(x):
            for j, b in terms(y):
                vec_add(out, self.mult.cols[i * d + j], a * b)
        return out

    def elements(self, j):
        """Basis element j as a list of ((a, b), c)."""
        dA = self.algebra.dim
        return [(divmod(k, dA), c) for k, c in self.vec(j).items()]


def _raw_L_mult(A):
    h = A.host
    X = A.space

    def m(a, b, c, d):
        out = {}
        for (a0, a1), x in A.coact(a):
            for (b0, b1, b2), y in A.coact(b, 2):
                for (c0, c1, c2), z in A.coact(c, 2):
                    for (d0, d1, d2), u in A.coact(d, 2):
                        w = h.om(c2, d2, b2)
                        if not w:
                            continue
                        w *= h.omi(a1, c1, h.mul(d1, b1))
                        if not w:
                            continue
                        for i, p in A.mul(a0, c0).items():
                            for j, q in A.mul(d0, b0).items():
                                _acc(out, (i, j), x * y * z * u * w * p * q)
        return out

    return formula_map([X, X, X, X], [X, X], m, A.field)


def build_L(A):
    rep = CheckReport("bialgebroid L")
    h, F = A.host, A.field
    X = A.space
    XX = tensor(X, X)
    co = codiagonal_coaction(A)
    triv = formula_map([X, X], [X, X, h.space],
                       lambda a, b: {(a, b, k): c for k, c in h.unit.items()}, F)
    diff = LinMap(XX, co.codomain, co.cols, F) - LinMap(XX, co.codomain, triv.cols, F)
    sub = kernel(diff, prefix="l")
    I = sub.inclusion
    raw = LinMap(tensor(XX, XX), XX, _raw_L_mult(A).cols, F)
    prod = compose(raw, kron(I, I))
    rep.record("multiplication lands in L", sub.contains_image(prod))
    mult = compose(sub.projection, prod)
    mult = LinMap(tensor(sub.space, sub.space), sub.space, mult.cols, F)
    one = {}
    for i, x in A.one.items():
        for j, y in A.one.items():
            _acc(one, i * A.dim + j, x * y)
    rep.record("unit in L", sub.contains(one))
    u = sub.coordinates(one) or {}
    L = sub.space
    idL = LinMap.identity(L, F)
    rep.equal("L associative", compose(mult, kron(mult, idL)), compose(mult, kron(idL, mult)))
    uL = LinMap(K, L, [u], F)
    rep.equal("L unit left", compose(mult, kron(uL, idL)), idL)
    rep.equal("L unit right", compose(mult, kron(idL, uL)), idL)

    B = A.coinvariants()
    s_raw, t_raw = [], []
    for b in range(B.dim):
        s_v, t_v = {}, {}
        for i, x in B.vec(b).items():
            for j, y in A.one.items():
                _acc(s_v, i * A.dim + j, x * y)
                _acc(t_v, j * A.dim + i, x * y)
        s_raw.append(s_v)
        t_raw.append(t_v)
    rep.record("source in L", all(sub.contains(v) for v in s_raw))
    rep.record("target in L", all(sub.contains(v) for v in t_raw))
    source = LinMap(B.space, L, [sub.coordinates(v) or {} for v in s_raw], F)
    target = LinMap(B.space, L, [sub.coordinates(v) or {} for v in t_raw], F)
    lobj = BialgebroidL(A, sub, mult, u, source, target, rep)
    rep.equal("source multiplicative", compose(source, B.induced_mult),
              compose(mult, kron(source, source)))
    # B^op: t(b b') = t(b') t(b)
    swap = formula_map([B.space, B.space], [B.space, B.space], lambda i, j: {(j, i): 1}, F)
    rep.equal("target anti-multiplicative", compose(target, B.induced_mult),
              compose(mult, compose(kron(target, target), swap)))
    rep.equal("source and target commute", compose(mult, kron(source, target)),
              compose(mult, compose(kron(target, source), swap)))
    rep.record("unit of B maps to unit of L",
               source.apply(B.one) == u and target.apply(B.one) == u)
    return lobj


# ---------------------------------------------------------------- L-modules

class LModule:
    """A left L-module; action L (x) N -> N."""

    def __init__(self, l, space, action, name="N"):
        self.L = l
        self.space = space
        self.action = action
        self.dim = space.dim
        self.field = l.field
        self.name = name

    def act(self, z, n):
        out = {}
        d = self.dim
        for i, a in terms(z):
            for j, b in terms(n):
                vec_add(out, self.action.cols[i * d + j], a * b)
        return out

    def as_B_module(self):
        """n.b = t(b) n."""
        B = self.L.algebra.coinvariants()
        F = self.field
        cols = []
        for n in range(self.dim):
            for b in range(B.dim):
                cols.append(self.act(self.L.target.cols[b], n))
        N = RightModule(B, self.space, LinMap(tensor(self.space, B.space), self.space, cols, F),
                        name=self.name)
        N.L_module = self
        return N


def verify_L_module(N, rep=None):
    rep = rep or CheckReport("L-module")
    l, F = N.L, N.field
    idN = LinMap.identity(N.space, F)
    idL = LinMap.identity(l.space, F)
    rep.equal("L-module associativity", compose(N.action, kron(idL, N.action)),
              compose(N.action, kron(l.mult, idN)))
    u = LinMap(K, l.space, [l.unit], F)
    rep.equal("L-module unit", compose(N.action, kron(u, idN)), idN)
    return rep


def coinvariants_L_action(l, M):
    """M^{coH} for a two-sided Hopf module M, with (a (x) b) m = a(mb)."""
    if not isinstance(M, TwoSidedModule):
        raise ModuleNotTwoSided("expected a two-sided Hopf module")
    if M.algebra is not l.algebra:
        raise HostMismatch("module and L live over different algebras")
    rep = CheckReport("coinvariants L-action")
    Nr, sub, r2 = module_coinvariants(M.right)
    rep.extend(r2)
    F = M.field
    cols, lefts, rights = [], [], []
    for z in range(l.dim):
        for j in range(sub.dim):
            m = sub.basis_vectors[j]
            v1, v2 = {}, {}
            for (a, b), c in l.elements(z):
                vec_add(v1, M.lact(a, M.ract(m, b)), c)
                vec_add(v2, M.ract(M.lact(a, m), b), c)
            lefts.append(v1)
            rights.append(v2)
    rep.record("a(mb) = (am)b on coinvariants", lefts == rights)
    rep.record("L-action lands in coinvariants", all(sub.contains(v) for v in lefts))
    cols = [sub.coordinates(v) or {} for v in lefts]
    N = LModule(l, sub.space, LinMap(tensor(l.space, sub.space), sub.space, cols, F), name="M^coH")
    N.subspace = sub
    N.ambient = M
    verify_L_module(N, rep)
    N.report = rep
    return N


# ---------------------------------------------------------------- induced two-sided module

def _AA_tensor_B_A(A):
    """(A (x) A) (x)_B A, with B acting on the right of the second factor."""
    B = A.coinvariants()
    X = A.space
    F = A.field

    def rel(x, y, b, r):
        out = {}
        for k, c in A.mul(y, B.vec(b)).items():
            _acc(out, (x, k, r), c)
        for k, c in A.mul(B.vec(b), r).items():
            _acc(out, (x, y, k), -c)
        return out

    R = formula_map([X, X, B.space, X], [X, X, X], rel, F)
    return cokernel_quotient(R)


def induced_left_action(g, N):
    """N (x)_B A as a two-sided Hopf module, for a left L-module N.

    a.(n (x) b) = [a_0 (x) b_0 omega(a_1, b_1, beta(a_2 b_2) S(a_3 b_3)) l_i(a_4 b_4)] n (x) r_i(a_4 b_4)
    """
    g.require()
    A, h, F = g.algebra, g.host, g.algebra.field
    h.require_bijective_antipode()
    l = N.L
    if l.algebra is not A:
        raise HostMismatch("L was built over another algebra")
    rep = CheckReport("induced two-sided module")
    # left faithful flatness is only certified for B = k or A free over B
    flat = flatness_status(A)
    rep.flatness = flat
    rep.conditional = flat == "undetermined"
    tm = translation_map(g)
    X = A.space
    dA = A.dim
    NB = N.as_B_module()
    M = induce_module(NB, A)
    rep.extend(M.report)
    T = M.balanced
    Q, qproj, _ = _AA_tensor_B_A(A)

    # the element sum [a_0 (x) b_0 ... l_i] (x) r_i of (A (x) A) (x) A
    def z_elem(a, b):
        out = {}
        for (a0, a1, a2, a3, a4), x in A.coact(a, 4):
            for (b0, b1, b2, b3, b4), y in A.coact(b, 4):
                p2 = h.mul(a2, b2)
                be = h.be(p2)
                if not be:
                    continue
                w = be * h.om(a1, b1, h.S(h.mul(a3, b3)))
                if not w:
                    continue
                for (li, ri), c in tm.terms(h.mul(a4, b4)):
                    for k, v in A.mul(b0, li).items():
                        _acc(out, (a0, k, ri), x * y * w * c * v)
        return out

    Z = formula_map([X, X], [X, X, X], z_elem, F)
    ZQ = compose(qproj, Z)
    # coinvariance of the class under the coaction on A (x) A
    co = codiagonal_coaction(A)
    idX = LinMap.identity(X, F)
    H = h.space
    perm = formula_map([X, X, H, X], [X, X, X, H], lambda x, y, k, r: {(x, y, r, k): 1}, F)
    co3 = compose(perm, kron(LinMap(tensor(X, X), co.codomain, co.cols, F), idX))
    QH, qhproj, _ = cokernel_quotient(_relations_with_H(A))
    triv = formula_map([X, X, X], [X, X, X, H],
                       lambda x, y, r: {(x, y, r, k): c for k, c in h.unit.items()}, F)
    rep.equal("translation element coinvariant",
              compose(qhproj, compose(co3, Z)), compose(qhproj, compose(triv, Z)))
    # lift each class into L (x) A, then act on N
    I = l.carrier.inclusion
    embed = compose(qproj, LinMap(tensor(l.space, X), tensor(X, X, X),
                                  kron(I, idX).cols, F))
    lifts = []
    ok = True
    for col in range(dA * dA):
        s = solve(embed, ZQ.cols[col])
        if s is None:
            ok = False
            lifts.append({})
        else:
            lifts.append(s)
    rep.record("translation element lifts to L (x)_B A", ok)

    def apply(w, n):
        out = {}
        for k, c in w.items():
            z, r = divmod(k, dA)
            for n2, v in N.act({z: 1}, n).items():
                _acc(out, n2 * dA + r, c * v)
        return out

    # independence of the lift: the kernel of embed must act trivially
    Kr = kernel(embed)
    rep.record("action independent of the lift",
               all(T.proj.apply(apply(v, n)) == {} for v in Kr.basis_vectors for n in range(N.dim)))

    def odot(a, n, b):
        return T.proj.apply(apply(lifts[a * dA + b], n))

    raw = formula_map([X, N.space, X], [T.space], odot, F)
    idA = LinMap.identity(X, F)
    rep.record("left action well defined",
               compose(raw, kron(idA, T.relations)).is_zero())
    left = compose(raw, kron(idA, T.sect))
    left = LinMap(tensor(X, T.space), T.space, left.cols, F)
    TM = TwoSidedModule(A, T.space, M.coaction, left, M.action)
    TM.balanced = T
    TM.base = N
    rep.extend(verify_two_sided(TM))
    TM.report = rep
    return TM


def _relations_with_H(A):
    """Relations of ((A (x) A) (x)_B A) (x) H."""
    B = A.coinvariants()
    X, H = A.space, A.host.space

    def rel(x, y, b, r, k):
        out = {}
        for j, c in A.mul(y, B.vec(b)).items():
            _acc(out, (x, j, r, k), c)
        for j, c in A.mul(B.vec(b), r).items():
            _acc(out, (x, y, j, k), -c)
        return out

    return formula_map([X, X, B.space, X, H], [X, X, X, H], rel, A.field)


# ---------------------------------------------------------------- tensor over A

class MonoidalTensorA:
    def __init__(self, left, right, space, proj, sect, coaction, report):
        self.left = left
        self.right = right
        self.space = space
        self.proj = proj
        self.sect = sect
        self.coaction = coaction
        self.report = report
        self.dim = space.dim


def tensor_over_A(M, M2):
    """M o_A M2: the coequalizer of j_1, j_2 : (M (x) A) (x) M2 -> M (x) M2,

    j_1((x (x) a) (x) y) = xa (x) y,  j_2((x (x) a) (x) y) = x_0 (x) a_0 y_0 omega(x_1, a_1, y_1).
    """
    if M.host is not M2.host or M.algebra is not M2.algebra:
        raise HostMismatch("the modules live over different algebras")
    rep = CheckReport("tensor over A")
    A, h, F = M.algebra, M.host, M.field
    X, Y = M.space, M2.space

    rel = _tensor_relations(M, M2)
    space, proj, sect = cokernel_quotient(rel)

    def co(x, y):
        out = {}
        for (x0, x1), c in M.coact(x):
            for (y0, y1), e in M2.coact(y):
                for k, v in h.mul(x1, y1).items():
                    _acc(out, (x0, y0, k), c * e * v)
        return out

    raw_co = formula_map([X, Y], [X, Y, h.space], co, F)
    idH = LinMap.identity(h.space, F)
    pH = kron(proj, idH)
    rep.record("coaction descends", compose(pH, compose(raw_co, rel)).is_zero())
    coaction = LinMap(space, tensor(space, h.space), compose(pH, compose(raw_co, sect)).cols, F)
    return MonoidalTensorA(M, M2, space, proj, sect, coaction, rep)


def _balanced_B(N, M2):
    """N (x)_B M2 for a right B-module N and a left relative Hopf module M2."""
    A = M2.algebra
    B = A.coinvariants()
    X, Y = N.space, M2.space

    def rel(n, b, m):
        out = {}
        for k, c in N.act(n, b).items():
            _acc(out, (k, m), c)
        for k, c in M2.act(m, B.vec(b)).items():
            _acc(out, (n, k), -c)
        return out

    return cokernel_quotient(formula_map([X, B.space, Y], [X, Y], rel, A.field))


def lemma_iso(N, M2, ind=None):
    """(N (x)_B A) o_A M2 -> N (x)_B M2, (n (x) a) (x) m -> n (x) am; checks it is a colinear iso."""
    A = M2.algebra
    h, F = A.host, A.field
    rep = CheckReport("tensor lemma")
    ind = ind or induce_module(N, A)
    R = ind if isinstance(ind, RelHopfModule) else ind.right
    T = ind.balanced
    Q = tensor_over_A(R, M2)
    rep.extend(Q.report)
    space, proj, sect = _balanced_B(N, M2)

    def phi(t, m):
        out = {}
        for k, c in T.sect.cols[t].items():
            n, a = divmod(k, A.dim)
            for m2, v in M2.act(m, a).items():
                _acc(out, n * M2.dim + m2, c * v)
        return proj.apply(out)

    raw = formula_map([T.space, M2.space], [space], phi, F)
    rep.record("phi j1 = phi j2", compose(raw, _tensor_relations(R, M2)).is_zero())
    iso = LinMap(Q.space, space, compose(raw, Q.sect).cols, F)
    rep.record("phi bijective", is_bijective(iso), detail=f"{Q.dim} -> {space.dim}")
    # coaction on N (x)_B M2 comes from M2
    def co(n, m):
        out = {}
        for (m0, m1), c in M2.coact(m):
            _acc(out, (n, m0, m1), c)
        return out

    idH = LinMap.identity(h.space, F)
    raw_co = formula_map([N.space, M2.space], [N.space, M2.space, h.space], co, F)
    co_T = compose(kron(proj, idH), compose(raw_co, sect))
    rep.equal("phi colinear", compose(co_T, iso), compose(kron(iso, idH), Q.coaction))
    return iso, Q, rep


def _tensor_relations(M, M2):
    A, h, F = M.algebra, M.host, M.field

    def j12(x, a, y):
        out = {}
        for k, c in M.act(x, a).items():
            _acc(out, (k, y), c)
        for (x0, x1), c in M.coact(x):
            for (a0, a1), d in A.coact(a):
                for (y0, y1), e in M2.coact(y):
                    w = h.om(x1, a1, y1)
                    if w:
                        for k, v in M2.act(y0, a0).items():
                            _acc(out, (x0, k), -c * d * e * w * v)
        return out

    return formula_map([M.space, A.space, M2.space], [M.space, M2.space], j12, F)


# ---------------------------------------------------------------- the equivalence

def equivalence_round_trip(l, g, modules=(), two_sided=()):
    """Unit and counit of L-Mod ~ two-sided Hopf modules on the supplied objects."""
    rep = CheckReport("L-module equivalence")
    A, F = g.algebra, g.algebra.field
    if not two_sided:
        two_sided = [regular_two_sided(A)]
    if not modules:
        modules = [coinvariants_L_action(l, M) for M in two_sided]
    for N in modules:
        tag = N.name
        M = induced_left_action(g, N)
        rep.record(f"{tag}: induced module two-sided", M.report.ok)
        C = coinvariants_L_action(l, M)
        rep.record(f"{tag}: coinvariants L-module", C.report.ok)
        T = M.balanced
        sub = C.subspace
        raw = [T.cls({(n, a): c for a, c in A.one.items()}) for n in range(N.dim)]
        rep.record(f"{tag}: unit lands in coinvariants", all(sub.contains(v) for v in raw))
        u = LinMap(N.space, C.space, [sub.coordinates(v) or {} for v in raw], F)
        rep.record(f"{tag}: unit bijective", is_bijective(u))
        rep.equal(f"{tag}: unit L-linear", compose(u, N.action),
                  compose(C.action, kron(LinMap.identity(l.space, F), u)))
    for k, M in enumerate(two_sided):
        tag = f"M{k}"
        N = coinvariants_L_action(l, M)
        Mi = induced_left_action(g, N)
        T = Mi.balanced
        sub = N.subspace
        eps = formula_map([N.space, A.space], [M.space],
                          lambda n, a: M.ract(sub.basis_vectors[n], a), F)
        rep.record(f"{tag}: counit well defined", T.kills_relations(eps))
        e = LinMap(T.space, M.space, T.descend(eps).cols, F)
        rep.record(f"{tag}: counit bijective", is_bijective(e))
        idA = LinMap.identity(A.space, F)
        rep.equal(f"{tag}: counit right A-linear", compose(e, Mi.right.action),
                  compose(M.right.action, kron(e, idA)))
        rep.equal(f"{tag}: counit left A-linear", compose(e, Mi.left.action),
                  compose(M.left.action, kron(idA, e)))
        idH = LinMap.identity(A.host.space, F)
        rep.equal(f"{tag}: counit colinear", compose(M.coaction, e), compose(kron(e, idH), Mi.coaction))
    # monoidal comparison: (N (x)_B A) o_A (N' (x)_B A) against N (x)_B (N' (x)_B A)
    for N in modules[:1]:
        Mi = induced_left_action(g, N)
        left_mod = Mi.left
        _, Q, r2 = lemma_iso(N.as_B_module(), left_mod, ind=Mi)
        rep.record("lemma iso on induced two-sided modules", r2.ok,
                   detail=", ".join(c.name for c in r2.failures()))
    return rep
