"""Fixture builders: group coquasi-Hopf algebras from 3-cocycles, graded
comodule algebras, Cayley twists and a few named examples."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .comodule import ComoduleAlgebra, associator_failure, verify_comodule_algebra
from .coquasi import CoquasiHopf, functional
from .exactlin import QQ, BasedSpace, LinMap, formula_map, tensor
from .twist import GaugeTwist, twist_bialgebra, twist_comodule_algebra


class CocycleInvalid(ValueError):
    pass


class GradingViolation(ValueError):
    pass


class QuasiAssociativityFailed(ValueError):
    def __init__(self, witness, report=None):
        super().__init__(f"quasi-associativity fails at {witness}")
        self.witness = witness
        self.report = report


class GroupPresentation:
    def __init__(self, table, labels=None, identity=None):
        n = len(table)
        self.order = n
        self.table = [list(r) for r in table]
        self.labels = list(labels) if labels else [f"x{i}" for i in range(n)]
        if identity is None:
            identity = next((e for e in range(n)
                             if all(self.table[e][x] == x == self.table[x][e] for x in range(n))),
                            None)
            if identity is None:
                raise ValueError("table has no identity")
        self.identity = identity
        inv = [next((y for y in range(n) if self.table[x][y] == identity), None)
               for x in range(n)]
        if None in inv:
            raise ValueError("missing inverse")
        self.inverse = inv
        self._check()

    def _check(self):
        n, t = self.order, self.table
        for x, y, z in itertools.product(range(n), repeat=3):
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise ValueError("table is not associative")
        for x in range(n):
            if t[x][self.inverse[x]] != self.identity or t[self.inverse[x]][x] != self.identity:
                raise ValueError("missing inverse")

    def mul(self, x, y):
        return self.table[x][y]

    @classmethod
    def cyclic(cls, n, labels=None):
        if labels is None:
            labels = ["e", "g"] if n == 2 else ["e"] + [f"g{k}" for k in range(1, n)]
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], labels, 0)

    @classmethod
    def z2_power(cls, n):
        """(Z_2)^n with x = x_1 + 2 x_2 + 4 x_3 + ...; product is xor."""
        m = 2 ** n
        labels = ["e"] + [f"u{x}" for x in range(1, m)]
        return cls([[i ^ j for j in range(m)] for i in range(m)], labels, 0)


class Cocycle3:
    def __init__(self, group, values, field=QQ):
        """values: callable (x, y, z) -> scalar or dict of non-trivial values."""
        self.group = group
        self.field = field
        n = group.order
        if callable(values):
            fn = values
        else:
            fn = lambda x, y, z: values.get((x, y, z), 1)
        self.values = {(x, y, z): field(fn(x, y, z))
                       for x, y, z in itertools.product(range(n), repeat=3)}
        self.validate()

    def __call__(self, x, y, z):
        return self.values[(x, y, z)]

    def validate(self):
        G, w = self.group, self.values
        e = G.identity
        for k, v in w.items():
            if not v:
                raise CocycleInvalid(f"zero value at {k}")
            if e in k and v != 1:
                raise CocycleInvalid(f"not normalized at {k}")
        n, m = G.order, G.mul
        for x, y, z, t in itertools.product(range(n), repeat=4):
            lhs = w[(y, z, t)] * w[(x, m(y, z), t)] * w[(x, y, z)]
            rhs = w[(m(x, y), z, t)] * w[(x, y, m(z, t))]
            if lhs != rhs:
                raise CocycleInvalid(f"cocycle identity fails at {(x, y, z, t)}")

    @classmethod
    def trivial(cls, group, field=QQ):
        return cls(group, {}, field)

    @classmethod
    def coboundary(cls, group, tau, field=QQ):
        """(x, y, z) -> tau(y, z) tau(x, yz) / (tau(xy, z) tau(x, y))."""
        m = group.mul
        F = field

        def fn(x, y, z):
            num = F(tau(y, z)) * F(tau(x, m(y, z)))
            den = F(tau(m(x, y), z)) * F(tau(x, y))
            return F.div(num, den)

        return cls(group, fn, field)


def group_coquasi_hopf(G, w, field=None):
    """kG with Delta(x) = x (x) x, S(x) = x^{-1}, alpha = eps and
    beta(x) = omega^{-1}(x, x^{-1}, x)."""
    F = field or w.field
    n = G.order
    H = BasedSpace(G.labels)
    comult = formula_map([H], [H, H], lambda x: {(x, x): 1}, F)
    comult = LinMap(H, tensor(H, H), comult.cols, F)
    counit = functional(H, [1] * n, F)
    mult = formula_map([H, H], [H], lambda x, y: {G.mul(x, y): 1}, F)
    omega = formula_map([H, H, H], [], lambda x, y, z: {(): w(x, y, z)}, F)
    omega_inv = formula_map([H, H, H], [], lambda x, y, z: {(): F.inv(w(x, y, z))}, F)
    S = formula_map([H], [H], lambda x: {G.inverse[x]: 1}, F)
    beta = functional(H, [F.inv(w(x, G.inverse[x], x)) for x in range(n)], F)
    h = CoquasiHopf(H, comult, counit, mult, {G.identity: 1}, omega, S, counit, beta,
                    omega_inv=omega_inv, antipode_inv=S)
    h.group = G
    h.cocycle = w
    return h


def graded_comodule_algebra(host, degrees, products, one, labels=None, verify=True):
    """A graded algebra over a group coquasi-Hopf algebra.

    degrees[i] is the group element of basis vector i, products maps (i, j) to
    a dict {k: c} (absent pairs multiply to zero)."""
    F = host.field
    n = len(degrees)
    A = BasedSpace(labels or [f"a{i}" for i in range(n)])
    G = host.group
    for (i, j), v in products.items():
        for k, c in v.items():
            if c and degrees[k] != G.mul(degrees[i], degrees[j]):
                raise GradingViolation(f"{A.label(i)}*{A.label(j)} leaves degree")
    coaction = formula_map([A], [A, host.space], lambda i: {(i, degrees[i]): 1}, F)
    coaction = LinMap(A, tensor(A, host.space), coaction.cols, F)
    mult = formula_map([A, A], [A], lambda i, j: dict(products.get((i, j), {})), F)
    alg = ComoduleAlgebra(host, A, coaction, mult, one)
    alg.degrees = list(degrees)
    if verify:
        rep = verify_comodule_algebra(alg)
        if not rep.ok:
            bad = rep.failures()[0]
            raise QuasiAssociativityFailed(bad.witness, rep)
    return alg


def comodule_algebra_over_itself(h):
    """H as a right H-comodule algebra via Delta (Hopf case)."""
    H = h.space
    return ComoduleAlgebra(h, H, h.comult, h.mult, h.unit)


# ---------------------------------------------------------------- Cayley twists

def cayley_sign(n):
    """Sign table F(x, y) on (Z_2)^n for the Cayley-Dickson doubling basis."""

    def bits(x):
        return [(x >> k) & 1 for k in range(n)]

    def F(x, y):
        a, b = bits(x), bits(y)
        s = sum(a[i] * b[j] for i in range(n) for j in range(i, n))
        if n >= 3:
            s += a[0] * a[1] * b[2] + a[0] * b[1] * a[2] + b[0] * a[1] * a[2]
        return -1 if s % 2 else 1

    return F


def cayley_dickson_table(n):
    """Products e_x e_y = s e_{x^y} of the standard doubling basis, computed
    by the recursion (a, b)(c, d) = (ac - d*b, da + bc*)."""
    if n == 0:
        return {(0, 0): 1}

    def conj(v):
        return [v[0]] + [-c for c in v[1:]]

    def mul(u, v, m):
        if m == 1:
            return [u[0] * v[0]]
        h = m // 2
        a, b, c, d = u[:h], u[h:], v[:h], v[h:]
        sub = lambda p, q: [x - y for x, y in zip(p, q)]
        add = lambda p, q: [x + y for x, y in zip(p, q)]
        return sub(mul(a, c, h), mul(conj(d), b, h)) + add(mul(d, a, h), mul(b, conj(c), h))

    m = 2 ** n
    out = {}
    for x in range(m):
        for y in range(m):
            ex = [0] * m
            ey = [0] * m
            ex[x] = 1
            ey[y] = 1
            z = mul(ex, ey, m)
            nz = [(k, c) for k, c in enumerate(z) if c]
            assert len(nz) == 1 and nz[0][0] == x ^ y
            out[(x, y)] = nz[0][1]
    return out


def cayley_oracle_match(n):
    """Basis signs e with e(0) = 1 making the sign table agree with the
    doubling table, or None."""
    F = cayley_sign(n)
    T = cayley_dickson_table(n)
    m = 2 ** n
    for signs in itertools.product((1, -1), repeat=m - 1):
        e = (1,) + signs
        if all(T[(x, y)] == F(x, y) * e[x] * e[y] * e[x ^ y]
               for x in range(m) for y in range(m)):
            return e
    return None


def cayley_twist(n, host=None, field=QQ):
    """The Cayley twist tau = F on k(Z_2)^n (F takes values +-1)."""
    G = GroupPresentation.z2_power(n)
    if host is None:
        host = group_coquasi_hopf(G, Cocycle3.trivial(G, field))
    F = cayley_sign(n)
    m = 2 ** n
    return GaugeTwist.from_values(host, {(x, y): F(x, y) for x in range(m) for y in range(m)})


def cayley_algebra(n, field=QQ):
    """(twisted host, twisted algebra, twist, untwisted host, untwisted algebra)."""
    G = GroupPresentation.z2_power(n)
    h = group_coquasi_hopf(G, Cocycle3.trivial(G, field))
    t = cayley_twist(n, h, field)
    A = comodule_algebra_over_itself(h)
    Ht = twist_bialgebra(h, t)
    Ht.group = G
    At = twist_comodule_algebra(A, t, Ht)
    return Ht, At, t, h, A


# ---------------------------------------------------------------- named fixtures

def hopf_z2(field=QQ):
    G = GroupPresentation.cyclic(2)
    return group_coquasi_hopf(G, Cocycle3.trivial(G, field))


def cq_z2(field=QQ):
    G = GroupPresentation.cyclic(2)
    return group_coquasi_hopf(G, Cocycle3(G, {(1, 1, 1): -1}, field))


def self_z2(field=QQ):
    """k Z_2 over itself via Delta."""
    h = hopf_z2(field)
    A = graded_comodule_algebra(h, [0, 1], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1},
                                            (1, 1): {0: 1}}, {0: 1}, labels=["e", "g"])
    return h, A


def mat_z2(field=QQ):
    """2x2 matrices, E11, E22 in degree e and E12, E21 in degree g."""
    h = hopf_z2(field)
    names = ["E11", "E12", "E21", "E22"]
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    prods = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                prods[(a, b)] = {idx[(i, l)]: 1}
    deg = [0, 1, 1, 0]
    A = graded_comodule_algebra(h, deg, prods, {0: 1, 3: 1}, labels=names)
    return h, A


def notsg_z2(field=QQ):
    """k x k sitting entirely in degree e."""
    h = hopf_z2(field)
    A = graded_comodule_algebra(h, [0, 0], {(0, 0): {0: 1}, (1, 1): {1: 1}}, {0: 1, 1: 1},
                                labels=["p1", "p2"])
    return h, A


def oct_host(field=QQ):
    G = GroupPresentation.z2_power(3)
    F = cayley_sign(3)
    w = Cocycle3.coboundary(G, F, field)
    return group_coquasi_hopf(G, w)


def octonions(field=QQ):
    """The octonions as the twisted group algebra u_x u_y = F(x, y) u_{x+y}."""
    h = oct_host(field)
    F = cayley_sign(3)
    prods = {(x, y): {x ^ y: F(x, y)} for x in range(8) for y in range(8)}
    labels = ["1"] + [f"u{x}" for x in range(1, 8)]
    A = graded_comodule_algebra(h, list(range(8)), prods, {0: 1}, labels=labels)
    return h, A


def dual_numbers_cq(field=QQ):
    """k[u]/(u^2) with u in degree g, over the Z_2 example with omega(g,g,g) = -1."""
    h = cq_z2(field)
    A = graded_comodule_algebra(h, [0, 1], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
                                {0: 1}, labels=["1", "u"])
    return h, A


def sweedler(field=QQ):
    """Sweedler's four dimensional Hopf algebra; basis 1, g, x, gx."""
    F = field
    H = BasedSpace(["1", "g", "x", "gx"])
    # words: g^a x^b with index a + 2b
    def mulw(p, q):
        a1, b1 = p % 2, p // 2
        a2, b2 = q % 2, q // 2
        if b1 and b2:
            return {}
        sign = -1 if (b1 and a2) else 1  # x g = -g x
        return {(a1 ^ a2) + 2 * (b1 | b2): sign}

    def cop(p):
        a, b = p % 2, p // 2
        if not b:
            return {(p, p): 1}
        # Delta(g^a x) = g^a x (x) g^a + g^{a+1} (x) g^a x
        return {(p, a): 1, (a ^ 1, p): 1}

    comult = formula_map([H], [H, H], cop, F)
    comult = LinMap(H, tensor(H, H), comult.cols, F)
    counit = functional(H, [1, 1, 0, 0], F)
    mult = formula_map([H, H], [H], mulw, F)
    # S(g) = g, S(x) = -g x, S(g x) = S(x) S(g) = -g x g = x
    S = formula_map([H], [H], lambda p: [{0: 1}, {1: 1}, {3: -1}, {2: 1}][p], F)
    omega = formula_map([H] * 3, [], lambda a, b, c: {(): 1 if a < 2 and b < 2 and c < 2 else 0},
                        F)
    return CoquasiHopf(H, comult, counit, mult, {0: 1}, omega, S, counit, counit)


def random_twist(h, seed=0, lo=-3, hi=3):
    """A normalized convolution-invertible twist with small random integer values."""
    rng = random.Random(seed)
    n = h.dim
    u = h.unit
    one = next(iter(u))
    while True:
        vals = {}
        for i in range(n):
            for j in range(n):
                if i == one or j == one:
                    vals[(i, j)] = h.eps_values[j] if i == one else h.eps_values[i]
                else:
                    vals[(i, j)] = Fraction(rng.randint(lo, hi), rng.randint(1, 2))
        try:
            return GaugeTwist.from_values(h, vals)
        except ValueError:
            continue


def twisted_sweedler(seed=0, field=QQ):
    """(H4 twisted by a random gauge twist, H4 over itself twisted accordingly)."""
    h = sweedler(field)
    t = random_twist(h, seed)
    A = comodule_algebra_over_itself(h)
    Ht = twist_bialgebra(h, t)
    At = twist_comodule_algebra(A, t, Ht)
    return Ht, At, t


def _kz2_3(field=QQ):
    G = GroupPresentation.z2_power(3)
    return group_coquasi_hopf(G, Cocycle3.trivial(G, field))


# name -> (builder, name of the host file or None)
FIXTURES = {
    "hopf_z2": (hopf_z2, None),
    "cq_z2": (cq_z2, None),
    "self_h": (hopf_z2, None),
    "self_a": (lambda: self_z2()[1], "self_h"),
    "mat_h": (hopf_z2, None),
    "mat_a": (lambda: mat_z2()[1], "mat_h"),
    "notsg_h": (hopf_z2, None),
    "notsg_a": (lambda: notsg_z2()[1], "notsg_h"),
    "oct_h": (oct_host, None),
    "oct_a": (lambda: octonions()[1], "oct_h"),
    "dual_h": (cq_z2, None),
    "dual_a": (lambda: dual_numbers_cq()[1], "dual_h"),
    "sweedler_h": (sweedler, None),
    "h4t_h": (lambda: twisted_sweedler()[0], None),
    "h4t_a": (lambda: twisted_sweedler()[1], "h4t_h"),
    "kz2_3": (_kz2_3, None),
    "cayley3_tau": (lambda: cayley_twist(3, _kz2_3()), "kz2_3"),
}
