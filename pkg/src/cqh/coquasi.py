"""Coquasi-bialgebras and coquasi-Hopf algebras given by structure constants.

Formulas in Sweedler notation are evaluated directly: `cop(i, n)` lists the
terms of the n-fold coproduct of a basis element, and the structure
functionals (epsilon, omega, alpha, beta, ...) accept either a basis index
or a sparse vector (dict index -> scalar) in every argument.
"""
from __future__ import annotations

from .checks import CheckReport
from .exactlin import (K, LinMap, compose, formula_map, invert, kron, permutation_map,
                       solve, tensor, vec_add)


class HostMismatch(ValueError):
    pass


class AntipodeNotBijective(ValueError):
    pass


class UNotConvolutionInvertible(ValueError):
    pass


def terms(x):
    """Terms (index, coefficient) of a basis index or a sparse vector."""
    return ((x, 1),) if type(x) is int else x.items()


def functional_values(f):
    """Dense list of the values of a map X -> k."""
    return [c.get(0, 0) for c in f.cols]


def functional(space, values, field):
    return LinMap(space, K, [{0: v} for v in values], field)


class Coalgebra:
    def __init__(self, space, comult, counit):
        self.space = space
        self.field = comult.field
        self.comult = comult
        self.counit = counit
        n = space.dim
        if comult.shape != (n * n, n) or counit.shape != (1, n):
            raise ValueError("comultiplication or counit has the wrong shape")
        self.dim = n
        self._cop = [[(divmod(k, n), c) for k, c in col.items()] for col in comult.cols]
        self.eps_values = functional_values(counit)
        self._copn = {}

    @property
    def coalgebra(self):
        return self

    def cop(self, i, n=2):
        """Terms (legs, coefficient) of the n-fold coproduct of e_i."""
        key = (i, n)
        out = self._copn.get(key)
        if out is not None:
            return out
        if n == 1:
            out = [((i,), self.field.one)]
        elif n == 2:
            out = [((j, k), c) for (j, k), c in self._cop[i]]
        else:
            acc = {}
            for legs, c in self.cop(i, n - 1):
                for (j, k), d in self._cop[legs[-1]]:
                    t = legs[:-1] + (j, k)
                    acc[t] = acc.get(t, 0) + c * d
            out = [(t, c) for t, c in acc.items() if c]
        self._copn[key] = out
        return out

    def copv(self, x, n=2):
        acc = {}
        for i, a in terms(x):
            for t, c in self.cop(i, n):
                acc[t] = acc.get(t, 0) + a * c
        return [(t, c) for t, c in acc.items() if c]

    def eps(self, x):
        if type(x) is int:
            return self.eps_values[x]
        return sum((a * self.eps_values[i] for i, a in x.items()), 0)


def iterated_coproduct(c, n):
    """H -> H^{(x)n}, built as (Delta (x) id ...) o ... o Delta."""
    if n < 1:
        raise ValueError("iterated coproduct needs n >= 1")
    f = LinMap.identity(c.space, c.field)
    ident = LinMap.identity(c.space, c.field)
    for k in range(1, n):
        step = c.comult if k == 1 else kron(c.comult, *([ident] * (k - 1)))
        f = compose(step, f)
    return f


def tensor_power(c, n):
    """The coalgebra H^{(x)n} with the componentwise coproduct."""
    if n == 1:
        return c
    spaces = [c.space] * n
    comult = kron(*([c.comult] * n))
    perm = [2 * k for k in range(n)] + [2 * k + 1 for k in range(n)]
    comult = compose(permutation_map([c.space] * (2 * n), perm, c.field), comult)
    counit = kron(*([c.counit] * n))
    X = tensor(*spaces)
    comult = LinMap(X, tensor(X, X), comult.cols, c.field)
    counit = LinMap(X, K, counit.cols, c.field)
    return Coalgebra(X, comult, counit)


def convolution(f, g, X):
    """(f*g)(x) = f(x_1) g(x_2) for maps X -> k."""
    if f.domain.dim != X.dim or g.domain.dim != X.dim:
        raise HostMismatch("functionals do not live on this coalgebra")
    fv, gv = functional_values(f), functional_values(g)
    vals = []
    for i in range(X.dim):
        s = 0
        for (a, b), c in X.cop(i):
            if fv[a] and gv[b]:
                s += c * fv[a] * gv[b]
        vals.append(s)
    return functional(X.space, vals, X.field)


def convolution_inverse(f, X):
    """Two-sided convolution inverse of f : X -> k, or None."""
    if f.domain.dim != X.dim:
        raise HostMismatch("functional does not live on this coalgebra")
    fv = functional_values(f)
    rows = []
    for i in range(X.dim):
        r = {}
        for (a, b), c in X.cop(i):
            if fv[a]:
                r[b] = r.get(b, 0) + c * fv[a]
        rows.append(r)
    M = LinMap.from_rows(X.space, X.space, rows, X.field)
    x = solve(M, {i: e for i, e in enumerate(X.eps_values) if e})
    if x is None:
        return None
    inv = functional(X.space, [x.get(i, 0) for i in range(X.dim)], X.field)
    if convolution(inv, f, X) != X.counit:
        return None
    return inv


class CoquasiBialgebra(Coalgebra):
    def __init__(self, space, comult, counit, mult, unit, omega, omega_inv=None):
        super().__init__(space, comult, counit)
        n = self.dim
        if mult.shape != (n, n * n) or omega.shape != (1, n ** 3):
            raise ValueError("multiplication or reassociator has the wrong shape")
        self.mult = mult
        self.unit = {i: self.field(x) for i, x in unit.items() if x}
        self.omega = omega
        self._mul = [[mult.cols[i * n + j] for j in range(n)] for i in range(n)]
        self.omega_values = functional_values(omega)
        cube = None
        if omega_inv is None:
            cube = tensor_power(self, 3)
            omega_inv = convolution_inverse(omega, cube)
            if omega_inv is None:
                raise ValueError("the reassociator is not convolution invertible")
        self.omega_inv = omega_inv
        self.omega_inv_values = functional_values(omega_inv)
        self._cube = cube

    @property
    def bialgebra(self):
        return self

    @property
    def cube(self):
        if self._cube is None:
            self._cube = tensor_power(self, 3)
        return self._cube

    def unit_vector(self):
        return dict(self.unit)

    def mul(self, x, y):
        if type(x) is int and type(y) is int:
            return self._mul[x][y]
        out = {}
        for i, a in terms(x):
            row = self._mul[i]
            for j, b in terms(y):
                vec_add(out, row[j], a * b)
        return out

    def _ev3(self, vals, x, y, z):
        n = self.dim
        if type(x) is int and type(y) is int and type(z) is int:
            return vals[(x * n + y) * n + z]
        s = 0
        for i, a in terms(x):
            for j, b in terms(y):
                base = (i * n + j) * n
                ab = a * b
                for k, c in terms(z):
                    v = vals[base + k]
                    if v:
                        s += ab * c * v
        return s

    def om(self, x, y, z):
        return self._ev3(self.omega_values, x, y, z)

    def omi(self, x, y, z):
        return self._ev3(self.omega_inv_values, x, y, z)


class CoquasiHopf(CoquasiBialgebra):
    def __init__(self, space, comult, counit, mult, unit, omega, antipode, alpha, beta,
                 omega_inv=None, antipode_inv=None):
        super().__init__(space, comult, counit, mult, unit, omega, omega_inv)
        self.antipode = antipode
        av, bv = functional_values(alpha), functional_values(beta)
        a1 = sum((c * av[i] for i, c in self.unit.items()), 0)
        b1 = sum((c * bv[i] for i, c in self.unit.items()), 0)
        if a1 * b1 != 1:
            raise ValueError("alpha(1) beta(1) must equal 1")
        if a1 != 1:
            inv = self.field.inv(a1)
            av = [x * inv for x in av]
            bv = [x * a1 for x in bv]
        self.alpha = functional(space, av, self.field)
        self.beta = functional(space, bv, self.field)
        self.alpha_values = functional_values(self.alpha)
        self.beta_values = functional_values(self.beta)
        if antipode_inv is None:
            antipode_inv = invert(antipode)
        self.antipode_inv = antipode_inv
        self._S = antipode.cols
        self._Sinv = antipode_inv.cols if antipode_inv is not None else None

    @classmethod
    def from_parts(cls, coalgebra, mult, unit, omega, antipode, alpha, beta, omega_inv=None,
                   antipode_inv=None):
        return cls(coalgebra.space, coalgebra.comult, coalgebra.counit, mult, unit, omega,
                   antipode, alpha, beta, omega_inv, antipode_inv)

    def S(self, x):
        if type(x) is int:
            return self._S[x]
        out = {}
        for i, a in x.items():
            vec_add(out, self._S[i], a)
        return out

    def Sinv(self, x):
        if self._Sinv is None:
            raise AntipodeNotBijective("the antipode is not bijective")
        if type(x) is int:
            return self._Sinv[x]
        out = {}
        for i, a in x.items():
            vec_add(out, self._Sinv[i], a)
        return out

    def require_bijective_antipode(self):
        if self._Sinv is None:
            raise AntipodeNotBijective("the antipode is not bijective")

    def al(self, x):
        if type(x) is int:
            return self.alpha_values[x]
        return sum((a * self.alpha_values[i] for i, a in x.items()), 0)

    def be(self, x):
        if type(x) is int:
            return self.beta_values[x]
        return sum((a * self.beta_values[i] for i, a in x.items()), 0)

    def structure_maps(self):
        return dict(comult=self.comult, counit=self.counit, mult=self.mult, unit=self.unit,
                    omega=self.omega, omega_inv=self.omega_inv, antipode=self.antipode,
                    alpha=self.alpha, beta=self.beta)

    def same_structure(self, o):
        """Exact equality of all structure constants."""
        return (self.dim == o.dim and self.field.tag == o.field.tag
                and self.comult == o.comult and self.counit == o.counit
                and self.mult == o.mult and self.unit == o.unit and self.omega == o.omega
                and self.omega_inv == o.omega_inv and self.antipode == o.antipode
                and self.alpha == o.alpha and self.beta == o.beta)


# ---------------------------------------------------------------- verification

def verify_coalgebra(c):
    rep = CheckReport("coalgebra")
    H, F = c.space, c.field
    ident = LinMap.identity(H, F)
    rep.equal("coassociativity", compose(kron(c.comult, ident), c.comult),
              compose(kron(ident, c.comult), c.comult))
    rep.equal("counit left", compose(kron(c.counit, ident), c.comult), ident)
    rep.equal("counit right", compose(kron(ident, c.counit), c.comult), ident)
    return rep


def verify_coquasi_bialgebra(b):
    rep = CheckReport("coquasi-bialgebra")
    H, F = b.space, b.field
    n = b.dim
    swap_mid = permutation_map([H, H, H, H], [0, 2, 1, 3], F)
    rep.equal("mult coalgebra morphism", compose(b.comult, b.mult),
              compose(kron(b.mult, b.mult), compose(swap_mid, kron(b.comult, b.comult))))
    rep.equal("mult counit", compose(b.counit, b.mult), kron(b.counit, b.counit))
    unit_map = LinMap(K, H, [b.unit], F)
    rep.equal("unit coalgebra morphism", compose(b.comult, unit_map), kron(unit_map, unit_map))
    rep.equal("unit counit", compose(b.counit, unit_map), LinMap.identity(K, F))

    def assoc_left(h, g, k):
        out = {}
        for (h1, h2), a in b.cop(h):
            for (g1, g2), c in b.cop(g):
                for (k1, k2), d in b.cop(k):
                    w = b.om(h2, g2, k2)
                    if w:
                        vec_add(out, b.mul(h1, b.mul(g1, k1)), a * c * d * w)
        return out

    def assoc_right(h, g, k):
        out = {}
        for (h1, h2), a in b.cop(h):
            for (g1, g2), c in b.cop(g):
                for (k1, k2), d in b.cop(k):
                    w = b.om(h1, g1, k1)
                    if w:
                        vec_add(out, b.mul(b.mul(h2, g2), k2), a * c * d * w)
        return out

    rep.equal("asociat multipl", formula_map([H] * 3, [H], assoc_left, F),
              formula_map([H] * 3, [H], assoc_right, F))
    ident = LinMap.identity(H, F)
    rep.equal("unit left", compose(b.mult, kron(unit_map, ident)), ident)
    rep.equal("unit right", compose(b.mult, kron(ident, unit_map)), ident)

    def cocycle_left(h, g, k, l):
        s = 0
        for (h1, h2), a in b.cop(h):
            for (g1, g2), c in b.cop(g):
                for (k1, k2), d in b.cop(k):
                    for (l1, l2), e in b.cop(l):
                        w = b.om(h1, g1, b.mul(k1, l1))
                        if w:
                            s += a * c * d * e * w * b.om(b.mul(h2, g2), k2, l2)
        return {(): s}

    def cocycle_right(h, g, k, l):
        s = 0
        for (h1, h2), a in b.cop(h):
            for (g1, g2, g3), c in b.cop(g, 3):
                for (k1, k2, k3), d in b.cop(k, 3):
                    for (l1, l2), e in b.cop(l):
                        w = b.om(g1, k1, l1)
                        if w:
                            s += (a * c * d * e * w * b.om(h1, b.mul(g2, k2), l2)
                                  * b.om(h2, g3, k3))
        return {(): s}

    rep.equal("cocycle omega", formula_map([H] * 4, [], cocycle_left, F),
              formula_map([H] * 4, [], cocycle_right, F))

    eps2 = formula_map([H, H], [], lambda h, g: {(): b.eps(h) * b.eps(g)}, F)
    u = b.unit
    rep.equal("omega normalization", formula_map([H, H], [], lambda h, g: {(): b.om(h, u, g)}, F),
              eps2)
    ok1 = formula_map([H, H], [], lambda h, g: {(): b.om(u, h, g)}, F)
    ok2 = formula_map([H, H], [], lambda h, g: {(): b.om(h, g, u)}, F)
    rep.equal("omega normalization first", ok1, eps2)
    rep.equal("omega normalization last", ok2, eps2)
    cube = b.cube
    rep.equal("omega convolution inverse", convolution(b.omega, b.omega_inv, cube), cube.counit)
    rep.equal("omega convolution inverse (left)", convolution(b.omega_inv, b.omega, cube),
              cube.counit)
    return rep


def verify_antipode(h):
    rep = CheckReport("antipode")
    H, F = h.space, h.field
    swap = permutation_map([H, H], [1, 0], F)
    rep.equal("S anti-coalgebra", compose(h.comult, h.antipode),
              compose(kron(h.antipode, h.antipode), compose(swap, h.comult)))
    rep.equal("counit S", compose(h.counit, h.antipode), h.counit)
    one = h.unit

    def salfa(x):
        out = {}
        for (x1, x2, x3), c in h.cop(x, 3):
            a = h.al(x2)
            if a:
                vec_add(out, h.mul(h.S(x1), x3), c * a)
        return out

    def idbeta(x):
        out = {}
        for (x1, x2, x3), c in h.cop(x, 3):
            b = h.be(x2)
            if b:
                vec_add(out, h.mul(x1, h.S(x3)), c * b)
        return out

    rep.equal("SalfaId", formula_map([H], [H], salfa, F),
              formula_map([H], [H], lambda x: {k: h.al(x) * v for k, v in one.items()}, F))
    rep.equal("IdbetaS", formula_map([H], [H], idbeta, F),
              formula_map([H], [H], lambda x: {k: h.be(x) * v for k, v in one.items()}, F))

    def anih(x):
        s = 0
        for (x1, x2, x3, x4, x5), c in h.cop(x, 5):
            ab = h.be(x2) * h.al(x4)
            if ab:
                s += c * ab * h.om(x1, h.S(x3), x5)
        return {(): s}

    def anih_inv(x):
        s = 0
        for (x1, x2, x3, x4, x5), c in h.cop(x, 5):
            ab = h.al(x2) * h.be(x4)
            if ab:
                s += c * ab * h.omi(h.S(x1), x3, h.S(x5))
        return {(): s}

    rep.equal("omega anihileaza S", formula_map([H], [], anih, F), h.counit)
    rep.equal("omega anihileaza S (inverse)", formula_map([H], [], anih_inv, F), h.counit)
    rep.record("S unit", h.S(h.unit_vector()) == one)
    rep.record("alpha beta unit", h.al(one) * h.be(one) == 1)
    if h.antipode_inv is not None:
        ident = LinMap.identity(H, F)
        rep.record("antipode inverse",
                   compose(h.antipode, h.antipode_inv) == ident
                   and compose(h.antipode_inv, h.antipode) == ident)
    return rep


def verify_all(h):
    rep = CheckReport("coquasi-Hopf")
    rep.extend(verify_coalgebra(h))
    rep.extend(verify_coquasi_bialgebra(h))
    rep.extend(verify_antipode(h))
    return rep


# ---------------------------------------------------------------- harpoons

def harpoon_left(f, x, c):
    """f -> x = x_1 f(x_2)."""
    if f.domain.dim != c.dim:
        raise HostMismatch("functional does not live on this coalgebra")
    fv = functional_values(f)
    out = {}
    for (a, b), k in c.copv(x):
        if fv[b]:
            out[a] = out.get(a, 0) + k * fv[b]
    return {i: v for i, v in out.items() if v}


def harpoon_right(x, f, c):
    """x <- f = f(x_1) x_2."""
    if f.domain.dim != c.dim:
        raise HostMismatch("functional does not live on this coalgebra")
    fv = functional_values(f)
    out = {}
    for (a, b), k in c.copv(x):
        if fv[a]:
            out[b] = out.get(b, 0) + k * fv[a]
    return {i: v for i, v in out.items() if v}


# ---------------------------------------------------------------- variants

def opposite_variants(h):
    """The op, cop and op-cop coquasi-Hopf algebras of h."""
    if h.antipode_inv is None:
        raise AntipodeNotBijective("op/cop variants need a bijective antipode")
    H, F = h.space, h.field
    p321 = permutation_map([H, H, H], [2, 1, 0], F)
    swap = permutation_map([H, H], [1, 0], F)
    S, Si = h.antipode, h.antipode_inv
    mult_op = compose(h.mult, swap)
    comult_cop = compose(swap, h.comult)
    op = CoquasiHopf(H, h.comult, h.counit, mult_op, h.unit,
                     compose(h.omega_inv, p321), Si,
                     compose(h.alpha, Si), compose(h.beta, Si),
                     omega_inv=compose(h.omega, p321), antipode_inv=S)
    cop = CoquasiHopf(H, comult_cop, h.counit, h.mult, h.unit, h.omega_inv, Si,
                      compose(h.beta, Si), compose(h.alpha, Si),
                      omega_inv=h.omega, antipode_inv=S)
    op_cop = CoquasiHopf(H, comult_cop, h.counit, mult_op, h.unit, compose(h.omega, p321), S,
                         h.beta, h.alpha, omega_inv=compose(h.omega_inv, p321), antipode_inv=Si)
    return {"op": op, "cop": cop, "op_cop": op_cop}


def change_antipode(h, U):
    """The triple (S', alpha', beta') obtained from a convolution invertible U."""
    Uinv = convolution_inverse(U, h)
    if Uinv is None:
        raise UNotConvolutionInvertible("U has no convolution inverse")
    uv, uiv = functional_values(U), functional_values(Uinv)
    H, F = h.space, h.field

    def s_new(x):
        out = {}
        for (x1, x2, x3), c in h.cop(x, 3):
            w = uv[x1] * uiv[x3]
            if w:
                vec_add(out, h.S(x2), c * w)
        return out

    S2 = formula_map([H], [H], s_new, F)
    alpha2 = convolution(U, h.alpha, h)
    beta2 = convolution(h.beta, Uinv, h)
    return CoquasiHopf(H, h.comult, h.counit, h.mult, h.unit, h.omega, S2, alpha2, beta2,
                       omega_inv=h.omega_inv)
