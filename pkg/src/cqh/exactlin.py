"""Exact linear algebra over Q and F_p.

A LinMap is a codomain.dim x domain.dim matrix.  It is stored column by
column as sparse dicts (row -> nonzero scalar), but every operation has dense
semantics and `entries` returns the full table.

Tensor bases are ordered left factor major: e_i (x) e_j sits at i*dim_g + j,
and the same rule is applied recursively for longer tensor products.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm, prod


class DimensionMismatch(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


class NotSquare(ValueError):
    pass


# ---------------------------------------------------------------- scalars

class ModP:
    """Element of F_p, always reduced to [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if type(o) is ModP:
            if o.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{o.p}")
            return o.v
        if type(o) is int:
            return o
        if type(o) is Fraction:
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __pow__(self, k):
        if type(k) is not int:
            return NotImplemented
        return ModP(pow(self.v, k, self.p), self.p) if k >= 0 else self.inverse() ** -k

    def __truediv__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else self.inverse() * o

    def __eq__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} mod {self.p}"


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class RationalField:
    tag = "Q"
    char = 0
    zero = 0
    one = 1

    def __call__(self, x):
        if type(x) is int:
            return x
        if isinstance(x, str):
            return self.parse(x)
        if type(x) is ModP:
            raise FieldMismatch("F_p element used over Q")
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of 0")
        return self(Fraction(1) / x)

    def div(self, a, b):
        return self(Fraction(a) / b)

    def parse(self, s):
        return self(Fraction(s))

    def format(self, x):
        x = self(x)
        return str(x)

    def __repr__(self):
        return "QQ"


class PrimeField:
    zero = 0

    def __init__(self, p):
        if not (_is_prime(p) and p < 2 ** 31):
            raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p
        self.char = p
        self.tag = f"F {p}"
        self.one = ModP(1, p)

    def __call__(self, x):
        if type(x) is ModP:
            if x.p != self.p:
                raise FieldMismatch(f"F_{x.p} element used over F_{self.p}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def inv(self, x):
        return self(x).inverse()

    def div(self, a, b):
        return self(a) * self.inv(b)

    def parse(self, s):
        return self(Fraction(s))

    def format(self, x):
        return str(self(x).v)

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()
_prime_fields = {}


def GF(p):
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


def field_from_tag(tag):
    if tag == "Q":
        return QQ
    kind, p = tag.split()
    assert kind == "F"
    return GF(int(p))


# ---------------------------------------------------------------- spaces

class BasedSpace:
    """A vector space with a named basis.  Tensor spaces remember their
    factor spaces so that flat indices can be split into multi-indices."""

    __slots__ = ("_labels", "parts", "dim")

    def __init__(self, labels, parts=None):
        if parts is not None:
            self.parts = tuple(parts)
            self.dim = prod(p.dim for p in self.parts)
            self._labels = None
        else:
            labels = tuple(labels)
            if len(set(labels)) != len(labels):
                raise ValueError("basis labels must be unique")
            self._labels = labels
            self.parts = None
            self.dim = len(labels)

    @classmethod
    def numbered(cls, dim, prefix="e"):
        return cls([f"{prefix}{i}" for i in range(dim)])

    @property
    def factors(self):
        return (self,) if self.parts is None else self.parts

    @property
    def dims(self):
        return tuple(p.dim for p in self.factors)

    @property
    def labels(self):
        if self._labels is None:
            self._labels = tuple(self.label(i) for i in range(self.dim))
        return self._labels

    def label(self, i):
        if self.parts is None:
            return self._labels[i]
        return "⊗".join(p.label(j) for p, j in zip(self.parts, self.split(i)))

    def index(self, multi):
        if self.parts is None:
            (i,) = multi
            return i
        i = 0
        for p, j in zip(self.parts, multi):
            i = i * p.dim + j
        return i

    def split(self, i):
        if self.parts is None:
            return (i,)
        out = []
        for p in reversed(self.parts):
            i, j = divmod(i, p.dim)
            out.append(j)
        return tuple(reversed(out))

    def __eq__(self, o):
        return isinstance(o, BasedSpace) and self.dim == o.dim and self.dims == o.dims

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return f"BasedSpace(dim={self.dim})"


K = BasedSpace(["1"])  # the ground field as a 1-dim space


def tensor(*spaces):
    parts = []
    for s in spaces:
        parts.extend(s.factors)
    if len(parts) == 1:
        return parts[0]
    if not parts:
        return K
    return BasedSpace(None, parts)


# ---------------------------------------------------------------- vectors

def vec_add(acc, v, c=1):
    """acc += c*v in place (sparse dicts)."""
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def clean(v):
    return {k: x for k, x in v.items() if x}


# ---------------------------------------------------------------- maps

class LinMap:
    __slots__ = ("domain", "codomain", "field", "cols")

    def __init__(self, domain, codomain, cols, field):
        if len(cols) != domain.dim:
            raise DimensionMismatch(f"{len(cols)} columns for a dim-{domain.dim} domain")
        for c in cols:
            for r in c:
                if not 0 <= r < codomain.dim:
                    raise DimensionMismatch(f"row {r} outside dim-{codomain.dim} codomain")
        self.domain = domain
        self.codomain = codomain
        self.field = field
        self.cols = [clean({r: field(x) for r, x in c.items()}) for c in cols]

    @classmethod
    def _trusted(cls, domain, codomain, cols, field):
        # cols already hold nonzero field elements in range
        f = object.__new__(cls)
        f.domain, f.codomain, f.field, f.cols = domain, codomain, field, cols
        return f

    @classmethod
    def from_rows(cls, domain, codomain, rows, field):
        cols = [{} for _ in range(domain.dim)]
        if len(rows) != codomain.dim:
            raise DimensionMismatch("row count differs from codomain dim")
        for i, row in enumerate(rows):
            it = row.items() if isinstance(row, dict) else enumerate(row)
            for j, x in it:
                if x:
                    cols[j][i] = x
        return cls(domain, codomain, cols, field)

    @classmethod
    def from_function(cls, domain, codomain, fn, field):
        return cls(domain, codomain, [fn(j) for j in range(domain.dim)], field)

    @classmethod
    def identity(cls, space, field):
        return cls(space, space, [{i: 1} for i in range(space.dim)], field)

    @classmethod
    def zero(cls, domain, codomain, field):
        return cls(domain, codomain, [{} for _ in range(domain.dim)], field)

    @property
    def shape(self):
        return (self.codomain.dim, self.domain.dim)

    @property
    def entries(self):
        z = self.field.zero
        out = [[z] * self.domain.dim for _ in range(self.codomain.dim)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                out[i][j] = x
        return out

    def rows(self):
        out = [{} for _ in range(self.codomain.dim)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                out[i][j] = x
        return out

    def transpose(self):
        return LinMap(self.codomain, self.domain, self.rows(), self.field)

    def apply(self, v):
        """Image of a sparse (dict) or dense (list) vector."""
        it = v.items() if isinstance(v, dict) else enumerate(v)
        out = {}
        for j, x in it:
            if x:
                vec_add(out, self.cols[j], x)
        return out

    def __call__(self, v):
        return self.apply(v)

    def _check_field(self, o):
        if self.field.tag != o.field.tag:
            raise FieldMismatch(f"{self.field!r} vs {o.field!r}")

    def __matmul__(self, g):
        return compose(self, g)

    def __add__(self, o):
        self._check_field(o)
        if self.shape != o.shape:
            raise DimensionMismatch("sum of maps with different shapes")
        return LinMap(self.domain, self.codomain,
                      [vec_add(dict(a), b) for a, b in zip(self.cols, o.cols)], self.field)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        return LinMap(self.domain, self.codomain,
                      [{i: c * x for i, x in col.items()} for col in self.cols], self.field)

    def __eq__(self, o):
        return (isinstance(o, LinMap) and self.shape == o.shape
                and self.field.tag == o.field.tag and self.cols == o.cols)

    __hash__ = None

    def first_difference(self, o):
        """Index of the first domain basis vector on which the maps differ."""
        if self.shape != o.shape:
            raise DimensionMismatch("comparing maps with different shapes")
        for j, (a, b) in enumerate(zip(self.cols, o.cols)):
            if a != b:
                return j
        return None

    def is_zero(self):
        return not any(self.cols)

    def rank(self):
        return rank(self)

    def __repr__(self):
        return f"LinMap({self.codomain.dim}x{self.domain.dim} over {self.field!r})"


def compose(f, g):
    """f after g."""
    f._check_field(g)
    if g.codomain.dim != f.domain.dim:
        raise DimensionMismatch(f"cannot compose {f.shape} after {g.shape}")
    cols = []
    for c in g.cols:
        out = {}
        for k, x in c.items():
            vec_add(out, f.cols[k], x)
        cols.append(out)
    return LinMap._trusted(g.domain, f.codomain, cols, f.field)


def kronecker(f, g):
    f._check_field(g)
    dg = g.codomain.dim
    cols = []
    for cf in f.cols:
        for cg in g.cols:
            cols.append({i * dg + k: x * y for i, x in cf.items() for k, y in cg.items()})
    return LinMap._trusted(tensor(f.domain, g.domain), tensor(f.codomain, g.codomain), cols, f.field)


def kron(*maps):
    out = maps[0]
    for m in maps[1:]:
        out = kronecker(out, m)
    return out


def permutation_map(spaces, perm, field):
    """Map V_0 (x) ... (x) V_{n-1} -> V_perm[0] (x) ... sending tensor legs
    to the new positions given by perm (output leg i is input leg perm[i])."""
    dom = tensor(*spaces)
    cod = tensor(*[spaces[p] for p in perm])
    # output stride of each input leg, then walk the domain in left-major order
    stride = [0] * len(spaces)
    s = 1
    for i in reversed(range(len(perm))):
        stride[perm[i]] = s
        s *= spaces[perm[i]].dim
    idx = [0]
    for p, V in enumerate(spaces):
        st = stride[p]
        idx = [a + j * st for a in idx for j in range(V.dim)]
    one = field(1)
    return LinMap._trusted(dom, cod, [{k: one} for k in idx], field)


# ---------------------------------------------------------------- elimination

def _primitive(row):
    den = 1
    for v in row.values():
        if type(v) is Fraction:
            den = lcm(den, v.denominator)
    if den != 1:
        row = {k: int(v * den) for k, v in row.items()}
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _reduce(r, p, c, rational):
    """Eliminate column c of row r using pivot row p."""
    rho = r[c]
    if rational:
        pi = p[c]
        g = gcd(pi, rho)
        a, b = pi // g, rho // g
        out = {k: a * v for k, v in r.items()}
        for k, v in p.items():
            y = out.get(k, 0) - b * v
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return _primitive(out) if out else out
    out = dict(r)
    for k, v in p.items():
        y = out.get(k, 0) - rho * v
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def rref(rows, field):
    """Reduced row echelon form of sparse rows.

    Over Q the elimination is fraction free on primitive integer rows and the
    pivots are normalised to 1 only at the end.  Pivot columns are taken in
    increasing order, and among candidate rows the earliest one wins, so the
    result is deterministic.  Returns a list of (pivot column, row) pairs
    sorted by pivot column.
    """
    rational = field.char == 0
    work = []
    for r in rows:
        r = clean(r)
        if not r:
            continue
        if rational:
            r = _primitive({k: field(v) for k, v in r.items()})
        else:
            r = {k: field(v) for k, v in r.items()}
        work.append(r)
    done = []
    while work:
        c = min(min(r) for r in work)
        i = next(i for i, r in enumerate(work) if c in r)
        p = work.pop(i)
        if not rational:
            inv = p[c].inverse()
            p = {k: v * inv for k, v in p.items()}
        nxt = []
        for r in work:
            if c in r:
                r = _reduce(r, p, c, rational)
            if r:
                nxt.append(r)
        work = nxt
        done = [(pc, _reduce(r, p, c, rational) if c in r else r) for pc, r in done]
        done.append((c, p))
    out = []
    for pc, r in done:
        if rational:
            piv = r[pc]
            r = {k: field(Fraction(v, piv)) for k, v in r.items()}
        out.append((pc, r))
    out.sort(key=lambda t: t[0])
    return out


def rank(f):
    return len(rref(f.rows(), f.field))


class Subspace:
    """A subspace with a chosen basis and a coordinate retraction.

    The retraction reads off a fixed set of distinguished coordinates, on
    which the basis vectors form an identity matrix."""

    def __init__(self, ambient, basis_vectors, coords, field, labels=None, prefix="v"):
        self.ambient = ambient
        self.field = field
        self.basis_vectors = [clean(v) for v in basis_vectors]
        self.coords = list(coords)
        k = len(self.basis_vectors)
        if labels is None:
            labels = [f"{prefix}{i}" for i in range(k)]
        self.space = BasedSpace(labels)
        self.inclusion = LinMap(self.space, ambient, self.basis_vectors, field)
        pos = {c: i for i, c in enumerate(self.coords)}
        self.projection = LinMap(ambient, self.space,
                                 [({pos[j]: 1} if j in pos else {}) for j in range(ambient.dim)],
                                 field)

    @property
    def dim(self):
        return len(self.basis_vectors)

    @classmethod
    def span(cls, ambient, vectors, field, **kw):
        red = rref(vectors, field)
        return cls(ambient, [r for _, r in red], [c for c, _ in red], field, **kw)

    def coordinates(self, v):
        """Coordinates of v in the chosen basis, or None if v is not inside."""
        pos = {c: i for i, c in enumerate(self.coords)}
        x = {pos[j]: a for j, a in v.items() if j in pos}
        back = self.inclusion.apply(x)
        return x if back == clean(v) else None

    def contains(self, v):
        return self.coordinates(v) is not None

    def contains_image(self, f):
        """Whether every column of f lies in the subspace."""
        return all(self.contains(c) for c in f.cols)


def kernel(f, **kw):
    red = rref(f.rows(), f.field)
    pivots = {c for c, _ in red}
    free = [j for j in range(f.domain.dim) if j not in pivots]
    basis = []
    for j in free:
        v = {j: f.field.one}
        for pc, r in red:
            if j in r:
                v[pc] = -r[j]
        basis.append(v)
    return Subspace(f.domain, basis, free, f.field, **kw)


def image(f, **kw):
    return Subspace.span(f.codomain, f.cols, f.field, **kw)


def solve(f, target):
    """One solution x of f(x) = target with free variables zero, or None."""
    it = target.items() if isinstance(target, dict) else enumerate(target)
    t = {i: x for i, x in it if x}
    if any(not 0 <= i < f.codomain.dim for i in t) or (
            not isinstance(target, dict) and len(target) != f.codomain.dim):
        raise DimensionMismatch("target does not live in the codomain")
    n = f.domain.dim
    rows = f.rows()
    for i, x in t.items():
        rows[i][n] = x
    red = rref(rows, f.field)
    if red and red[-1][0] == n:
        return None
    return {pc: r[n] for pc, r in red if n in r}


def invert(f):
    if f.domain.dim != f.codomain.dim:
        raise NotSquare(f"{f.shape} is not square")
    n = f.domain.dim
    rows = f.rows()
    for i in range(n):
        rows[i][n + i] = f.field.one
    red = rref(rows, f.field)
    if n and red[n - 1][0] != n - 1:
        return None
    inv_rows = [{k - n: v for k, v in r.items() if k >= n} for _, r in red[:n]]
    return LinMap.from_rows(f.codomain, f.domain, inv_rows, f.field)


def cokernel_quotient(relations, prefix=None):
    """Quotient of relations.codomain by the image of relations.

    The representatives are the coordinates that are not pivots of the
    echelon form of the image; returns (space, projection, section)."""
    amb = relations.codomain
    field = relations.field
    red = rref(relations.cols, field)
    pivot_rows = {c: r for c, r in red}
    keep = [j for j in range(amb.dim) if j not in pivot_rows]
    pos = {j: i for i, j in enumerate(keep)}
    space = BasedSpace([f"[{amb.label(j)}]" for j in keep])
    cols = []
    for j in range(amb.dim):
        if j in pos:
            cols.append({pos[j]: 1})
        else:
            r = pivot_rows[j]
            cols.append({pos[k]: -v for k, v in r.items() if k != j})
    proj = LinMap(amb, space, cols, field)
    sect = LinMap(space, amb, [{j: 1} for j in keep], field)
    return space, proj, sect


def is_bijective(f):
    return f.domain.dim == f.codomain.dim and rank(f) == f.domain.dim


def formula_map(doms, cods, fn, field):
    """Build the map V_1 (x) ... (x) V_n -> W_1 (x) ... (x) W_m whose value on
    e_{i_1} (x) ... (x) e_{i_n} is fn(i_1, ..., i_n).

    Each listed space contributes one index even when it is itself a tensor
    space.  fn returns a dict whose keys are tuples (one flat index per
    codomain space) or flat codomain indices; an empty codomain list means
    the ground field and the single key ()."""
    dom = tensor(*doms)
    cod = tensor(*cods)
    ddims = [d.dim for d in doms]
    cdims = [c.dim for c in cods]
    cols = []
    for j in range(dom.dim):
        idx = []
        r = j
        for d in reversed(ddims):
            r, i = divmod(r, d)
            idx.append(i)
        out = {}
        for k, v in fn(*reversed(idx)).items():
            if type(k) is tuple:
                flat = 0
                for d, i in zip(cdims, k):
                    flat = flat * d + i
                k = flat
            out[k] = out.get(k, 0) + v
        cols.append(out)
    return LinMap(dom, cod, cols, field)
