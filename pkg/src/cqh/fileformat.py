"""The line-oriented .cqh text format.

Header lines: ``field Q`` or ``field F <p>``, ``kind <k>``, ``dim <n>``, ``labels ...``.
Entry lines carry sparse structure constants with 1-based indices; the file
ends with ``end``.  Kinds and their entries:

  coquasihopf      m, delta, counit, one, omega, [omegainv], S, alpha, beta
  comodulealgebra  m, rho, one                         (needs the host)
  hopfmodule       m (right action M (x) A -> M), rho  (needs the algebra)
  twist            tau                                 (needs the host)
  cleaving         gamma, delta  (gamma i j c: coefficient of a_j in gamma(h_i); needs the algebra)
"""
from __future__ import annotations

from fractions import Fraction

from .comodule import ComoduleAlgebra, RelHopfModule, verify_comodule_algebra, verify_hopf_module
from .coquasi import CoquasiHopf, functional, functional_values, verify_all
from .exactlin import BasedSpace, LinMap, field_from_tag, tensor
from .galois import CleftData, verify_cleft
from .twist import GaugeTwist, verify_twist


class ParseError(ValueError):
    def __init__(self, line, col, reason):
        super().__init__(f"line {line}, col {col}: {reason}")
        self.line = line
        self.col = col
        self.reason = reason


class AxiomError(ValueError):
    def __init__(self, report):
        bad = report.failures()
        super().__init__("axioms fail: " + ", ".join(c.name for c in bad[:5]))
        self.report = report


KINDS = ("coquasihopf", "comodulealgebra", "hopfmodule", "twist", "cleaving")

# entry name -> number of index slots
ARITY = {"m": 3, "delta": 3, "counit": 1, "omega": 3, "omegainv": 3, "S": 2, "alpha": 1,
         "beta": 1, "rho": 3, "one": 1, "tau": 2, "gamma": 2}
# a cleaving's delta is a map H -> A, not a coproduct
ARITY_BY_KIND = {"cleaving": {"delta": 2}}

ALLOWED = {
    "coquasihopf": ("m", "delta", "counit", "one", "omega", "omegainv", "S", "alpha", "beta"),
    "comodulealgebra": ("m", "rho", "one"),
    "hopfmodule": ("m", "rho"),
    "twist": ("tau",),
    "cleaving": ("gamma", "delta"),
}


# ---------------------------------------------------------------- emit

def _fmt(field, c):
    return field.format(c)


def _lines3(name, lm, n_in, field, order):
    """Entries of a map given column by column; order maps (col, row) -> index tuple."""
    out = []
    for col, v in enumerate(lm.cols):
        for row in sorted(v):
            c = v[row]
            if c:
                out.append((order(col, row), c))
    out.sort(key=lambda t: t[0])
    return [f"{name} " + " ".join(str(i + 1) for i in idx) + f" {_fmt(field, c)}" for idx, c in out]


def _header(field, kind, space):
    return [f"field {field.tag}", f"kind {kind}", f"dim {space.dim}",
            "labels " + " ".join(space.labels)]


def _functional_lines(name, values, field, arity, n):
    out = []
    for k, c in enumerate(values):
        if c:
            idx = []
            r = k
            for _ in range(arity):
                r, i = divmod(r, n)
                idx.append(i)
            idx.reverse()
            out.append((tuple(idx), c))
    out.sort(key=lambda t: t[0])
    return [f"{name} " + " ".join(str(i + 1) for i in idx) + f" {_fmt(field, c)}" for idx, c in out]


def emit_cqh(obj):
    """Canonical text for a CoquasiHopf, ComoduleAlgebra, RelHopfModule or GaugeTwist."""
    if isinstance(obj, CoquasiHopf):
        h = obj
        F, n = h.field, h.dim
        lines = _header(F, "coquasihopf", h.space)
        lines += _lines3("m", h.mult, 2, F, lambda col, row: (col // n, col % n, row))
        lines += _lines3("delta", h.comult, 1, F, lambda col, row: (col, row // n, row % n))
        lines += _functional_lines("counit", h.eps_values, F, 1, n)
        lines += [f"one {i + 1} {_fmt(F, c)}" for i, c in sorted(h.unit.items()) if c]
        lines += _functional_lines("omega", h.omega_values, F, 3, n)
        lines += _functional_lines("omegainv", h.omega_inv_values, F, 3, n)
        lines += _lines3("S", h.antipode, 1, F, lambda col, row: (col, row))
        lines += _functional_lines("alpha", h.alpha_values, F, 1, n)
        lines += _functional_lines("beta", h.beta_values, F, 1, n)
    elif isinstance(obj, ComoduleAlgebra):
        A = obj
        F, d, hd = A.field, A.dim, A.host.dim
        lines = _header(F, "comodulealgebra", A.space)
        lines += _lines3("m", A.mult, 2, F, lambda col, row: (col // d, col % d, row))
        lines += _lines3("rho", A.coaction, 1, F, lambda col, row: (col, row // hd, row % hd))
        lines += [f"one {i + 1} {_fmt(F, c)}" for i, c in sorted(A.one.items()) if c]
    elif isinstance(obj, RelHopfModule):
        M = obj
        if M.side != "right":
            raise ValueError("only right relative Hopf modules are serialized")
        F, d, ad, hd = M.field, M.dim, M.algebra.dim, M.host.dim
        lines = _header(F, "hopfmodule", M.space)
        lines += _lines3("m", M.action, 2, F, lambda col, row: (col // ad, col % ad, row))
        lines += _lines3("rho", M.coaction, 1, F, lambda col, row: (col, row // hd, row % hd))
    elif isinstance(obj, GaugeTwist):
        t = obj
        h = t.host
        lines = _header(h.field, "twist", h.space)
        lines += _functional_lines("tau", functional_values(t.tau), h.field, 2, h.dim)
    elif isinstance(obj, CleftData):
        A = obj.algebra
        h = A.host
        lines = _header(A.field, "cleaving", h.space)
        lines += _lines3("gamma", obj.gamma, 1, A.field, lambda col, row: (col, row))
        lines += _lines3("delta", obj.delta, 1, A.field, lambda col, row: (col, row))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    lines.append("end")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parse

def _tokens(line):
    """(token, 1-based column) pairs."""
    out = []
    i, n = 0, len(line)
    while i < n:
        while i < n and line[i] in " \t":
            i += 1
        if i >= n:
            break
        j = i
        while j < n and line[j] not in " \t":
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _scalar(tok, col, lineno, field):
    try:
        if "/" in tok:
            p, q = tok.split("/")
            v = Fraction(int(p), int(q))
        else:
            v = int(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, col, f"bad scalar {tok!r}") from None
    try:
        return field(v)
    except ZeroDivisionError:
        raise ParseError(lineno, col, f"scalar {tok!r} is not defined in {field.tag}") from None


def _read(text):
    head = {}
    entries = {}
    seen = set()
    ended = False
    last = 0
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        if lineno > 1 or line:
            last = lineno
        toks = _tokens(line)
        if not toks or toks[0][0].startswith("#"):
            continue
        if ended:
            raise ParseError(lineno, toks[0][1], "content after end")
        key, col = toks[0]
        if key == "end":
            if len(toks) != 1:
                raise ParseError(lineno, toks[1][1], "end takes no arguments")
            ended = True
            continue
        if key in ("field", "kind", "dim", "labels"):
            if key in head:
                raise ParseError(lineno, col, f"repeated header {key}")
            if entries:
                raise ParseError(lineno, col, "header after entries")
            head[key] = (toks[1:], lineno)
            continue
        if key not in ARITY:
            raise ParseError(lineno, col, f"unknown entry {key!r}")
        if "dim" not in head or "kind" not in head or "field" not in head:
            raise ParseError(lineno, col, "entries before the field/kind/dim headers")
        kind_toks = head["kind"][0]
        kind = kind_toks[0][0] if kind_toks else ""
        k = ARITY_BY_KIND.get(kind, {}).get(key, ARITY[key])
        if len(toks) != k + 2:
            raise ParseError(lineno, toks[-1][1] if len(toks) > 1 else col,
                             f"{key} expects {k} indices and a scalar, got {len(toks) - 1} tokens")
        idx = []
        for tok, c in toks[1:k + 1]:
            if not tok.isdigit() or int(tok) < 1:
                raise ParseError(lineno, c, f"bad index {tok!r}")
            idx.append((int(tok) - 1, c))
        ident = (key, tuple(i for i, _ in idx))
        if ident in seen:
            raise ParseError(lineno, col, f"duplicate entry {key} " + " ".join(t for t, _ in toks[1:k + 1]))
        seen.add(ident)
        entries.setdefault(key, []).append((idx, toks[-1], lineno))
    if not ended:
        raise ParseError(last + 1, 1, "truncated: missing end")
    return head, entries


def _header_values(head):
    for key in ("field", "kind", "dim", "labels"):
        if key not in head:
            raise ParseError(1, 1, f"missing header {key}")
    toks, ln = head["field"]
    tag = " ".join(t for t, _ in toks)
    try:
        field = field_from_tag(tag)
    except (ValueError, AssertionError):
        raise ParseError(ln, toks[0][1] if toks else 7, f"bad field {tag!r}") from None
    toks, ln = head["kind"]
    if len(toks) != 1 or toks[0][0] not in KINDS:
        raise ParseError(ln, toks[0][1] if toks else 6, "kind must be one of " + ", ".join(KINDS))
    kind = toks[0][0]
    toks, ln = head["dim"]
    if len(toks) != 1 or not toks[0][0].isdigit() or int(toks[0][0]) < 1:
        raise ParseError(ln, toks[0][1] if toks else 5, "dim must be a positive integer")
    dim = int(toks[0][0])
    toks, ln = head["labels"]
    labels = [t for t, _ in toks]
    if len(labels) != dim:
        raise ParseError(ln, 1, f"{len(labels)} labels for dim {dim}")
    if len(set(labels)) != dim:
        raise ParseError(ln, 1, "labels must be distinct")
    return field, kind, dim, BasedSpace(labels)


def _bounded(entries, key, bounds, field):
    out = []
    for idx, (tok, col), lineno in entries.get(key, []):
        for (i, c), b in zip(idx, bounds):
            if i >= b:
                raise ParseError(lineno, c, f"index {i + 1} out of range 1..{b}")
        out.append((tuple(i for i, _ in idx), _scalar(tok, col, lineno, field)))
    return out


def _map3(entries, key, n_in, dims_in, dims_out, field, dom, cod, split):
    cols = [{} for _ in range(dom.dim)]
    for idx, c in _bounded(entries, key, dims_in + dims_out, field):
        col, row = split(idx)
        if c:
            cols[col][row] = c
    return LinMap(dom, cod, cols, field)


def _func(entries, key, n, arity, field, space):
    vals = [0] * (n ** arity)
    for idx, c in _bounded(entries, key, (n,) * arity, field):
        k = 0
        for i in idx:
            k = k * n + i
        vals[k] = c
    return functional(space, vals, field)


def parse_cqh(text, host=None, algebra=None, verify=False):
    head, entries = _read(text)
    field, kind, n, space = _header_values(head)
    for key, items in entries.items():
        if key not in ALLOWED[kind]:
            raise ParseError(items[0][2], 1, f"entry {key!r} not allowed in kind {kind}")
    if kind == "coquasihopf":
        sq = tensor(space, space)
        mult = _map3(entries, "m", 2, (n, n), (n,), field, sq, space,
                     lambda t: (t[0] * n + t[1], t[2]))
        comult = _map3(entries, "delta", 1, (n,), (n, n), field, space, sq,
                       lambda t: (t[0], t[1] * n + t[2]))
        counit = _func(entries, "counit", n, 1, field, space)
        unit = {i[0]: c for i, c in _bounded(entries, "one", (n,), field) if c}
        omega = _func(entries, "omega", n, 3, field, tensor(space, space, space))
        omega_inv = None
        if "omegainv" in entries:
            omega_inv = _func(entries, "omegainv", n, 3, field, tensor(space, space, space))
        S = _map3(entries, "S", 1, (n,), (n,), field, space, space, lambda t: (t[0], t[1]))
        alpha = _func(entries, "alpha", n, 1, field, space)
        beta = _func(entries, "beta", n, 1, field, space)
        try:
            obj = CoquasiHopf(space, comult, counit, mult, unit, omega, S, alpha, beta, omega_inv)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(1, 1, f"inconsistent structure: {e}") from None
        rep = verify_all(obj) if verify else None
    elif kind == "comodulealgebra":
        if host is None:
            raise ParseError(1, 1, "a comodule algebra needs its host")
        _same_field(host.field, field)
        hd = host.dim
        mult = _map3(entries, "m", 2, (n, n), (n,), field, tensor(space, space), space,
                     lambda t: (t[0] * n + t[1], t[2]))
        co = _map3(entries, "rho", 1, (n,), (n, hd), field, space, tensor(space, host.space),
                   lambda t: (t[0], t[1] * hd + t[2]))
        one = {i[0]: c for i, c in _bounded(entries, "one", (n,), field) if c}
        obj = ComoduleAlgebra(host, space, co, mult, one)
        rep = verify_comodule_algebra(obj) if verify else None
    elif kind == "hopfmodule":
        if algebra is None:
            raise ParseError(1, 1, "a Hopf module needs its algebra")
        _same_field(algebra.field, field)
        ad, hd = algebra.dim, algebra.host.dim
        act = _map3(entries, "m", 2, (n, ad), (n,), field, tensor(space, algebra.space), space,
                    lambda t: (t[0] * ad + t[1], t[2]))
        co = _map3(entries, "rho", 1, (n,), (n, hd), field, space,
                   tensor(space, algebra.host.space), lambda t: (t[0], t[1] * hd + t[2]))
        obj = RelHopfModule(algebra, space, co, act)
        rep = verify_hopf_module(obj) if verify else None
    elif kind == "cleaving":
        if algebra is None:
            raise ParseError(1, 1, "a cleaving needs its algebra")
        _same_field(algebra.field, field)
        h = algebra.host
        if n != h.dim or list(space.labels) != list(h.space.labels):
            raise ParseError(head["dim"][1], 1, "a cleaving must repeat the host's dim and labels")
        ad = algebra.dim
        gam = _map3(entries, "gamma", 1, (n,), (ad,), field, h.space, algebra.space,
                    lambda t: (t[0], t[1]))
        dl = _map3(entries, "delta", 1, (n,), (ad,), field, h.space, algebra.space,
                   lambda t: (t[0], t[1]))
        obj = CleftData(algebra, gam, dl)
        rep = verify_cleft(obj) if verify else None
    else:
        if host is None:
            raise ParseError(1, 1, "a twist needs its host")
        _same_field(host.field, field)
        if n != host.dim or list(space.labels) != list(host.space.labels):
            raise ParseError(head["dim"][1], 1, "a twist must repeat the host's dim and labels")
        vals = {}
        for (i, j), c in _bounded(entries, "tau", (n, n), field):
            vals[(i, j)] = c
        try:
            obj = GaugeTwist.from_values(host, vals)
        except ValueError as e:
            raise ParseError(1, 1, str(e)) from None
        rep = verify_twist(obj) if verify else None
    if rep is not None and not rep.ok:
        raise AxiomError(rep)
    return obj


def _same_field(f1, f2):
    if f1.tag != f2.tag:
        raise ParseError(1, 7, f"field {f2.tag} differs from the host's {f1.tag}")


def read_file(path, **kw):
    with open(path, encoding="utf-8") as fh:
        return parse_cqh(fh.read(), **kw)


def write_file(path, obj):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_cqh(obj))


