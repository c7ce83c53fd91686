"""Command line front end: ``cqh <command> ...``.

Exit codes: 0 every check passes (and the verdict asked for is positive),
1 a check failed or the verdict is negative, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import os
import sys

from .checks import CheckReport
from .comodule import ComoduleAlgebra, RelHopfModule, verify_comodule_algebra, verify_hopf_module
from .coquasi import CoquasiHopf, opposite_variants, verify_all
from .fileformat import AxiomError, ParseError, emit_cqh, parse_cqh
from .galois import CleftData, verify_cleft
from .report import ReportBundle
from .twist import GaugeTwist, verify_twist


class UsageError(Exception):
    pass


def load_chain(paths, out=None):
    """Parse files in order; an algebra file binds to the last host, a module or
    cleaving file to the last algebra.  Returns the parsed objects."""
    host = alg = None
    objs = []
    for p in paths:
        try:
            with open(p, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"{p}: {e.strerror}") from None
        try:
            obj = parse_cqh(text, host=host, algebra=alg)
        except ParseError as e:
            raise ParseError(e.line, e.col, f"{p}: {e.reason}") from None
        if isinstance(obj, CoquasiHopf):
            host = obj
        elif isinstance(obj, ComoduleAlgebra):
            alg = obj
        objs.append(obj)
        if out is not None and out.field is None:
            f = getattr(obj, "field", None) or obj.algebra.field
            out.field = f.tag
    return objs


def _pick(objs, kind, what):
    for o in reversed(objs):
        if isinstance(o, kind):
            return o
    raise UsageError(f"no {what} among the input files")


def verify_object(obj):
    if isinstance(obj, CoquasiHopf):
        return verify_all(obj)
    if isinstance(obj, ComoduleAlgebra):
        return verify_comodule_algebra(obj)
    if isinstance(obj, RelHopfModule):
        return verify_hopf_module(obj)
    if isinstance(obj, GaugeTwist):
        return verify_twist(obj)
    if isinstance(obj, CleftData):
        return verify_cleft(obj)
    raise TypeError(type(obj).__name__)


def _seed(args):
    if args.seed is not None:
        return args.seed
    from .galois import default_seed
    return default_seed()


# ---------------------------------------------------------------- commands

def cmd_verify(args, out):
    objs = load_chain(args.files, out)
    for o in objs:
        out.add(verify_object(o))
    return 0 if out.ok else 1


def cmd_coinvariants(args, out):
    objs = load_chain(args.files, out)
    A = _pick(objs, ComoduleAlgebra, "comodule algebra")
    B = A.coinvariants()
    out.add(B.report)
    out.verdict("dim B", B.dim)
    F = A.field
    basis = []
    for j in range(B.dim):
        v = B.vec(j)
        basis.append(" + ".join(f"{F.format(c)}*{A.space.label(i)}" for i, c in sorted(v.items())))
    out.verdict("basis", basis)
    out.note(f"dim B = {B.dim}")
    for b in basis:
        out.note(f"  {b}")
    return 0 if out.ok else 1


def cmd_galois(args, out):
    from .galois import build_can
    A = _pick(load_chain(args.files, out), ComoduleAlgebra, "comodule algebra")
    g = build_can(A)
    out.add(g.report)
    out.verdict("galois", g.galois)
    out.verdict("rank", g.rank)
    out.verdict("target_dim", g.target_dim)
    out.verdict("corank", g.corank)
    out.headline = g.summary()
    return 0 if (g.galois and out.ok) else 1


def cmd_translation(args, out):
    from .galois import NotGalois, build_can, translation_map
    A = _pick(load_chain(args.files, out), ComoduleAlgebra, "comodule algebra")
    g = build_can(A)
    out.headline = g.summary()
    try:
        tm = translation_map(g)
    except NotGalois:
        out.verdict("galois", False)
        return 1
    out.verdict("galois", True)
    out.add(tm.report)
    return 0 if out.ok else 1


def cmd_cleft(args, out):
    objs = load_chain(args.files, out)
    c = _pick(objs, CleftData, "cleaving")
    rep = verify_cleft(c)
    out.add(rep)
    out.verdict("cleft", rep.ok)
    return 0 if out.ok else 1


def cmd_cleftify(args, out):
    from .galois import (build_can, cleft_from_galois_nb, inversecleaving_implied,
                         normal_basis_search)
    A = _pick(load_chain(args.files, out), ComoduleAlgebra, "comodule algebra")
    g = build_can(A)
    out.verdict("galois", g.galois)
    nb, info = normal_basis_search(A, seed=_seed(args))
    out.verdict("normal basis", nb is not None)
    out.verdict("normal basis search", info)
    if not g.galois or nb is None:
        out.headline = "NOT CLEFT" + (" (inconclusive)" if info.get("inconclusive") else "")
        out.verdict("cleft", False)
        return 1
    c = cleft_from_galois_nb(g, nb)
    out.add(c.report)
    out.verdict("cleft", c.report.ok)
    out.verdict("inversecleaving implied", inversecleaving_implied(c))
    out.headline = "CLEFT" if c.report.ok else "CLEFT CONSTRUCTION FAILED"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(emit_cqh(c))
    return 0 if out.ok else 1


def cmd_normalbasis(args, out):
    from .galois import normal_basis_search
    A = _pick(load_chain(args.files, out), ComoduleAlgebra, "comodule algebra")
    nb, info = normal_basis_search(A, seed=_seed(args))
    out.verdict("normal basis", nb is not None)
    out.verdict("search", info)
    if nb is None:
        out.headline = "NO NORMAL BASIS" + (" (inconclusive)" if info.get("inconclusive") else "")
        return 1
    out.add(nb.report)
    out.headline = "NORMAL BASIS"
    return 0 if out.ok else 1


def cmd_twist(args, out):
    from .galois import twist_invariance
    from .twist import twist_bialgebra, twist_comodule_algebra
    objs = load_chain(args.files, out)
    t = _pick(objs, GaugeTwist, "twist")
    out.add(verify_twist(t))
    Ht = twist_bialgebra(t.host, t)
    r = verify_all(Ht)
    r.title = "twisted coquasi-Hopf"
    out.add(r)
    algs = [o for o in objs if isinstance(o, ComoduleAlgebra)]
    if algs:
        A = algs[-1]
        At = twist_comodule_algebra(A, t, Ht)
        r2 = verify_comodule_algebra(At)
        r2.title = "twisted comodule algebra"
        out.add(r2)
        out.add(twist_invariance(A, t))
    return 0 if out.ok else 1


def cmd_drinfeld(args, out):
    from .twist import drinfeld_twist, twisted_associator_of_f
    h = _pick(load_chain(args.files, out), CoquasiHopf, "coquasi-Hopf algebra")
    d = drinfeld_twist(h, strict=False)
    out.add(d.report)
    if d.f is not None:
        out.add(twisted_associator_of_f(h, d))
    return 0 if out.ok else 1


def cmd_bialgebroid(args, out):
    from .bialgebroid import build_L, equivalence_round_trip
    from .comodule import associator_failure
    from .galois import build_can
    A = _pick(load_chain(args.files, out), ComoduleAlgebra, "comodule algebra")
    L = build_L(A)
    out.add(L.report)
    out.verdict("dim L", L.dim)
    w = associator_failure(A)
    out.verdict("A associative", w is None)
    if w is not None:
        out.verdict("associator witness", list(w))
    g = build_can(A)
    out.verdict("galois", g.galois)
    if g.galois:
        out.add(equivalence_round_trip(L, g))
    out.headline = f"L dim={L.dim}"
    return 0 if out.ok else 1


def cmd_battery(args, out):
    from .galois import theorem_big_battery
    A = _pick(load_chain(args.files, out), ComoduleAlgebra, "comodule algebra")
    gr = theorem_big_battery(A)
    out.verdict("conditions", gr.conditions)
    out.verdict("flatness", gr.flatness)
    out.verdict("consistent", gr.consistent)
    out.headline = ("CONSISTENT" if gr.consistent else "INCONSISTENT") + " " + ", ".join(
        f"{k}={v}" for k, v in gr.conditions.items())
    # individual conditions may be false; only an inconsistency is a failure
    cons = CheckReport("battery consistency")
    cons.record("conditions consistent", gr.consistent)
    out.add(cons)
    out.verdict("battery", gr.to_dict())
    return 0 if gr.consistent else 1


def cmd_example(args, out):
    from .fixtures import FIXTURES
    if args.list or not args.name:
        out.raw = "".join(f"{k}\n" for k in FIXTURES)
        return 0
    if args.name not in FIXTURES:
        raise UsageError(f"unknown example {args.name!r}; try --list")
    build, _ = FIXTURES[args.name]
    text = emit_cqh(build())
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        out.raw = ""
    else:
        out.raw = text
    return 0


def selftest_reports():
    """Axiom suites and byte-exact round trips for every built-in fixture."""
    from .fixtures import FIXTURES, cq_z2
    reports = []
    built = {}
    rt = CheckReport("round trip")
    for name, (build, host_name) in FIXTURES.items():
        obj = build()
        built[name] = obj
        r = verify_object(obj)
        r.title = f"{name}: {r.title}"
        reports.append(r)
        text = emit_cqh(obj)
        host = built.get(host_name) if host_name else None
        kw = {}
        if isinstance(obj, (ComoduleAlgebra, GaugeTwist)):
            kw["host"] = parse_cqh(emit_cqh(host)) if host is not None else obj.host
        again = parse_cqh(text, **kw)
        rt.record(f"{name} emit(parse(emit)) = emit", emit_cqh(again) == text)
    reports.append(rt)
    for tag, v in opposite_variants(cq_z2()).items():
        r = verify_all(v)
        r.title = f"cq_z2 {tag}: {r.title}"
        reports.append(r)
    return reports


def cmd_selftest(args, out):
    for r in selftest_reports():
        out.add(r)
    out.headline = "SELFTEST " + ("PASS" if out.ok else "FAIL")
    return 0 if out.ok else 1


COMMANDS = {
    "verify": (cmd_verify, "verify the axioms of every input file", "FILE"),
    "coinvariants": (cmd_coinvariants, "coinvariants B of a comodule algebra", "HOST ALG"),
    "galois": (cmd_galois, "decide whether B in A is Galois", "HOST ALG"),
    "translation": (cmd_translation, "translation map identities", "HOST ALG"),
    "cleft": (cmd_cleft, "verify a cleaving file", "HOST ALG CLEAVING"),
    "cleftify": (cmd_cleftify, "build a cleaving from Galois + normal basis", "HOST ALG"),
    "normalbasis": (cmd_normalbasis, "search for a normal basis", "HOST ALG"),
    "twist": (cmd_twist, "twist a host (and an algebra)", "HOST TWIST [ALG]"),
    "drinfeld": (cmd_drinfeld, "Drinfeld twist identities", "HOST"),
    "bialgebroid": (cmd_bialgebroid, "the algebra L and its module equivalence", "HOST ALG"),
    "battery": (cmd_battery, "equivalent Galois conditions on instances", "HOST ALG"),
}


def build_parser():
    p = argparse.ArgumentParser(prog="cqh", description="Exact checks for coquasi-Hopf algebras.")
    p.add_argument("--json", action="store_true", help="machine readable report")
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    p.add_argument("-v", "--verbose", action="store_true", help="list passing checks too")
    p.add_argument("--seed", type=int, default=None, help="overrides CQH_SEED")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, helptext, meta) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("files", nargs="+", metavar="FILE", help=meta)
        if name == "cleftify":
            sp.add_argument("-o", "--output", help="write the cleaving here")
    ex = sub.add_parser("example", help="emit a built-in fixture file")
    ex.add_argument("name", nargs="?")
    ex.add_argument("--list", action="store_true")
    ex.add_argument("-o", "--output")
    sub.add_parser("selftest", help="axiom suites and round trips of all fixtures")
    return p


def run_cli(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command == "example":
        fn = cmd_example
    elif args.command == "selftest":
        fn = cmd_selftest
    else:
        fn = COMMANDS[args.command][0]
    out = ReportBundle(args.command, inputs=[os.path.basename(f) for f in getattr(args, "files", [])])
    out.raw = None
    try:
        code = fn(args, out)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except AxiomError as e:
        print(f"axiom error: {e}", file=sys.stderr)
        return 1
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    out.finish()
    if out.raw is not None:
        stdout.write(out.raw)
        return code
    out.exit = code
    if args.json:
        stdout.write(out.to_json(timing=args.timing))
    else:
        if out.headline:
            stdout.write(out.headline + "\n")
        stdout.write(out.to_text(verbose=args.verbose))
    return code


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
