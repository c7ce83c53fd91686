import pathlib

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from cqh import fixtures as fx
from cqh.comodule import induce_module, regular_B_module
from cqh.coquasi import verify_all
from cqh.exactlin import GF
from cqh.fileformat import AxiomError, ParseError, emit_cqh, parse_cqh, read_file
from cqh.galois import cleft_search

FIXDIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def host_for(name):
    host = fx.FIXTURES[name][1]
    return parse_cqh((FIXDIR / f"{host}.cqh").read_text()) if host else None


@pytest.mark.parametrize("name", sorted(fx.FIXTURES))
def test_fixture_files_round_trip(name):
    text = (FIXDIR / f"{name}.cqh").read_text()
    obj = parse_cqh(text, host=host_for(name))
    assert emit_cqh(obj) == text


@pytest.mark.parametrize("name", sorted(fx.FIXTURES))
def test_fixture_files_match_builders(name):
    build, _ = fx.FIXTURES[name]
    assert emit_cqh(build()) == (FIXDIR / f"{name}.cqh").read_text()


def test_cq_z2_structure_round_trip():
    h = fx.cq_z2()
    assert parse_cqh(emit_cqh(h)).same_structure(h)


def test_prime_field_round_trip():
    h = fx.oct_host(GF(5))
    text = emit_cqh(h)
    assert text.startswith("field F 5\n")
    again = parse_cqh(text)
    assert emit_cqh(again) == text and verify_all(again).ok


def test_hopf_module_and_cleaving_round_trip(mat_pair):
    _, A = mat_pair
    M = induce_module(regular_B_module(A), A)
    text = emit_cqh(M)
    assert emit_cqh(parse_cqh(text, algebra=A)) == text
    c, _ = cleft_search(A)
    text = emit_cqh(c)
    back = parse_cqh(text, algebra=A, verify=True)
    assert emit_cqh(back) == text


def test_omega_inverse_computed_when_absent():
    text = "\n".join(l for l in emit_cqh(fx.cq_z2()).split("\n") if not l.startswith("omegainv"))
    h = parse_cqh(text)
    assert h.omi(1, 1, 1) == -1
    assert h.same_structure(fx.cq_z2())


def test_comments_and_blank_lines():
    text = emit_cqh(fx.hopf_z2()).replace("kind", "# a comment\n\nkind", 1)
    assert parse_cqh(text).same_structure(fx.hopf_z2())


BASE = emit_cqh(fx.cq_z2())


ERROR_CASES = [
    (BASE.replace("end\n", ""), None, "truncated"),
    (BASE.replace("m 1 1 1 1", "m 1 1 3 1"), 5, "out of range"),
    (BASE.replace("m 1 1 1 1", "m 1 x 1 1"), 5, "bad index"),
    (BASE.replace("m 1 1 1 1", "m 0 1 1 1"), 5, "bad index"),
    (BASE.replace("m 1 1 1 1", "m 1 1 1 1/0"), 5, "bad scalar"),
    (BASE.replace("m 1 1 1 1", "m 1 1 1"), 5, "expects"),
    (BASE.replace("m 1 1 1 1", "mu 1 1 1 1"), 5, "unknown entry"),
    (BASE.replace("m 1 2 2 1", "m 1 1 1 1"), 6, "duplicate"),
    (BASE.replace("kind coquasihopf", "kind algebra"), 2, "kind"),
    (BASE.replace("field Q", "field F 4"), 1, "bad field"),
    (BASE.replace("labels e g", "labels e"), 4, "labels"),
    (BASE.replace("labels e g", "labels e e"), 4, "distinct"),
    (BASE.replace("dim 2", "dim two"), 3, "dim"),
    (BASE + "m 1 1 1 1\n", BASE.count("\n") + 1, "after end"),
    (BASE.replace("counit 1 1\n", "counit 1 1\nfield Q\n"), 12, "repeated header"),
    (BASE.replace("labels e g\n", "").replace("counit 1 1\n", "counit 1 1\nlabels e g\n"), 11,
     "header after entries"),
    (BASE.replace("m 1 1 1 1", "rho 1 1 1 1"), 5, "not allowed"),
]


@pytest.mark.parametrize("text,line,fragment", ERROR_CASES, ids=[c[2] for c in ERROR_CASES])
def test_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as e:
        parse_cqh(text)
    assert fragment in e.value.reason
    if line is not None:
        assert e.value.line == line


def test_field_mismatch_with_host():
    text = emit_cqh(fx.self_z2()[1])
    with pytest.raises(ParseError, match="differs"):
        parse_cqh(text, host=fx.hopf_z2(GF(3)))


def test_algebra_needs_host():
    with pytest.raises(ParseError, match="host"):
        parse_cqh(emit_cqh(fx.self_z2()[1]))


def test_axiom_error_on_verify():
    text = BASE.replace("beta 2 -1", "beta 2 1")
    assert parse_cqh(text) is not None
    with pytest.raises(AxiomError) as e:
        parse_cqh(text, verify=True)
    assert "omega anihileaza S" in str(e.value)


def test_read_file():
    assert read_file(FIXDIR / "oct_h.cqh").dim == 8


# fuzz: arbitrary edits of a valid file either parse or raise ParseError

edits = st.lists(st.tuples(st.integers(0, len(BASE)), st.integers(0, 6),
                           st.text(alphabet="0123456789 -/\nmdeltaQFkindgx#", max_size=6)),
                 min_size=1, max_size=4)


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(edits)
def test_fuzzed_files_raise_only_parse_errors(ops):
    text = BASE
    for pos, cut, ins in ops:
        pos = min(pos, len(text))
        text = text[:pos] + ins + text[pos + cut:]
    try:
        parse_cqh(text)
    except ParseError as e:
        assert e.line >= 1 and e.col >= 1


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=80))
def test_random_text_raises_parse_error(text):
    try:
        parse_cqh(text)
    except ParseError:
        pass
