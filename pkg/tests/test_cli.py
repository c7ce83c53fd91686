import io
import json
import pathlib
import shutil
import subprocess

import pytest

from cqh.cli import run_cli
from cqh.fixtures import FIXTURES

FIXDIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fx(*names):
    return [str(FIXDIR / f"{n}.cqh") for n in names]


def cli(*argv):
    out = io.StringIO()
    code = run_cli(list(argv), stdout=out)
    return code, out.getvalue()


def test_verify_exit_zero():
    code, text = cli("verify", *fx("cq_z2"))
    assert code == 0 and "25/25 checks pass" in text


def test_verify_chain_of_files():
    code, _ = cli("verify", *fx("oct_h", "oct_a"))
    assert code == 0


def test_galois_octonions():
    code, text = cli("galois", *fx("oct_h", "oct_a"))
    assert code == 0 and text.splitlines()[0] == "GALOIS rank=64/64"


def test_galois_notsg():
    code, text = cli("galois", *fx("notsg_h", "notsg_a"))
    assert code == 1 and text.splitlines()[0] == "NOT GALOIS corank=2"


@pytest.mark.parametrize("argv,code", [
    (("coinvariants", "mat_h", "mat_a"), 0),
    (("translation", "oct_h", "oct_a"), 0),
    (("translation", "notsg_h", "notsg_a"), 1),
    (("normalbasis", "dual_h", "dual_a"), 0),
    (("normalbasis", "notsg_h", "notsg_a"), 1),
    (("cleftify", "dual_h", "dual_a"), 1),
    (("twist", "kz2_3", "cayley3_tau"), 0),
    (("drinfeld", "cq_z2"), 0),
    (("bialgebroid", "mat_h", "mat_a"), 0),
    (("battery", "notsg_h", "notsg_a"), 0),
    (("battery", "self_h", "self_a"), 0),
])
def test_command_exit_codes(argv, code):
    assert cli(argv[0], *fx(*argv[1:]))[0] == code


def test_cleftify_then_cleft(tmp_path):
    out = tmp_path / "c.cqh"
    code, text = cli("cleftify", *fx("oct_h", "oct_a"), "-o", str(out))
    assert code == 0 and text.startswith("CLEFT")
    assert out.read_text().endswith("end\n")
    code, _ = cli("cleft", *fx("oct_h", "oct_a"), str(out))
    assert code == 0


def test_cleft_rejects_broken_cleaving(tmp_path):
    out = tmp_path / "c.cqh"
    cli("cleftify", *fx("self_h", "self_a"), "-o", str(out))
    lines = [l for l in out.read_text().splitlines() if not l.startswith("delta")]
    out.write_text("\n".join(lines) + "\n")
    code, text = cli("cleft", *fx("self_h", "self_a"), str(out))
    assert code == 1 and "FAIL" in text


def test_usage_and_parse_errors(tmp_path):
    assert cli("galois")[0] == 2
    assert cli("no-such-command")[0] == 2
    assert cli("verify", str(tmp_path / "missing.cqh"))[0] == 2
    bad = tmp_path / "t.cqh"
    bad.write_text((FIXDIR / "cq_z2.cqh").read_text().replace("end\n", ""))
    assert cli("verify", str(bad))[0] == 2
    assert cli("verify", *fx("oct_a"))[0] == 2
    assert cli("galois", *fx("cq_z2"))[0] == 2


def test_axiom_failure_exit_one(tmp_path):
    bad = tmp_path / "b.cqh"
    bad.write_text((FIXDIR / "cq_z2.cqh").read_text().replace("beta 2 -1", "beta 2 1"))
    code, text = cli("verify", str(bad))
    assert code == 1 and "omega anihileaza S" in text


def test_json_is_deterministic():
    a = cli("--json", "galois", *fx("mat_h", "mat_a"))[1]
    b = cli("--json", "galois", *fx("mat_h", "mat_a"))[1]
    assert a == b
    d = json.loads(a)
    assert d["schema"] == 1 and d["exit"] == 0 and d["field"] == "Q"
    assert d["headline"] == "GALOIS rank=8/8"
    assert "timing_s" not in d
    t = json.loads(cli("--json", "--timing", "galois", *fx("mat_h", "mat_a"))[1])
    assert t["timing_s"] >= 0


def test_example_list_and_emit(tmp_path):
    code, text = cli("example", "--list")
    assert code == 0 and text.split() == list(FIXTURES)
    out = tmp_path / "x.cqh"
    assert cli("example", "oct_a", "-o", str(out))[0] == 0
    assert out.read_text() == (FIXDIR / "oct_a.cqh").read_text()
    assert cli("example", "nope")[0] == 2


def test_seed_flag_and_env(monkeypatch):
    base = cli("--json", "normalbasis", *fx("mat_h", "mat_a"))[1]
    monkeypatch.setenv("CQH_SEED", "12345")
    env = cli("--json", "normalbasis", *fx("mat_h", "mat_a"))[1]
    flag = cli("--json", "--seed", "12345", "normalbasis", *fx("mat_h", "mat_a"))[1]
    monkeypatch.delenv("CQH_SEED")
    flag2 = cli("--json", "--seed", "12345", "normalbasis", *fx("mat_h", "mat_a"))[1]
    assert env == flag == flag2
    assert json.loads(base)["exit"] == 0


def test_selftest_in_process():
    code, text = cli("selftest")
    assert code == 0 and text.startswith("SELFTEST PASS")


@pytest.mark.skipif(shutil.which("cqh") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["cqh", "galois", *fx("notsg_h", "notsg_a")], capture_output=True, text=True)
    assert r.returncode == 1 and r.stdout.startswith("NOT GALOIS corank=2")
