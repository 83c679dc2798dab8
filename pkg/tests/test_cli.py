import io
import json
import subprocess
import sys

import pytest

from gwci.cli import RunConfig, UsageError, config_from_args, main, parse_npoint
from gwci.ifunction import TargetError
from gwci.quantum import QSeries, parse_table_document

Q = ["--ambient", "6", "--degrees", "5"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_qh_quintic():
    code, out = run("qh", *Q)
    assert code == 0
    rows = out.strip().splitlines()
    assert len(rows) == 6
    assert rows[-1] == "H*H^5 = 120qH^4 + 211200q^2H^2 + 31320000q^3"
    for token in ("120", "770", "1345", "211200", "692500", "31320000"):
        assert token in out


def test_qh_projective_space():
    code, out = run("qh", "--ambient", "4")
    assert code == 0
    assert out.strip().splitlines() == ["H*1 = H", "H*H = H^2", "H*H^2 = H^3", "H*H^3 = H^4",
                                        "H*H^4 = q"]


def test_qh_rejects_index_one(capsys):
    code, out = run("qh", "--ambient", "5", "--degrees", "5")
    assert code != 0 and out == ""
    assert "Fano index 1" in capsys.readouterr().err


def test_qh_machine_round_trip():
    code, out = run("qh", *Q, "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and doc["convention_version"] == 1
    table = parse_table_document(doc, 6)
    assert table[(1, 5)][0] == QSeries.monomial(3, 31320000)
    assert all("/" in t["coeff"] for p in doc["products"] for t in p["terms"])


@pytest.mark.parametrize("argv,value", [
    (["--two", "5", "5", "0", "3"], "52200000"),
    (["--one", "5", "0", "1"], "600"),
    (["--npoint", "1:0,2:0,4:0 1"], "3850"),
    (["--npoint", "2:0,2:0,3:0", "1"], "9975"),
])
def test_invariant(argv, value):
    code, out = run("invariant", *Q, *argv)
    assert code == 0 and out.strip() == value


def test_invariant_dimension_note(capsys):
    code, out = run("invariant", *Q, "--two", "5", "5", "1", "3")
    assert code == 0 and out.strip() == "0"
    assert "dimension filter" in capsys.readouterr().err
    code, out = run("invariant", *Q, "--one", "5", "1", "1", "--format", "machine")
    doc = json.loads(out)
    assert doc["value"] == "0/1" and "dimension filter" in doc["note"]


def test_invariant_bounds(capsys):
    code, _ = run("invariant", *Q, "--npoint", "1:0,1:0,1:0,1:0,1:0 1", "--max-points", "4")
    assert code == 2 and "exceeds" in capsys.readouterr().err
    code, _ = run("invariant", *Q, "--two", "5", "5", "0", "3", "--max-degree", "2")
    assert code == 2 and "--max-degree" in capsys.readouterr().err


def test_count():
    assert run("count", *Q, "--through-two-points", "3") == (0, "2088000\n")
    assert run("count", "--ambient", "4", "--degrees", "3", "--through-two-points", "2") == (0, "6\n")
    assert run("count", *Q, "--through-two-points", "2")[0] == 2


def test_verify_quintic():
    code, out = run("verify", *Q, "--multipoint")
    assert code == 0
    assert out.startswith("X_{5} in P^6: PASS")
    assert "multipoint m=2 vs two-point: 972/972" in out


def test_verify_machine():
    code, out = run("verify", "--ambient", "4", "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["failures"] == []


def test_npoint_parse():
    assert parse_npoint("1:0,2:3,4 2") == ([(1, 0), (2, 3), (4, 0)], 2)
    with pytest.raises(UsageError):
        parse_npoint("1:0,2:0")


def test_config_round_trip():
    for argv in (["qh", *Q, "--format", "machine"],
                 ["invariant", *Q, "--two", "5", "5", "0", "3", "--max-degree", "3"],
                 ["invariant", "--ambient", "3", "--npoint", "2:0,2:0,2:0,2:0 1"],
                 ["verify", "--grid", "6", "--multipoint"],
                 ["cache", "export", *Q, "--cache", "x.json", "--max-points", "3"]):
        c = config_from_args(argv)
        assert RunConfig.from_json(c.to_json()) == c
        assert config_from_args(c.to_argv()) == c


def test_config_rejects_invalid_target():
    with pytest.raises(TargetError):
        config_from_args(["qh", "--ambient", "5", "--degrees", "5"])


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gwci", "invariant", *Q, "--one", "5", "0", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "600"
