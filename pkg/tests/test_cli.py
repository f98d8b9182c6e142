import json
import subprocess
import sys

import pytest

from qbundle.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize(capsys):
    assert run(["normalize", "z1 z0", "--algebra", "s3"], capsys)[:2] == (0, "q^-1 z0 z1\n")
    assert run(["normalize", "1", "--algebra", "s3"], capsys)[1] == "1\n"
    assert run(["normalize", "z0 z0* + z1 z1*", "--algebra", "s2"], capsys)[1] == "1\n"


def test_normalize_parametrised_algebra(capsys):
    code, out, _ = run(["normalize", "w w w", "--algebra", "zp:p=3"], capsys)
    assert code == 0 and out == "1\n"


def test_parse_error_exit_code(capsys):
    code, _, err = run(["normalize", "z0 + w", "--algebra", "s3"], capsys)
    assert code == 2
    assert "unknown generator" in err


def test_usage_errors(capsys):
    assert run(["verify", "nonsense"], capsys)[0] == 2
    assert run(["basis"], capsys)[0] == 2
    assert run(["verify", "smash", "--q", "1.5"], capsys)[0] == 2
    assert run(["cotensor", "--bidegree", "x"], capsys)[0] == 2


def test_basis(capsys):
    code, out, _ = run(["basis", "--algebra", "z2"], capsys)
    assert code == 0
    assert json.loads(out)["basis"] == ["1", "u"]


def test_cotensor_contains_xi(capsys):
    code, out, _ = run(["cotensor", "--sphere", "2", "--structure", "u1", "--bidegree", "2,2"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert "1 ⊗ v*^2" in rep["basis"]
    assert "z0 ⊗ v" in rep["basis"]
    assert rep["count"] == len(rep["basis"])


def test_trace(capsys):
    code, out, _ = run(["trace", "--monomial", "zeta1 xi", "--n", "1", "--phi", "0.3"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["predicted_zero"] is False
    assert abs(rep["value_re"] - rep["oracle_re"]) < 1e-9
    assert abs(rep["value_im"] - rep["oracle_im"]) < 1e-9
    assert rep["value_im"] < 0  # phase e^{-iφ}
    assert {"tail_bound", "K", "q", "phi"} <= set(rep)


@pytest.mark.parametrize("suite", ["hopf", "smash", "reps"])
def test_verify_suites(suite, capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, err = run(["verify", suite, "--out", str(out)], capsys)
    rep = json.loads(out.read_text())
    assert code == 0, err
    assert rep["status"] == "pass"
    ids = [r["id"] for r in rep["records"]]
    assert ids == sorted(ids)
    assert all(r["anchor"] for r in rep["records"])
    assert "checks pass" in err


def test_verify_connections(capsys):
    code, out, _ = run(["verify", "connections", "--degree", "4"], capsys)
    rep = json.loads(out)
    assert code == 0
    ids = {r["id"] for r in rep["records"]}
    assert {f"connections.sphere.s{m}.axioms" for m in range(1, 6)} <= ids


def test_verify_fredholm(capsys):
    code, out, _ = run(["verify", "fredholm", "--q", "0.5", "--phi", "0.3", "--cutoff", "60"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert any("tail_bound" in r.get("numeric", {}) for r in rep["records"])


def test_fredholm_verify_command(capsys):
    code, out, _ = run(["fredholm-verify", "--n", "1", "--cutoff", "40"], capsys)
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_reports_reproducible(tmp_path):
    texts = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        assert main(["verify", "cleft", "--seed", "4", "--out", str(out)]) == 0
        texts.append(out.read_bytes())
    assert texts[0] == texts[1]


def test_entry_point_module():
    proc = subprocess.run([sys.executable, "-m", "qbundle.cli", "basis", "--algebra", "u1", "--degree", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 3
