import json

import pytest

from malcev_forge.cli import run


def test_verify_writes_certificate(tmp_path):
    out = tmp_path / "cert.json"
    code = run(["verify", "--c", "3", "--n", "3", "--e", "1,2", "--trials", "100", "--seed", "42", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["d"] == 11 and doc["seed"] == 42
    assert all(chk["pass"] for chk in doc["checks"])


def test_verify_is_byte_identical(tmp_path):
    args = ["verify", "--c", "3", "--n", "4", "--e", "2", "--trials", "50", "--seed", "5", "--bound", "4"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [
    ["verify", "--c", "2", "--n", "3"],
    ["verify", "--c", "3", "--n", "2"],
    ["verify", "--c", "3", "--n", "3", "--trials", "0"],
    ["verify", "--c", "3", "--n", "3", "--e", "0"],
    ["report", "--c", "3", "--n", "4", "--n-max", "3"],
    ["identities", "--c-max", "0"],
])
def test_bad_parameters_exit_2(argv, capsys):
    assert run(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--c", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--c", "3", "--n", "3", "--e", "1,x"])
    assert exc.value.code == 2


def test_identities(capsys):
    assert run(["identities", "--c-max", "6"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [row["c"] for row in doc["identities"]] == list(range(1, 7))
    assert all(row["pass"] for row in doc["identities"])


def test_witness(capsys):
    assert run(["witness", "--c", "3", "--n", "4", "--e", "1,2", "--trials", "20"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["law"] == "M_4"
    assert [w["e"] for w in doc["witnesses"]] == [1, 2]
    assert all(w["alpha_val"] != w["beta_val"] for w in doc["witnesses"])


def test_report(capsys, monkeypatch):
    monkeypatch.setenv("MALCEV_FORGE_THREADS", "2")
    assert run(["report", "--c", "3", "--n", "3", "--n-max", "4", "--trials", "30", "--e", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [c["n"] for c in doc["certificates"]] == [3, 4]
    assert all(c["valid"] for c in doc["certificates"])
    assert doc["closure"]["cross_commuting"]
