import json
import subprocess
import sys

import pytest

from circeq.cli import main


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    lines = [json.loads(line) for line in out.splitlines() if line.strip()]
    return code, lines, err


def test_equiv_pq_witness(capsys):
    code, (doc,), err = call(capsys, "equiv", "pq", "0,1,4,7/8", "0,1,3,4/8")
    assert code == 0 and doc["status"] == "equivalent"
    assert set(doc["witness"]) == {"P", "Q"}
    assert "equivalent" in err


def test_equiv_affine_inequivalent(capsys):
    code, (doc,), _ = call(capsys, "equiv", "affine", "0,1,4,7/8", "0,1,3,4/8")
    assert code == 1 and doc["witness"] is None


@pytest.mark.parametrize("relation", ["affine", "linear", "pq", "permsim", "spectral", "ppinv"])
def test_equiv_every_relation(capsys, relation):
    code, (doc,), _ = call(capsys, "equiv", relation, "1,2,5/8", "1,5,6/8")
    expected = {"linear": 1}.get(relation, 0)
    assert code == expected and doc["relation"] == relation


def test_budget_inconclusive(capsys):
    code, (doc,), _ = call(capsys, "equiv", "pq", "0,1,4,7/8", "0,1,3,4/8", "--budget", "1")
    assert code == 3 and doc["status"] == "inconclusive"


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("CIRCEQ_BUDGET", "1")
    code, _, _ = call(capsys, "equiv", "pq", "0,1,4,7/8", "0,1,3,4/8")
    assert code == 3


def test_verify_weight2(capsys):
    code, (doc,), _ = call(capsys, "verify", "weight2", "--n-max", "50")
    assert code == 0 and doc["status"] == "verified"


def test_verify_exit_on_violation(capsys, monkeypatch):
    import circeq.cli as cli
    from circeq.report import VerificationReport

    def fake(*a, **k):
        r = VerificationReport("fake", {})
        r.violation({"x": 1})
        return r

    monkeypatch.setattr(cli, "verify_weight2_count", fake)
    code, _, _ = call(capsys, "verify", "weight2")
    assert code == 1


def test_delta_and_spectrum(capsys):
    code, (doc,), _ = call(capsys, "delta", "0,1,3/7")
    assert code == 0 and doc["delta"] == {"0": 3, "1": 1, "2": 1, "3": 1, "4": 1, "5": 1, "6": 1}
    code, (doc,), _ = call(capsys, "spectrum", "0,1,3/7", "--json")
    assert code == 0 and len(doc["fingerprint"]) == 32


def test_sda(capsys):
    code, (doc,), _ = call(capsys, "sda", "8", "4")
    assert code == 1
    assert [(v["S"], v["T"]) for v in doc["violations"]] == [("0,1,2,5/8", "0,1,3,4/8")]
    code, (doc,), _ = call(capsys, "sda", "9", "4")
    assert code == 0 and doc["violations"] == []


def test_malformed_set(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["delta", "0,1,3"])
    assert exc.value.code == 2


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_modulus_mismatch(capsys):
    code, _, err = call(capsys, "equiv", "pq", "0,1/5", "0,1/6")
    assert code == 2 and "modulus" in err


def test_k3_long_running_guard(capsys):
    code, _, err = call(capsys, "verify", "k3", "--n", "840")
    assert code == 2 and "long-running" in err


def test_search_stream_and_resume(capsys, tmp_path):
    code, full, _ = call(capsys, "search", "bipartite-adam", "--n", "16", "--k", "6")
    assert code == 1 and any(f["status"] == "pq" for f in full)
    ck = str(tmp_path / "ck.json")
    call(capsys, "search", "bipartite-adam", "--n", "16", "--k", "6", "--resume", ck, "--stop-after", "30")
    code, resumed, _ = call(capsys, "search", "bipartite-adam", "--n", "16", "--k", "6", "--resume", ck)
    assert resumed == full


def test_search_nothing(capsys):
    code, lines, _ = call(capsys, "search", "bipartite-adam", "--n", "7", "--k", "3")
    assert code == 0 and lines == []


def test_search_bad_checkpoint(capsys, tmp_path):
    ck = tmp_path / "ck.json"
    ck.write_text(json.dumps({"version": 0}))
    code, _, err = call(capsys, "search", "bipartite-adam", "--n", "7", "--k", "3", "--resume", str(ck))
    assert code == 2 and "version" in err


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "circeq.cli", "equiv", "affine", "1,2,4/7", "0,1,3/7"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["witness"] == {"u": 1, "v": 1}
