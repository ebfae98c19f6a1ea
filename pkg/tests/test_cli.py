import json
import subprocess
import sys

import pytest

from smlab.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "smlab.cli", *args], capture_output=True, text=True)


def test_classify_z12(tmp_path, capsys):
    ws = tmp_path / "ws.txt"
    ws.write_text("module M = cyclic 12 over Z\n")
    assert main(["classify", "--spec", str(ws), "--module", "M", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert len(rows) == 6
    assert not any(r["flags"]["n_sub"] for r in rows)
    assert main(["classify", "--spec", str(ws), "--module", "M"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 7


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("ring R = zn 12\nmodule M = cyclic 5 over R\n")
    assert main(["classify", "--spec", str(bad)]) == 2
    assert "5 does not divide 12" in capsys.readouterr().err
    assert main(["classify", "--spec", str(tmp_path / "missing.txt")]) == 2
    assert main(["theorems", "--ids", "thm-nope"]) == 2
    assert main(["theorems", "--ids", "diagram,thm-char1"]) == 0
    assert main(["theorems", "--ids", "thm-amalgN2-semi-2"]) == 1
    big = tmp_path / "big.txt"
    big.write_text("option ring_cap = 16\nring R = zn 40\n")
    assert main(["classify", "--spec", str(big)]) == 3
    with pytest.raises(SystemExit) as e:
        main(["theorems", "--format", "xml"])
    assert e.value.code == 2


def test_theorems_json_schema(tmp_path):
    out = tmp_path / "r.json"
    assert main(["theorems", "--ids", "diagram,thm-Ide-fwd", "--out", str(out)]) == 1
    doc = json.loads(out.read_text())
    keys = ["theorem", "instances_scanned", "hypothesis_satisfied", "vacuous", "status", "witness", "wall_time_ms", "seed"]
    for r in doc["reports"]:
        assert list(r) == keys
        assert r["wall_time_ms"] is None
    assert doc["summary"]["failed"] == ["thm-Ide-fwd"]


def test_timing_flag(tmp_path):
    out = tmp_path / "r.json"
    main(["theorems", "--ids", "diagram", "--timing", "--out", str(out)])
    assert json.loads(out.read_text())["reports"][0]["wall_time_ms"] >= 0


def test_search_prints_replay_spec(capsys):
    assert main(["search", "--a", "semi_n", "--b", "n_sub"]) == 0
    out = capsys.readouterr().out
    assert "replay spec:" in out and "submodule W_N = gen Z12reg 2" in out
    assert main(["search", "--a", "semi_n", "--b", "semi_n"]) == 0
    assert "not_found" in capsys.readouterr().out


def test_catalog_command(capsys):
    assert main(["catalog", "--caps", "minimal", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["caps"] == "minimal"


def test_entry_point_module():
    r = run("catalog", "--caps", "minimal")
    assert r.returncode == 0 and "proper_submodules" in r.stdout
