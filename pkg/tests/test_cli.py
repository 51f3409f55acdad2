import io
import json
import subprocess
import sys

import pytest

from cruciform.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_count_brute():
    assert call("count", "--cruciform", "1,1,1,0,0,0", "--engine", "brute") == (0, "8\n")


def test_count_json_has_provenance():
    code, out = call("count", "--aztec", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == "64"
    assert doc["provenance"]["command_line"] == ["count", "--aztec", "3", "--format", "json"]


def test_formula():
    code, out = call("formula", "conjecture", "--n", "3")
    assert code == 0 and out.splitlines()[0] == "60"
    code, out = call("formula", "cruciform", "--params", "2,0,2,-1,1,-1")
    assert out.splitlines()[0] == "2^(-1)"
    code, out = call("formula", "half_square", "--n", "1")
    assert out.startswith("0.7071067811865475")
    assert call("formula", "cruciform", "--n", "2")[0] == 64


def test_verify_writes_ledger(tmp_path):
    path = tmp_path / "l.json"
    code, out = call("verify", "theorem1", "--max-mn", "2", "--out", str(path))
    doc = json.loads(path.read_text())
    assert code == 2 and doc["verdict"] == "REFUTED-AS-PRINTED"
    hand = [e for e in doc["suites"][0]["entries"] if e["params"] == [1, 1, 1, 0, 0, 0]]
    assert hand[0]["status"] == "match"
    assert "verdict: REFUTED-AS-PRINTED" in out
    code, _ = call("verify", "conjecture", "--n", "3", "--format", "csv", "--out", str(tmp_path / "c.csv"))
    assert code == 0
    lines = (tmp_path / "c.csv").read_text().splitlines()
    assert lines[0].startswith("# ") and lines[1].startswith("suite,params,count")


def test_verify_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    call("verify", "theorem2", "--out", str(a))
    call("verify", "theorem2", "--out", str(b))
    assert a.read_bytes().replace(b"a.json", b"b.json") == b.read_bytes()


def test_prob_and_sample(tmp_path):
    code, out = call("prob", "--aztec", "1", "--site", "1,0,2,0")
    assert (code, out) == (0, "1/2\n")
    code, out = call("prob", "--difrancesco", "2")
    assert code == 0 and out.splitlines()[1] == "site,probability"
    args = ("sample", "--aztec", "2", "--seed", "99", "--samples", "3")
    assert call(*args) == call(*args)
    doc = json.loads(call(*args)[1])
    assert doc["metadata"]["prng"].startswith("MT19937") and len(doc["samples"]) == 3
    path = tmp_path / "s.json"
    call(*args, "--out", str(path))
    code, out = call("render", "--aztec", "2", "--tiling-file", str(path), "--format", "ascii")
    assert code == 0 and out.count("\n") == 5


def test_region_outputs(tmp_path):
    code, out = call("region", "--cruciform", "1,1,1,0,0,0")
    doc = json.loads(out)
    assert len(doc["cells"]) == 12
    f = tmp_path / "r.json"
    f.write_text(out)
    assert call("count", "--region-file", str(f)) == (0, "8\n")
    code, out = call("region", "--cruciform", "1,1,1,0,0,0", "--format", "svg")
    assert out.count('class="cell"') == 12 and "<!-- " in out


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nengine = kasteleyn\ncruciform = 1,1,0,1,1,-1\n")
    assert call("count", "--config", str(cfg)) == (0, "4\n")
    # flags win over the file
    assert call("count", "--config", str(cfg), "--elbow", "2,1,1")[0] == 64
    assert call("count", "--config", str(cfg), "--cruciform", "1,1,1,0,0,0") == (0, "8\n")
    cfg.write_text("colour = red\n")
    assert call("count", "--config", str(cfg))[0] == 64


@pytest.mark.parametrize("argv", [
    ("count",),
    ("count", "--aztec", "2", "--bogus"),
    ("count", "--aztec", "1,2"),
    ("count", "--cruciform", "1,1,-1,1,1,0"),
    ("frobnicate",),
    ("formula", "cruciform", "--params", "1,2"),
    ("sample", "--aztec", "2", "--seed", "-3"),
    ("prob", "--ar", "0,3"),
])
def test_usage_errors(argv):
    assert call(*argv)[0] == 64


def test_resource_limit_is_a_failure():
    assert call("count", "--ar", "6,6", "--engine", "transfer", "--config", "/dev/null")[0] == 0
    code, _ = call("count", "--aztec", "40", "--engine", "brute")
    assert code == 1


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "cruciform", "formula", "aztec", "--n", "6"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.splitlines()[0] == "2097152"
