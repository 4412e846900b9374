import json
import subprocess
import sys

import pytest

from wgideal.cli import main
from wgideal.wgraph import graph_from_json, verify_wgraph

B4 = ["--type", "B4", "--ideal", "words:[1, s0, s1.s0, s2.s1.s0]", "--j", "s1,s2,s3"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_b4(capsys):
    code, out, _ = run(capsys, "verify", *B4)
    assert code == 1
    data = json.loads(out)
    assert data["isIdeal"] is False
    assert [(f["s"], f["t"]) for f in data["failures"]] == [("s0", "s3")]
    assert data["graph"]["vertices"][1]["tau"] == ["s0", "s2", "s3"]


def test_verify_dj_shorthand(capsys):
    code, out, _ = run(capsys, "verify", "--type", "I2(3)", "--ideal", "DJ", "--j", "s")
    assert code == 0
    assert json.loads(out)["ideal"] == ["1", "t", "st"]
    code, out, _ = run(capsys, "verify", "--type", "I2(3)", "--ideal", "D", "--j", "s", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_usage_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"labels": ["s", "t"], "m": [[1, 3], [2, 1]]}))
    assert run(capsys, "verify", "--coxeter", str(bad), "--ideal", "W")[0] == 2
    assert run(capsys, "verify", "--coxeter", str(tmp_path / "missing.json"), "--ideal", "W")[0] == 2
    assert run(capsys, "verify", "--type", "I2(3)", "--ideal", "words:[1, st]")[0] == 2
    assert run(capsys, "verify", "--type", "I2(3)", "--ideal", "nonsense")[0] == 2
    assert run(capsys, "verify", "--type", "I2(3)", "--ideal", "W", "--j", "u")[0] == 2
    assert run(capsys, "verify", "--type", "Z9", "--ideal", "W")[0] == 2
    assert run(capsys, "verify", "--ideal", "W")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    code, _, err = run(capsys, "verify", "--type", "B4", "--ideal", "W", "--cap", "10")
    assert code == 2 and "error" in err


def test_coxeter_file(capsys, tmp_path):
    f = tmp_path / "a2.json"
    f.write_text(json.dumps({"labels": ["s", "t"], "m": [[1, 3], [3, 1]]}))
    code, out, _ = run(capsys, "verify", "--coxeter", str(f), "--ideal", "gen:[st]", "--j", "s")
    assert code == 0
    assert json.loads(out)["ideal"] == ["1", "t", "st"]


def test_determinism(capsys):
    first = run(capsys, "verify", *B4, "--diagnose-choices")[1]
    second = run(capsys, "verify", *B4, "--diagnose-choices")[1]
    assert first == second
    a = run(capsys, "biideal", "--type", "I2(6)", "--ideal", "ball:1")[1]
    assert a == run(capsys, "biideal", "--type", "I2(6)", "--ideal", "ball:1")[1]


def test_graph_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "--type", "B2", "--ideal", "W")
    data = json.loads(out)
    g = graph_from_json(data["graph"])
    assert verify_wgraph(g).ok == data["isIdeal"] is True
    _, bad, _ = run(capsys, "verify", *B4)
    assert not verify_wgraph(graph_from_json(json.loads(bad)["graph"])).ok


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "cells", "--type", "I2(3)", "--ideal", "W", "--out", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert len(data["cells"]) == 4


def test_diagnose_choices(capsys):
    _, out, _ = run(capsys, "verify", "--type", "A3", "--ideal", "W", "--diagnose-choices")
    assert json.loads(out)["choiceDisagreements"] == []
    _, out, _ = run(capsys, "verify", "--type", "A3", "--ideal", "W")
    assert "choiceDisagreements" not in json.loads(out)


def test_kl(capsys):
    code, out, _ = run(capsys, "kl", "--type", "I2(3)")
    assert code == 0
    data = json.loads(out)
    assert data["formulaHolds"]
    got = {e["w"]: e["poly"]["text"] for e in data["cLongest"]}
    assert got == {"1": "-q^3", "s": "q^2", "t": "q^2", "st": "-q", "ts": "-q", "sts": "1"}


def test_restrict(capsys):
    code, out, _ = run(capsys, "restrict", "--type", "I2(3)", "--ideal", "words:[1,s,t,st,ts]", "--k", "s")
    assert code == 0
    pieces = json.loads(out)["pieces"]
    assert [(p["d"], p["ideal"], p["L"]) for p in pieces] == [
        ("1", ["1", "s"], []), ("t", ["1", "s"], []), ("ts", ["1"], [])]


def test_induce(capsys):
    code, out, _ = run(capsys, "induce", "--type", "I2(3)", "--k", "s", "--ideal", "words:[1]", "--j", "s")
    assert code == 0
    assert json.loads(out)["ideal"] == ["1", "t", "st"]
    assert run(capsys, "induce", "--type", "I2(3)", "--k", "s", "--ideal", "words:[1]", "--j", "t")[0] == 2


def test_biideal(capsys):
    code, out, _ = run(capsys, "biideal", "--type", "I2(3)", "--ideal", "words:[1,t]", "--j", "s", "--k", "s")
    data = json.loads(out)
    assert code == 1 and data["isIdeal"] and data["rightVerified"] and not data["bimodule"]
    assert data["witness"] is not None
    code, out, _ = run(capsys, "biideal", "--type", "I2(4)", "--ideal", "ball:1")
    data = json.loads(out)
    assert code == 0
    assert data["twoSidedGraph"]["generators"] == ["s", "t", "s~", "t~"]
    code, out, _ = run(capsys, "biideal", "--type", "I2(4)", "--ideal", "ball:1", "--format", "dot")
    assert code == 0 and "digraph" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify-rank2", "ideal", "--m", "6")
    assert code == 0
    data = json.loads(out)
    props = sorted(e["ideal"] for e in data["accepted"] if e["J"] == ["s"])
    lengths = sorted(len(i) - 1 for i in props)
    # k in {0, 1, 4} plus the whole of D_{s} (k = 5)
    assert lengths == [0, 1, 4, 5]
    code, out, _ = run(capsys, "classify-rank2", "biideal", "--m", "4")
    assert code == 0
    empty = sorted(len(e["ideal"]) for e in json.loads(out)["accepted"] if not e["J"] and not e["K"])
    assert empty == [1, 2, 2, 3, 7, 8]
    assert run(capsys, "classify-rank2", "--m", "1")[0] == 2
    assert run(capsys, "classify-rank2")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "wgideal", "verify", "--type", "A1xA1", "--ideal", "W"],
                         capture_output=True, text=True)
    assert res.returncode in (0, 2)
    res = subprocess.run([sys.executable, "-m", "wgideal", "verify", "--type", "I2(3)", "--ideal", "W"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["isIdeal"]
