import json

import pytest

from bicellular.cli import main
from bicellular.map_core import format_map
from bicellular.oracle import enumerate_planted_bicellular


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    code, out, err = run(capsys, "count", "--family", "bi", "--g", "1", "--n", "5", "--cross-check")
    assert code == 0
    assert out == "family,g,n,count\nbi,1,5,5440\n"
    assert "# 5440 5440 5440" in err
    code, out, _ = run(capsys, "count", "--family", "trees", "--n", "3")
    assert out.splitlines()[-1] == "trees,0,3,5"
    code, out, _ = run(capsys, "count", "--family", "diagrams", "--g", "1", "--len", "3")
    assert code == 0 and out.splitlines()[-1] == "diagrams,1,3,all,0"
    code, out, _ = run(capsys, "count", "--family", "diagrams", "--g", "1", "--len", "10", "--n", "3:5",
                       "--cross-check")
    assert code == 0 and out.splitlines()[1:] == ["diagrams,1,10,3,4410", "diagrams,1,10,4,19800",
                                                 "diagrams,1,10,5,5440"]


def test_count_csv_and_manifest(tmp_path, capsys):
    out = tmp_path / "c.csv"
    man = tmp_path / "m.json"
    code, _, _ = run(capsys, "--manifest", str(man), "count", "--family", "uni", "--g", "1", "--n", "0:4",
                     "--out", str(out))
    assert code == 0
    assert out.read_text().splitlines()[-1] == "uni,1,4,70"
    m = json.loads(man.read_text())
    assert m["command"] == "count" and m["status"] == 0
    assert m["outputs"][0]["path"] == str(out)


def test_sample_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for p in (a, b):
        assert main(["sample", "--mode", "matching", "--g", "1", "--n", "5", "--N", "20",
                     "--seed", "3", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 20
    code, out, _ = run(capsys, "sample", "--mode", "diagram", "--g", "1", "--len", "12", "--N", "5",
                       "--seed", "3", "--threads", "2")
    code2, out2, _ = run(capsys, "sample", "--mode", "diagram", "--g", "1", "--len", "12", "--N", "5",
                         "--seed", "3")
    assert out == out2 and code == code2 == 0


def test_sample_empty(tmp_path, capsys):
    man = tmp_path / "m.json"
    code, out, _ = run(capsys, "--manifest", str(man), "sample", "--g", "1", "--n", "5", "--N", "0")
    assert code == 0 and out == ""
    assert json.loads(man.read_text())["output_sha256"]
    code, _, err = run(capsys, "sample", "--g", "1", "--n", "2", "--N", "1")
    assert code != 0 and "error" in err


def test_seed_from_env(monkeypatch, capsys):
    monkeypatch.setenv("BICELLULAR_SEED", "5")
    _, env_out, _ = run(capsys, "sample", "--g", "0", "--n", "6", "--N", "3")
    _, flag_out, _ = run(capsys, "sample", "--g", "0", "--n", "6", "--N", "3", "--seed", "5")
    assert env_out == flag_out


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text('[count]\nfamily = "bi"\ng = 2\nn = "5"\n')
    man = tmp_path / "m.json"
    code, out, _ = run(capsys, "--config", str(cfg), "--manifest", str(man), "count")
    assert code == 0 and out.splitlines()[-1] == "bi,2,5,1485"
    assert json.loads(man.read_text())["config_file"] == {"count": {"family": "bi", "g": 2, "n": "5"}}


def test_decompose_rebuild(tmp_path, capsys):
    m = enumerate_planted_bicellular(4, 1).instances[17]
    src = tmp_path / "m.txt"
    src.write_text(format_map(m))
    code, trace, _ = run(capsys, "decompose", "--in", str(src), "--trisection", "2")
    assert code == 0 and trace.startswith("# format: map")
    tr = tmp_path / "t.txt"
    tr.write_text(trace)
    code, out, _ = run(capsys, "rebuild", "--in", str(tr))
    assert code == 0 and out == src.read_text()
    code, _, err = run(capsys, "decompose", "--in", str(src), "--trisection", "4")
    assert code != 0 and "out of range" in err


def test_genus0_trace(tmp_path, capsys):
    src = tmp_path / "d.txt"
    src.write_text("2 2 | 1-3 2-4\n")
    code, trace, _ = run(capsys, "decompose", "--in", str(src))
    steps = [x for x in trace.splitlines() if x.startswith("step")]
    assert code == 0 and len(steps) == 1 and steps[0].startswith("step connect:")
    tr = tmp_path / "t.txt"
    tr.write_text(trace)
    code, out, _ = run(capsys, "rebuild", "--in", str(tr))
    assert out == "2 2 | 1-3 2-4\n"


def test_stats(tmp_path, capsys):
    man = tmp_path / "m.json"
    code, _, _ = run(capsys, "--manifest", str(man), "stats", "--len", "40", "--g", "1", "--N", "50",
                     "--out", str(tmp_path / "h"))
    assert code == 0
    m = json.loads(man.read_text())
    assert len(m["outputs"]) == 5 and m["violations"] == 0


def test_verify_counts(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "counts")
    assert code == 0 and out.startswith("PASS 2")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["count", "--bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        main(["count", "--family", "bi", "--n", "3:1"])
