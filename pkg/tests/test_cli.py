import json

import pytest

from tnncells.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cells(capsys, tmp_path):
    csv = tmp_path / "census.csv"
    code, out, _ = run(capsys, "cells", "--type", "A2", "--csv", str(csv))
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 19 and doc["census"] == [6, 8, 4, 1]
    assert csv.read_text() == "dim,cells\n0,6\n1,8\n2,4\n3,1\n"
    code, out, _ = run(capsys, "cells", "--type", "A3", "--J", "2")
    assert json.loads(out)["count"] == 85


def test_param(capsys):
    code, out, _ = run(capsys, "param", "--type", "A2")
    doc = json.loads(out)
    assert code == 0 and doc["v_plus"] == []
    assert doc["params"] == ["t1", "t2", "t3"]
    assert doc["matrix"] == [["1", "0", "0"], ["t1 + t3", "1", "0"], ["t2*t3", "t2", "1"]]
    code, out, _ = run(capsys, "param", "--type", "C2", "--v", "1")
    assert code == 0 and json.loads(out)["folding"]["sigma"] == [3, 2, 1]


def test_certify_and_fold(capsys):
    code, out, _ = run(capsys, "certify", "--type", "A2")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "fold", "--type", "C2")
    doc = json.loads(out)
    assert code == 0 and doc["cells"] == 33 and not doc["tau_symmetry_failures"]


def test_usage_errors(capsys):
    assert run(capsys, "param", "--type", "A2", "--w-word", "1,1")[0] == 2
    assert run(capsys, "param", "--type", "A2", "--w-word", "1", "--v", "2")[0] == 2
    assert run(capsys, "param", "--type", "A2", "--v", "5")[0] == 2
    assert run(capsys, "cells", "--type", "Q7")[0] == 2
    assert run(capsys, "cells", "--type", "A2", "--J", "5")[0] == 2
    assert run(capsys, "param", "--type", "B2")[0] == 2
    assert run(capsys, "check", "--type", "A2", "--suite", "nope")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["cells"])
    assert exc.value.code == 2


def test_polytope_and_figures(capsys, tmp_path):
    code, out, _ = run(capsys, "polytope", "--type", "A2", "--figures", str(tmp_path))
    doc = json.loads(out)
    assert code == 0 and doc["f_vector"] == [8, 13, 7, 1]
    code, out, _ = run(capsys, "poset", "--type", "A2", "--J", "1", "--figures", str(tmp_path))
    assert code == 0 and json.loads(out)["census"] == [3, 3, 1]
    code, out, _ = run(capsys, "glue-scan", "--type", "A2", "--figures", str(tmp_path))
    assert code == 0 and json.loads(out)["ok"]
    pngs = sorted(p.name for p in tmp_path.glob("*.png"))
    assert len(pngs) == 3 and all((tmp_path / p).stat().st_size > 1000 for p in pngs)


def test_check_is_deterministic(capsys, tmp_path):
    outs = []
    for k in range(2):
        f = tmp_path / f"run{k}.json"
        code, _, err = run(capsys, "check", "--type", "A2", "--suite", "census", "--out", str(f))
        assert code == 0 and err.startswith("PASS census")
        outs.append(f.read_text())
    assert outs[0] == outs[1]


def test_check_reports_failures(capsys):
    code, out, err = run(capsys, "check", "--type", "A2", "--suite", "braid")
    doc = json.loads(out)
    assert "FAIL braid" in err and code == 1
    rules = doc["results"][0]["details"]["rules"]
    assert rules["exact_identity"]["2"] is False and all(rules["same_flag"].values())
    assert doc["results"][0]["details"]["invariance"]["failures"] == []
