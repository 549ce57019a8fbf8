import io
import json

import pytest

from dsombor.cli import main
from dsombor.graph import parse_graph6


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_k3(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["compute", "--indices", "dso,so"], "Bw\n")
    assert code == 0
    header, row = out.strip().split("\n")
    assert header == "graph6,n,m,delta,Delta,dso,so"
    cells = row.split(",")
    assert cells[:5] == ["Bw", "3", "3", "2", "2"]
    assert float(cells[5]) == pytest.approx(2.121320344, abs=1e-9)
    assert float(cells[6]) == pytest.approx(8.485281374, abs=1e-9)


def test_compute_empty_input(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["compute"], "")
    assert code == 0 and out.count("\n") == 1


def test_compute_chi_alpha(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["compute", "--indices", "chi_alpha(-2)"], "Bw\n")
    assert code == 0 and out.strip().split("\n")[1].split(",")[-1] == "0.1875"


def test_compute_json(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["compute", "--format", "json", "--indices", "pi_f,dso"], "Ch\n")
    rows = json.loads(out)
    assert code == 0 and rows[0]["pi_f"] == 200 and rows[0]["m"] == 3


def test_compute_parse_error(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["compute"], "Bw\n\nB!\n")
    assert code == 2 and "line 3" in err


def test_unknown_tokens(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["compute", "--indices", "nope"], "")
    assert code == 1 and "dso" in err
    code, _, err = run(capsys, monkeypatch, ["sweep", "--n-max", "3", "--bounds", "T-X"])
    assert code == 1 and "T-SO-upper" in err


def test_bad_config(capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["sweep", "--n-max", "9"])[0] == 1
    assert run(capsys, monkeypatch, ["sweep", "--n-max", "8"])[0] == 1
    assert run(capsys, monkeypatch, ["sweep", "--n-max", "3", "--tolerance", "0"])[0] == 1
    assert run(capsys, monkeypatch, ["enumerate", "--n", "3", "--n-max", "4"])[0] == 1
    assert run(capsys, monkeypatch, ["bogus"])[0] == 1
    assert run(capsys, monkeypatch, ["gen", "--family", "cycle", "--n", "2"])[0] == 1


def test_enumerate_connected_5(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["enumerate", "--n", "5", "--connected"])
    assert code == 0 and len(out.split()) == 21


def test_gen_star(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["gen", "--family", "star", "--n", "4"])
    g = parse_graph6(out.strip())
    assert code == 0 and sorted(g.degrees()) == [1, 1, 1, 3]


def test_gen_random(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["gen", "--family", "random_regular", "--n", "8", "--d", "3",
                                             "--seed", "42", "--count", "3"])
    lines = out.split()
    assert code == 0 and len(lines) == 3
    assert all(set(parse_graph6(x).degrees()) == {3} for x in lines)


def test_extremal(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["extremal", "--n", "4", "--connected", "--index", "dso",
                                             "--direction", "max"])
    res = json.loads(out)
    assert code == 0 and res["witnesses"] == ["C~"]
    assert res["value"] == pytest.approx(4.242640687, abs=1e-9)


def test_sweep_so_upper_connected(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["sweep", "--n-max", "4", "--connected", "--bounds",
                                             "T-SO-upper", "--jobs", "1"])
    doc = json.loads(out)
    achievers = {parse_graph6(x) for x in doc["bounds"][0]["equality_achievers"]}
    assert code == 0
    assert sorted((g.n, g.m) for g in achievers) == [(2, 1), (3, 3), (4, 4), (4, 6)]


def test_sweep_k2_bso_upper(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["sweep", "--n-max", "2", "--bounds", "T-BSO-upper", "--jobs", "1"])
    doc = json.loads(out)
    assert code == 0 and doc["bounds"][0]["equality_achievers"] == ["A_"]
    assert set(doc) == {"meta", "bounds", "audit"}


def test_sweep_exit_on_violation(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["sweep", "--n-max", "3", "--bounds", "T-BSO-upper", "--jobs", "1"])
    assert code == 3
    assert json.loads(out)["bounds"][0]["violations"][0]["graph6"] == "Bw"


def test_sweep_csv(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["sweep", "--n-max", "3", "--bounds", "T-SO-upper,L-H",
                                             "--format", "csv", "--jobs", "1"])
    lines = out.strip().split("\n")
    assert code == 0 and lines[0].startswith("graph6,bound,applicable")
    assert len(lines) == 1 + 7 * 2


def test_verify_file(tmp_path, capsys, monkeypatch):
    path = tmp_path / "in.g6"
    path.write_text(">>graph6<<Bw\nC~\n")
    code, out, _ = run(capsys, monkeypatch, ["verify", "-i", str(path), "--bounds", "T-SO-upper", "--jobs", "1"])
    doc = json.loads(out)
    assert code == 0 and doc["meta"]["graph_count"] == 2
    assert doc["bounds"][0]["equality_achievers"] == ["Bw", "C~"]


def test_verify_parse_error(tmp_path, capsys, monkeypatch):
    path = tmp_path / "in.g6"
    path.write_text("Bw\nBww\n")
    code, out, err = run(capsys, monkeypatch, ["verify", "-i", str(path), "--jobs", "1"])
    assert code == 2 and "line 2" in err
    assert json.loads(out)["meta"]["errors"][0]["item"] == "line 2"


def test_timestamp_opt_in(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["sweep", "--n-max", "2", "--bounds", "L-H", "--jobs", "1"])
    assert "timestamp" not in json.loads(out)["meta"]
    _, out, _ = run(capsys, monkeypatch, ["sweep", "--n-max", "2", "--bounds", "L-H", "--jobs", "1", "--timestamp"])
    assert "timestamp" in json.loads(out)["meta"]
