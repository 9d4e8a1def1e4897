import json

import pytest

from coxshadow.automata import equivalent, import_json
from coxshadow.cli import main

INF = "rank 2; m 1 2 = inf"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "--system", "A2")
    assert code == 0
    assert "rank: 2" in out
    assert "N: 3" in out and "field degree: 1" in out
    code, out, _ = run(capsys, "info", "--system", "Gtilde2")
    assert "bonds: (6, 3, 2)" in out


def test_usage_errors(capsys):
    assert run(capsys, "info", "--system", "rank 2; m 1 2 = 1")[0] == 2
    assert run(capsys, "info")[0] == 2
    assert run(capsys, "frobnicate", "--system", "A2")[0] == 2
    assert run(capsys, "export", "--system", "A2", "--words", "s1 s9")[0] == 2
    assert run(capsys, "verify", "--system", "A2", "--radius", "-1")[0] == 2
    assert run(capsys, "render", "--system", "A2")[0] == 2


def test_caps_are_inconclusive(capsys):
    code, _, err = run(capsys, "--max-states", "5", "automaton", "--system", "Gtilde2")
    assert code == 3 and "inconclusive" in err
    assert run(capsys, "--max-ball", "50", "export", "--system", "Atilde2", "--ball", "10")[0] == 3


def test_verify_report(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--system", INF, "--radius", "8", "--report", str(report))
    assert code == 0
    assert out.splitlines()[-1].split() == ["overall", "pass"]
    data = json.loads(report.read_text())
    assert data["status"] == "pass" and data["failures"] == []
    assert [s["suite"] for s in data["suites"]] == ["automata", "shi", "cone", "shadow", "bipodality", "agreement"]


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--system", "B2", "--suite", "shadow", "--radius", "6")
    assert code == 0 and out.startswith("shadow")


def test_verify_jobs(capsys):
    code, _, _ = run(capsys, "--jobs", "2", "verify", "--system", "A2", "--radius", "4")
    assert code == 0


def test_automaton_outputs(capsys, tmp_path):
    dot, js = tmp_path / "a.dot", tmp_path / "a.json"
    code, out, _ = run(capsys, "automaton", "--system", "A2", "--kind", "minimal", "--dot", str(dot), "--json", str(js))
    assert code == 0 and "6 states" in out
    assert dot.read_text().startswith("digraph")
    assert import_json(js.read_text()).n_states == 6


def test_cache_round_trip(capsys, tmp_path):
    cache = str(tmp_path / "cache")
    first, second = tmp_path / "1.json", tmp_path / "2.json"
    assert run(capsys, "--cache-dir", cache, "automaton", "--system", "Btilde2", "--json", str(first))[0] == 0
    assert any(p.suffix == ".json" for p in (tmp_path / "cache").iterdir())
    assert run(capsys, "--cache-dir", cache, "automaton", "--system", "Btilde2", "--json", str(second))[0] == 0
    assert equivalent(import_json(first.read_text()), import_json(second.read_text()))
    code, out, _ = run(capsys, "--cache-dir", cache, "info", "--system", "Btilde2")
    assert "small roots: 8" in out and "brink-howlett states: 25" in out


def test_shi_and_cones(capsys, tmp_path):
    code, out, _ = run(capsys, "shi", "--system", "Gtilde2", "--ball", "12")
    assert code == 0
    parts = json.loads(out)["parts"]
    assert len(parts) == 49
    assert sum(1 for p in parts if p["size_in_ball"]) == 45
    code, out, _ = run(capsys, "shi", "--system", "Atilde2", "--format", "csv")
    assert len(out.strip().splitlines()) == 17
    dot = tmp_path / "c.dot"
    code, out, _ = run(capsys, "cones", "--system", "Gtilde2", "--dot", str(dot))
    assert code == 0 and len(json.loads(out)["states"]) == 41
    assert dot.exists()


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--system", "Gtilde2")
    assert code == 0
    assert len(json.loads(out)["small_roots"]) == 12
    code, out, _ = run(capsys, "roots", "--system", "B2", "--format", "csv")
    assert len(out.strip().splitlines()) == 5


def test_growth(capsys):
    code, out, _ = run(capsys, "growth", "--system", "Atilde2", "--max-length", "4", "--elements")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "length,reduced_words,elements"
    assert rows[3] == "2,6,6"


def test_export(capsys, tmp_path):
    out_file = tmp_path / "e.json"
    assert run(capsys, "export", "--system", INF, "--ball", "3", "--out", str(out_file))[0] == 0
    assert len(json.loads(out_file.read_text())["elements"]) == 7
    code, out, _ = run(capsys, "export", "--system", "A2", "--words", "s1 s2 s1", "s2 s1 s2")
    elts = json.loads(out)["elements"]
    assert elts[0] == elts[1]


@pytest.mark.parametrize("coloring", ["shi", "cone"])
def test_render(capsys, tmp_path, coloring):
    svg = tmp_path / "p.svg"
    code, out, _ = run(capsys, "render", "--system", "Atilde2", "--radius", "6", "--coloring", coloring, "--out", str(svg))
    assert code == 0 and "16 parts" in out
    assert svg.read_text().startswith("<svg")
