from __future__ import annotations

import json
import os
from pathlib import Path

import pytest

import stperm.sections as sections_mod
from stperm import cli
from stperm.catalog import catalog_dir
from stperm.formats import shipped_complexes_dir

GOLDEN = Path(__file__).parent / "golden"
SHIPPED = shipped_complexes_dir()

GOLDEN_COMMANDS = {
    "analyze_q8.txt": ["analyze", "Q8", "--prime", "2"],
    "analyze_c9.json": ["analyze", "C9", "--prime", "3", "--emit", "json"],
    "analyze_s4.json": ["analyze", "S4", "--prime", "2", "--emit", "json"],
    "analyze_sl2f3.dot": ["analyze", "SL2F3", "--prime", "2", "--emit", "dot"],
    "eqperf_cp_acyclic.json": ["eqperf", str(SHIPPED / "cp_acyclic.json"), "--emit", "json"],
    "eqperf_v4_koszul.txt": ["eqperf", str(SHIPPED / "v4_koszul.json")],
    "eqperf_kg_free.txt": ["eqperf", str(SHIPPED / "kg_free.json")],
    "survey_p2.txt": ["survey", "--prime", "2", "--max-order", "32"],
    "survey_p3.txt": ["survey", "--prime", "3", "--max-order", "27"],
    "spectrum_c8.dot": ["spectrum", "C8", "--prime", "2", "--emit", "dot"],
    "spectrum_q8.json": ["spectrum", "Q8", "--prime", "2", "--emit", "json"],
    "spectrum_v4.txt": ["spectrum", "V4", "--prime", "2"],
}


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(GOLDEN_COMMANDS))
def test_golden_output(name, capsys):
    code, out, _ = run(GOLDEN_COMMANDS[name], capsys)
    assert code == 0
    path = GOLDEN / name
    if os.environ.get("STPERM_UPDATE_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()
    code2, out2, _ = run(GOLDEN_COMMANDS[name], capsys)
    assert out2 == out


def test_analyze_c9(capsys):
    code, out, _ = run(["analyze", "C9", "--prime", "3", "--emit", "json"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == "report.v1"
    assert doc["verdict"]["label"] == "cyclic_sylow(2)"
    assert doc["verdict"]["components"] == 2
    assert doc["verdict"]["route_a"] == doc["verdict"]["route_b"] == 2
    assert len(doc["notes"]) == 1


def test_analyze_q8(capsys):
    code, out, _ = run(["analyze", "Q8", "--prime", "2", "--emit", "json"], capsys)
    v = json.loads(out)["verdict"]
    assert v["kind"] == "quaternion_sylow" and v["components"] == 2
    assert v["factors"] == ["StPerm(V_4;k)", "StMod(kQ_8)"]


def test_analyze_s4(capsys):
    code, out, _ = run(["analyze", "S4", "--prime", "2", "--emit", "json"], capsys)
    doc = json.loads(out)
    assert doc["verdict"]["kind"] == "indecomposable"
    assert [c["representative"] for c in doc["classes"]][0] == [0]
    assert doc["bottleneck"]["holds"] is False


def test_analyze_writes_files(tmp_path, capsys):
    code, _, _ = run(["analyze", "Q8", "--prime", "2", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["report.json", "sections.dot", "spectrum.dot"]
    assert json.loads((tmp_path / "report.json").read_text())["verdict"]["components"] == 2
    assert (tmp_path / "spectrum.dot").read_text().count("subgraph cluster_") == 2


def test_coprime_prime_warns(capsys):
    code, out, err = run(["analyze", "S3", "--prime", "5"], capsys)
    assert code == 0
    assert "does not divide" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "NoSuchGroup", "--prime", "2"],
        ["analyze", "S3", "--prime", "4"],
        ["eqperf", "/nonexistent/complex.json"],
        ["spectrum", "V4"],
        ["bogus"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_invalid_complex_exit_2_names_the_invariant(tmp_path, capsys):
    doc = {
        "prime": 3,
        "group": "C3",
        "terms": [{"degree": d, "orbits": ["G"]} for d in range(3)],
        "differentials": [{"degree": 1, "matrix": [[1]]}, {"degree": 2, "matrix": [[1]]}],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["eqperf", str(path)], capsys)
    assert code == 2 and "!= 0" in err


def test_route_mismatch_exit_3(monkeypatch, capsys):
    monkeypatch.setattr(sections_mod, "component_count", lambda G, p: 7)
    code, out, err = run(["analyze", "D8", "--prime", "2", "--emit", "json"], capsys)
    assert code == 3
    doc = json.loads(out)
    assert doc["verdict"]["consistent"] is False
    assert any("INCONSISTENT" in n for n in doc["notes"])
    code, _, _ = run(["survey", "--prime", "2", "--max-order", "8"], capsys)
    assert code == 3


def test_self_check(capsys):
    for argv in (
        ["--self-check", "analyze", "A4", "--prime", "2"],
        ["analyze", "SL2F3", "--prime", "2", "--self-check"],
        ["--self-check", "eqperf", str(SHIPPED / "v4_koszul.json")],
        ["--self-check", "spectrum", "S3", "--prime", "3"],
    ):
        code, _, _ = run(argv, capsys)
        assert code == 0
    assert cli.self_check(__import__("stperm").catalog("D8"), 2) == []


def test_self_check_failure_exits_3(monkeypatch, capsys):
    monkeypatch.setattr(cli, "self_check", lambda G, p, **kw: ["boom"])
    code, _, err = run(["--self-check", "analyze", "V4", "--prime", "2"], capsys)
    assert code == 3 and "boom" in err


def test_eqperf_expectations(capsys):
    expected = {"cp_acyclic.json": (True, True), "v4_koszul.json": (True, False), "kg_free.json": (True, True)}
    for name, (perfect, eq_perf) in expected.items():
        code, out, _ = run(["eqperf", str(SHIPPED / name), "--emit", "json"], capsys)
        doc = json.loads(out)
        assert code == 0 and (doc["perfect"], doc["eq_perf"]) == (perfect, eq_perf)


def test_survey_contents(capsys):
    code, out, _ = run(["survey", "--prime", "2", "--max-order", "32", "--emit", "json"], capsys)
    rows = json.loads(out)["rows"]
    assert code == 0 and all(r["status"] == "PASS" for r in rows)
    flagged = {r["group"] for r in rows if r["bottleneck"]}
    assert flagged == {"C4", "C8", "C16", "Q8", "Q16", "Q32"}
    assert all(r["surrounding_sections"] == "complete" for r in rows if not r["bottleneck"] and r["order"] >= 4)
    code, out, _ = run(["survey", "--prime", "3", "--max-order", "27", "--emit", "json"], capsys)
    flagged = {r["group"] for r in json.loads(out)["rows"] if r["bottleneck"]}
    assert flagged == {"C9", "C27"}


def test_empty_survey(capsys):
    code, out, _ = run(["survey", "--prime", "7", "--max-order", "40"], capsys)
    assert code == 0 and out.count("\n") == 1


def test_survey_raises_order_limit_for_large_max_order(capsys):
    code, out, _ = run(["survey", "--prime", "5", "--max-order", "625"], capsys)
    assert code == 0 and "C625" in out


def test_spectrum_commands(capsys):
    code, out, _ = run(["spectrum", "C8", "--prime", "2", "--emit", "dot"], capsys)
    assert code == 0 and out.count("[label=") == 7
    code, out, _ = run(["spectrum", "Q8", "--prime", "2", "--emit", "json"], capsys)
    doc = json.loads(out)
    assert len([q for q in doc["points"] if q["kind"] == "closed"]) == 6
    assert len(doc["components"]) == 2
    code, out, _ = run(["spectrum", "V4", "--prime", "2"], capsys)
    assert "P^1 plus 3 points" in out


def test_group_file_argument(tmp_path, capsys):
    path = tmp_path / "klein.json"
    path.write_text(json.dumps({"name": "Klein", "generators": [[1, 0, 3, 2], [2, 3, 0, 1]]}))
    code, out, _ = run(["analyze", str(path), "--prime", "2", "--emit", "json"], capsys)
    assert code == 0 and json.loads(out)["verdict"]["kind"] == "indecomposable"


def test_catalog_env_var(tmp_path, monkeypatch, capsys):
    (tmp_path / "c5.json").write_text(json.dumps({"name": "Five", "order": 5, "generators": [[1, 2, 3, 4, 0]]}))
    monkeypatch.setenv("STPERM_CATALOG_DIR", str(tmp_path))
    code, out, _ = run(["analyze", "Five", "--prime", "5"], capsys)
    assert code == 0 and "cyclic_sylow(1)" in out
    code, _, _ = run(["analyze", "Q8", "--prime", "2"], capsys)
    assert code == 2
    assert catalog_dir() == tmp_path


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "stperm", "analyze", "C4", "--prime", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and "cyclic_sylow(2)" in r.stdout
