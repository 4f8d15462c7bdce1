import json
import subprocess
import sys

import pytest

from conftest import DATA
from quiverflag.cli import main
from quiverflag.quiver import load_spec, spec_from_json


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_analyze_p2_bundle_over_p1(capsys):
    doc = report(capsys, "analyze", DATA / "p2_bundle_over_p1.json")
    assert doc["dim"] == "3"
    assert doc["antican"] == ["0", "3"]
    assert doc["fano"] is False
    assert doc["theta"] == ["-2", "1", "1"]


def test_analyze_tower(capsys):
    doc = report(capsys, "analyze", DATA / "p2_bundle_tower.json")
    assert doc["dim"] == "7"
    assert doc["antican"] == ["-3", "3", "3"]
    assert doc["s"] == ["2", "5", "3"]


def test_analyze_is_deterministic(capsys):
    first = run(capsys, "analyze", DATA / "grassmann_bundle_122.json")
    second = run(capsys, "analyze", DATA / "grassmann_bundle_122.json")
    assert first == second


def test_every_number_is_a_string(capsys):
    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert not isinstance(x, (int, float)) or isinstance(x, bool)

    walk(report(capsys, "tilting", DATA / "kronecker_4_2.json"))
    walk(report(capsys, "plucker", DATA / "grassmann_bundle_122.json"))
    walk(report(capsys, "cohomology", DATA / "p2_bundle_tower.json", "--theta", "-2,0,0"))


def test_cyclic_input_is_rejected(capsys):
    code, out, err = run(capsys, "analyze", DATA / "cyclic.json")
    assert code == 2 and out == "" and "error" in err


def test_missing_file_and_bad_json(capsys, tmp_path):
    assert run(capsys, "analyze", tmp_path / "nope.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", bad)[0] == 2
    assert run(capsys, "cohomology", DATA / "p2_bundle_tower.json", "--theta", "a,b")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_empty_moduli_exit_code(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"vertices": 2, "arrows": [[0, 1], [0, 1]], "dims": [1, 3]}))
    code, _, err = run(capsys, "analyze", path)
    assert code == 3 and "empty" in err


def test_tilting_needs_strict_spec(capsys, tmp_path):
    path = tmp_path / "loose.json"
    path.write_text(json.dumps({"vertices": 3, "arrows": [[0, 1], [0, 1], [1, 2]], "dims": [1, 1, 1]}))
    code, _, err = run(capsys, "tilting", path)
    assert code == 4 and "simplify" in err
    simplified = report(capsys, "simplify", path)
    assert simplified["labels"] == [0, 1]
    out = tmp_path / "simplified.json"
    out.write_text(json.dumps(simplified))
    assert report(capsys, "tilting", out)["count"] == "2"


def test_tilting_reports(capsys):
    doc = report(capsys, "tilting", DATA / "p2_bundle_over_p1.json")
    assert doc["count"] == "6" and doc["all_in_range"] is True
    doc = report(capsys, "tilting", DATA / "kronecker_4_2.json", "--jobs", "2")
    assert (doc["count"], doc["rank"], doc["endomorphism_dim"]) == ("6", "10", "138")
    assert report(capsys, "tilting", DATA / "flag_4_2_1.json")["count"] == "12"


def test_cohomology_command(capsys):
    doc = report(capsys, "cohomology", DATA / "p2_bundle_tower.json", "--theta", "-2,0,0")
    assert int(doc["h"][1]) >= 1 and doc["stabilized"] is True
    doc = report(capsys, "cohomology", DATA / "p2_bundle_tower.json", "--theta=4,-5,0", "--radius", "8")
    assert doc["h"][4] == "1" and doc["radius"] == "8"
    code, _, _ = run(capsys, "cohomology", DATA / "kronecker_4_2.json", "--theta", "1")
    assert code == 4


def test_cohomology_budget_exit(capsys):
    code, out, err = run(capsys, "cohomology", DATA / "p2_bundle_tower.json", "--theta", "3,3,3", "--radius", "1")
    assert code == 5 and "budget" in err
    partial = json.loads(out)
    assert partial["stabilized"] is False


def test_sections_f2(capsys):
    doc = report(capsys, "sections", DATA / "hirzebruch_f2.json", "--degrees", "0,0;1,0;0,1")
    assert doc["binomials"] == ["y1y5 - y2y4"]
    assert doc["weakly_exceptional"] is True
    assert doc["multiplication_surjective"] is True
    spec = spec_from_json(doc)
    assert spec.quiver.arrows == load_spec(DATA / "p2_bundle_over_p1.json").quiver.arrows


def test_sections_rejects_bad_order(capsys):
    code, _, err = run(capsys, "sections", DATA / "hirzebruch_f2.json", "--degrees", "0,0;0,1;1,0")
    assert code == 4


def test_plucker_command(capsys):
    doc = report(capsys, "plucker", DATA / "grassmann_bundle_122.json", "--counts", "0,1:6;0,2:24;1,2:2")
    assert doc["ambient"] == {
        "counts": [["0", "1", "6"], ["0", "2", "24"], ["1", "2", "2"]],
        "dim": "30",
        "codim": "20",
        "counts_injected": True,
    }
    assert doc["mode"] == "generic-rank"
    doc = report(capsys, "plucker", DATA / "flag_4_2_1.json")
    assert doc["ambient"]["dim"] == "8"
    assert report(capsys, "plucker", DATA / "p2_bundle_over_p1.json")["mode"] == "toric-exact"
    assert run(capsys, "plucker", DATA / "kronecker_4_2.json", "--mode", "toric-exact")[0] == 4


def test_probe_command(capsys):
    doc = report(capsys, "probe-cox", DATA / "p2_bundle_over_p1.json", "--bound", "2")
    assert len(doc["degrees"]) == 9 and doc["all_surjective"] is True


def test_stability_command(capsys, tmp_path):
    doc = report(capsys, "stability", DATA / "p2_bundle_over_p1.json", DATA / "p2_bundle_over_p1_rep.json")
    assert doc["verdict"] == "stable"
    bad = tmp_path / "rep.json"
    bad.write_text(json.dumps({"matrices": [[["0", "0"]], [["0", "1", "0"]]]}))
    doc = report(capsys, "stability", DATA / "p2_bundle_over_p1.json", bad)
    assert doc["verdict"] == "unstable"
    bad.write_text(json.dumps({"matrices": [[["1"]]]}))
    assert run(capsys, "stability", DATA / "p2_bundle_over_p1.json", bad)[0] == 2


def test_reports_round_trip(capsys):
    for argv in [
        ("analyze", DATA / "flag_4_2_1.json"),
        ("simplify", DATA / "p2_bundle_tower.json"),
        ("probe-cox", DATA / "p2_bundle_over_p1.json", "--bound", "1"),
    ]:
        code, out, _ = run(capsys, *argv)
        assert code == 0
        doc = json.loads(out)
        assert json.loads(json.dumps(doc, indent=2)) == doc


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quiverflag.cli", "analyze", str(DATA / "p2_bundle_over_p1.json")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dim"] == "3"
