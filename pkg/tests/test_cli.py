import json
import shutil
import subprocess
import sys

import pytest

from coxgrow import fixture_path
from coxgrow.cli import main

from conftest import VALID_FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def fx(name):
    return str(fixture_path(name))


# --- growth -----------------------------------------------------------------------------

def test_growth_octahedron(capsys):
    code, rep = run_json(capsys, "growth", fx("octahedron"))
    assert code == 0
    assert rep["growth_rate"] == {"outcome": "Rate", "lo": "5", "hi": "5", "exact": True}
    assert rep["perron"]["status"] == "Perron" and rep["perron"]["method"] == "Prop1"
    assert rep["h"] == "5t^2+4t-1"
    assert rep["family"] == "H2"
    assert rep["series"][:4] == [1, 8, 44, 224]
    assert rep["lemma2"]["passed"]
    assert rep["nonnegativity"]["passed"]


def test_growth_series_flag(capsys):
    code, rep = run_json(capsys, "growth", fx("octahedron"), "--series", "5")
    assert len(rep["series"]) == 5


def test_growth_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, _, err = run(capsys, "growth", str(bad))
    assert code == 1
    assert "polyhedron" in err


def test_growth_missing_file(capsys, tmp_path):
    code, out = run_json(capsys, "growth", str(tmp_path / "nope.json"))
    assert code == 1 and out["error"]["field"] == "input"


def test_growth_finite_matrix(capsys, tmp_path):
    doc = tmp_path / "a3.json"
    doc.write_text(json.dumps({"rank": 3, "orders": [[3, 2], [3]]}))
    code, rep = run_json(capsys, "growth", str(doc), "--matrix")
    assert code == 0
    assert rep["growth_rate"] == {"outcome": "Finite"}
    assert rep["counts"] == {"skipped": "Coxeter matrix input has no polyhedral counts"}
    assert rep["perron"]["status"] == "NotApplicable"


def test_growth_bad_vertex(capsys):
    code, rep = run_json(capsys, "growth", fx("bad_237"))
    assert code == 2 and not rep["validation"]["passed"]


def test_growth_text_format(capsys):
    code, out, _ = run(capsys, "growth", fx("octahedron"))
    assert code == 0
    assert "Perron" in out and "5t^2+4t-1" in out


def test_json_byte_stable(capsys):
    _, first, _ = run(capsys, "growth", fx("h23_elongated"), "--format", "json")
    _, second, _ = run(capsys, "growth", fx("h23_elongated"), "--format", "json")
    assert first == second
    assert first.index('"counts"') < first.index('"growth_function"')  # sorted keys


# --- check -------------------------------------------------------------------------------

def test_check_octahedron(capsys):
    code, rep = run_json(capsys, "check", fx("octahedron"))
    assert code == 0 and all(c["passed"] for c in rep["lemma2"]["checks"])


def test_check_bad_vertex(capsys):
    code, rep = run_json(capsys, "check", fx("bad_237"))
    assert code == 2 and not rep["vertex_condition"]["passed"]


def test_check_noncompact_flag(capsys):
    assert run_json(capsys, "check", fx("cube_compact"))[0] == 0
    code, rep = run_json(capsys, "check", fx("cube_compact"), "--noncompact")
    assert code == 2
    failed = [c["identity"] for c in rep["lemma2"]["checks"] if not c["passed"]]
    assert failed == ["cusp_present"]


# --- h-verify -----------------------------------------------------------------------------

def test_hverify_octahedron(capsys):
    code, rep = run_json(capsys, "h-verify", fx("octahedron"))
    assert code == 0 and rep["equal"]
    assert rep["h_closed_form"] == rep["h_from_growth"] == "5t^2+4t-1"


def test_hverify_h23456(capsys):
    code, rep = run_json(capsys, "h-verify", fx("h23456_elongated"))
    assert code == 0
    assert rep["difference"]["disagreeing_degrees"] == [17, 10, 8, 5, 0]


def test_hverify_m7(capsys):
    assert run_json(capsys, "h-verify", fx("m7_elongated"))[0] == 2


# --- sample ---------------------------------------------------------------------------------

def test_sample_h25(capsys):
    code, rep = run_json(capsys, "sample", "--family", "H25", "--seed", "7", "--n", "100")
    assert code == 0
    assert rep["summary"] == {"passed": 100, "failed": 0}
    assert all(v["e_m"]["5"] == 1 for v in rep["vectors"])


def test_sample_bad_family(capsys):
    assert run(capsys, "sample", "--family", "H7")[0] == 1


def test_sample_out_file(capsys, tmp_path):
    target = tmp_path / "s.json"
    code, rep = run_json(capsys, "sample", "--family", "H23", "--seed", "2", "--n", "5", "--out", str(target))
    assert code == 0 and rep["out"] == str(target)
    assert len(json.loads(target.read_text())["vectors"]) == 5


# --- polynomial commands ---------------------------------------------------------------------

def test_roots_command(capsys):
    code, rep = run_json(capsys, "roots", "--poly", "5t^2+4t-1")
    assert code == 0
    assert rep["smallest_modulus_root"]["enclosure"]["lo"] == "1/5"
    assert len(rep["real_roots"]) == 2


def test_roots_equal_modulus(capsys):
    code, rep = run_json(capsys, "roots", "--poly", "t^2-1")
    assert code == 3 and rep["smallest_modulus_root"]["status"] == "NotCertified"


def test_roots_bad_text(capsys):
    assert run(capsys, "roots", "--poly", "t^^2")[0] == 1


def test_perron_command(capsys):
    code, rep = run_json(capsys, "perron", "--poly", "5t^2+4t-1")
    assert code == 0
    assert rep["verdict"]["status"] == "Perron"
    assert rep["verdict"]["tau"] == {"lo": "5", "hi": "5", "exact": True}


def test_solomon_and_oracle(capsys):
    code, rep = run_json(capsys, "solomon", "--type", "H3")
    assert code == 0 and rep["exponents"] == [1, 5, 9] and rep["order"] == 120
    code, rep = run_json(capsys, "oracle", "--type", "B3")
    assert code == 0 and rep["agrees"] and rep["order"] == 48
    assert run(capsys, "oracle", "--type", "E8")[0] == 1


def test_precision_floor(capsys):
    assert run(capsys, "perron", "--poly", "t-2", "--precision", "2")[0] == 1


# --- batch --------------------------------------------------------------------------------------

def test_batch(capsys, tmp_path):
    for name in ("octahedron", "h2_elongated", "bad_237"):
        shutil.copy(fixture_path(name), tmp_path / f"{name}.json")
    code, rep = run_json(capsys, "growth", "--input-dir", str(tmp_path))
    assert code == 2  # the bad vertex
    codes = {f["report"].rsplit("/", 1)[-1]: f["exit_code"] for f in rep["files"]}
    assert codes == {"bad_237.report.json": 2, "h2_elongated.report.json": 0, "octahedron.report.json": 0}
    octa = json.loads((tmp_path / "octahedron.report.json").read_text())
    assert octa["perron"]["status"] == "Perron"


@pytest.mark.parametrize("name", VALID_FIXTURES)
def test_growth_every_fixture(capsys, name):
    code, rep = run_json(capsys, "growth", fx(name))
    assert code == 0
    assert rep["series"][0] == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coxgrow.cli", "perron", "--poly", "5t^2+4t-1", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"]["status"] == "Perron"
