import json
from importlib import resources

import jsonschema
import pytest

from burau_orbits.cli import EXIT_INVALID, EXIT_OK, EXIT_PARSE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def schema():
    return json.loads(resources.files("burau_orbits").joinpath("data/report.schema.json").read_text())


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "--ring", "GF(7)[l]/(l)")
    assert code == EXIT_OK
    assert "H(7,0)" in out


@pytest.mark.parametrize("argv", [
    ["classify", "--ring", "Z(25)[l]/(l-5)", "--format", "json"],
    ["classify", "--wheel", "3", "2,1", "-1,-3;0,-1", "--format", "json"],
    ["classify", "--ring", "GF(3)[l]/(l^5)", "--format", "json"],
])
def test_classify_json_schema_and_determinism(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    doc = json.loads(out)
    jsonschema.validate(doc, schema())
    _, again, _ = run(capsys, *argv)
    assert again == out


def test_wheel_as_one_token(capsys):
    code, out, _ = run(capsys, "classify", "--wheel", "3 1,1 -1,0;0,-1", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["kind"] == "module" and len(doc["orbits"]) == 2


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "classify", "--ring", "GF(5)[l]/(l)", "--format", "json", "--out", str(path))
    assert code == EXIT_OK and out == ""
    assert json.loads(path.read_text())["edges"] == 6
    assert [p.name for p in tmp_path.iterdir()] == ["r.json"]


def test_exit_codes(capsys):
    code, _, err = run(capsys, "classify", "--ring", "GF(7)[l]/(l^2")
    assert code == EXIT_PARSE and "offset 13" in err
    assert run(capsys, "classify", "--ring", "GF(2)[l]/(l)")[0] == EXIT_INVALID
    assert run(capsys, "classify", "--ring", "GF(5)[l]/(l-1)")[0] == EXIT_INVALID
    assert run(capsys, "verify-table", "--row", "nope")[0] == EXIT_INVALID
    with pytest.raises(SystemExit) as ei:
        main(["classify"])
    assert ei.value.code == EXIT_PARSE


def test_verify_row(capsys):
    code, out, _ = run(capsys, "verify-table", "--row", "I(5,1)")
    assert code == EXIT_OK and out.startswith("PASS row I(5,1)")


def test_coset(capsys):
    code, out, _ = run(capsys, "coset", "--group", "Gamma1", "--level", "7")
    assert code == EXIT_OK
    assert out.strip() == "Gamma1(7): index 24, genus 0, nu2 0, nu3 0, cusps 6, cusp widths 1,1,1,7,7,7"
    code, out, _ = run(capsys, "coset", "--group", "Gamma0", "--level", "25", "--intersect", "Gamma1:5",
                       "--format", "json")
    assert json.loads(out)["genus"] == 0


def test_dessin(tmp_path, capsys):
    path = tmp_path / "d.dot"
    assert run(capsys, "dessin", "--ring", "GF(5)[l]/(l)", "--orbit", "0", "--out", str(path))[0] == EXIT_OK
    assert path.read_text().count(" -- ") == 6
    lifted = tmp_path / "l.dot"
    assert run(capsys, "dessin", "--ring", "GF(5)[l]/(l)", "--orbit", "0", "--lifted",
               "--out", str(lifted))[0] == EXIT_OK
    assert lifted.read_text().count(" -- ") == 12
    assert run(capsys, "dessin", "--wheel", "3", "2,1", "-1,-3;0,-1", "--orbit", "5",
               "--out", str(path))[0] == EXIT_INVALID
