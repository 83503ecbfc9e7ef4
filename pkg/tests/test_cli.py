import json
import subprocess
import sys

import pytest

from cellcoalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cohomology_rp2(capsys):
    code, out, _ = run(capsys, "cohomology", "--ring", "f2", "rp2")
    assert code == 0
    doc = json.loads(out)
    assert doc["dims"] == [1, 1, 1]
    assert doc["complex"]["euler_characteristic"] == 1


def test_cohomology_from_file(capsys, tmp_path):
    path = tmp_path / "circle.json"
    path.write_text(json.dumps({"type": "simplicial", "facets": [[0, 1], [1, 2], [0, 2]]}))
    code, out, _ = run(capsys, "cohomology", "--ring", "z", str(path))
    assert code == 0 and json.loads(out)["ranks"] == [1, 1]


def test_cubical_grid_input(capsys, tmp_path):
    path = tmp_path / "torus.json"
    path.write_text(json.dumps({"type": "cubical", "grid": [2, 2]}))
    code, out, _ = run(capsys, "cohomology", str(path))
    assert code == 0 and json.loads(out)["dims"] == [1, 2, 1]


def test_cup(capsys):
    code, out, _ = run(capsys, "cup", "--r", "2", "--i", "1", "--simplex", "1")
    assert code == 0
    assert json.loads(out)["value"] == [[[[0, 1], [0, 1]], 1]]


def test_cup_on_cube(capsys):
    code, out, _ = run(capsys, "cup", "--r", "2", "--i", "0", "--cube", "1")
    assert code == 0
    assert json.loads(out)["value"] == [[[["0"], ["01"]], 1], [[["01"], ["1"]], 1]]


def test_ls_interval_verify(capsys):
    code, out, _ = run(capsys, "ls-interval", "--weight", "8", "--verify")
    assert code == 0
    assert json.loads(out) == {"d_squared_zero": True, "a_flat": True, "b_flat": True,
                               "flow_endpoint": "b"}


def test_steenrod_sq(capsys):
    code, out, _ = run(capsys, "steenrod", "sq", "rp2", "--k", "1", "--seed", "3")
    assert code == 0
    assert json.loads(out)["matrices"] == {"0": [[0]], "1": [[1]], "2": []}


def test_steenrod_podd(capsys):
    code, out, _ = run(capsys, "steenrod", "podd", "moore3", "--p", "3", "--s", "0",
                       "--bockstein", "--seed", "1")
    assert code == 0
    assert json.loads(out)["matrices"]["1"] in ([[1]], [[2]])


def test_relations(capsys):
    for cmd in ("cartan", "adem"):
        code, out, _ = run(capsys, cmd, "torus7", "--p", "2")
        assert code == 0 and json.loads(out)["holds"] is True


def test_quillen(capsys, tmp_path):
    doc = {"generators": [{"name": "w", "degree": 0}, {"name": "s", "degree": 2}],
           "boundary": {},
           "coproduct": {"w": [["w", "w", "1"]], "s": [["w", "s", "1"], ["s", "w", "1"]]}}
    path = tmp_path / "sphere.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "quillen", str(path), "--weight", "6")
    assert code == 0 and json.loads(out)["d_squared_zero"] is True


def test_quillen_non_cocommutative(capsys, tmp_path):
    doc = {"generators": [{"name": "w", "degree": 0}, {"name": "v", "degree": 0}],
           "coproduct": {"w": [["w", "v", "1"]]}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "quillen", str(path))
    assert code == 3 and out == ""
    assert json.loads(err)["error"] == "precondition"


@pytest.mark.parametrize("argv", [
    ["cohomology", "nonexistent-file.json"],
    ["cohomology", "rp2", "--ring", "f9"],
    ["steenrod", "sq", "rp2"],
    ["cup", "--r", "2"],
])
def test_parse_errors(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, out, err = run(capsys, "cohomology", str(path))
    assert code == 2 and out == "" and "invalid JSON" in err
    path.write_text(json.dumps({"type": "simplicial", "facets": [[1, 0]]}))
    assert run(capsys, "cohomology", str(path))[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["steenrod", "cube"])
    assert exc.value.code == 2


def test_precondition_errors(capsys):
    assert run(capsys, "steenrod", "podd", "rp2", "--p", "2", "--s", "0")[0] == 3
    assert run(capsys, "cup", "--r", "1", "--simplex", "1")[0] == 3
    assert run(capsys, "ls-interval", "--weight", "0")[0] == 3


def test_invariant_failure_names_identity(capsys):
    code, out, err = run(capsys, "selfcheck", "--mutate", "bernoulli-b1")
    assert code == 4 and out == ""
    doc = json.loads(err.strip().splitlines()[-1])
    assert "lawrence_sullivan" in doc["identity"]


def test_selfcheck_passes(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.strip().splitlines())


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "cohomology", "rp2", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["dims"] == [1, 1, 1]


def test_byte_identical_runs(capsys):
    for argv in (["cohomology", "torus7", "--ring", "z"], ["ls-interval", "--weight", "5"],
                 ["steenrod", "sq", "cp2", "--k", "2"], ["cup", "--r", "3", "--i", "2", "--cube", "2"]):
        first = run(capsys, *argv)[1]
        second = run(capsys, *argv)[1]
        assert first == second and first.endswith("\n")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cellcoalg", "cohomology", "rp2", "--ring", "z"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["torsion"] == [[], [], [2]]
