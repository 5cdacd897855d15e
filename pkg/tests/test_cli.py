import json
import subprocess
import sys

import pytest

from holonomy.cli import EXIT_BAD_INPUT, EXIT_HEURISTIC, EXIT_IO, EXIT_OK, main, parse_config

FINITE = ["--theta1", "pi", "--theta2", "pi*1/2", "--phi", "pi*1/4"]
DENSE = ["--theta1", "pi*1/2", "--theta2", "pi*1/2", "--phi", "pi*1/4"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_finite(capsys):
    code, out, _ = run(capsys, "classify", *FINITE)
    data = json.loads(out)
    assert code == EXIT_OK
    assert (data["verdict"], data["order"], data["klein_type"]) == ("finite", 24, "octahedral")


def test_classify_output_is_byte_identical(capsys, tmp_path):
    _, first, _ = run(capsys, "classify", *DENSE)
    _, second, _ = run(capsys, "classify", *DENSE)
    assert first == second
    path = tmp_path / "r.json"
    assert main(["classify", *DENSE, "-o", str(path)]) == EXIT_OK
    assert path.read_text() == first


def test_classify_axis_infinite_and_extended(capsys):
    code, out, _ = run(capsys, "classify", "--theta1", "pi", "--theta2", "pi", "--phi", "acos(1/3)")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "axis_infinite"
    code, out, _ = run(capsys, "classify", "--theta1", "acos(1/3)", "--theta2", "pi*1/2", "--phi", "0", "--extended")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "commutative_infinite"


def test_heuristic_exit_code_and_assertion(capsys):
    args = ["classify", "--theta1", "pi*1/2", "--theta2", "rad:1.1", "--phi", "rad:0.7"]
    code, out, _ = run(capsys, *args)
    assert code == EXIT_HEURISTIC and json.loads(out)["verdict"] == "heuristic"
    code, out, _ = run(capsys, *args, "--assert-irrational", "theta2")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "dense"


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--theta1", "pi*2/0", "--theta2", "pi", "--phi", "pi*1/4"],
        ["classify", "--theta1", "pi", "--theta2", "pi"],
        ["classify", *FINITE, "--cap", "0"],
        ["classify", "--theta1", "pi", "--theta2", "pi", "--phi", "pi*3/4"],
        ["frobnicate"],
        ["orbit", *DENSE, "--base-point", "1,2"],
    ],
)
def test_bad_input_exit_code(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_BAD_INPUT


def test_unwritable_output(capsys, tmp_path):
    code, _, err = run(capsys, "classify", *FINITE, "-o", str(tmp_path / "missing" / "r.json"))
    assert code == EXIT_IO and "error" in err


def test_missing_config_file(capsys, tmp_path):
    assert run(capsys, "classify", "--config", str(tmp_path / "nope.json"))[0] == EXIT_IO


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"theta1": "pi", "theta2": "pi*1/2", "phi": "pi*1/4", "precision-bits": 160}))
    parsed = parse_config(["classify", "--config", str(cfg), "--phi", "pi*1/2"])
    assert parsed.get("phi") == "pi*1/2" and parsed.get("precision_bits") == 160
    code, out, _ = run(capsys, "classify", "--config", str(cfg))
    assert code == EXIT_OK and json.loads(out)["order"] == 24


def test_trace_subcommand(capsys):
    code, out, _ = run(capsys, "trace", "--theta1", "pi*2/3", "--theta2", "pi*2/3", "--phi", "acos(1/3)",
                       "--target=-3/4")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["trace_exact"] == "-1"
    assert (data["interval"]["lo_closed"], data["interval"]["hi_closed"]) == (True, False)
    assert [x["cos_phi"][:12] for x in data["solutions"]] == ["0.0000000000", "0.6666666666"]


def test_orbit_subcommand(capsys, tmp_path):
    pts, rad = tmp_path / "p.csv", tmp_path / "r.csv"
    code, out, _ = run(capsys, "orbit", *DENSE, "--depth", "6", "--points-out", str(pts), "--radius-out", str(rad))
    data = json.loads(out)
    assert code == EXIT_OK and data["depth"] == 6 and not data["budget_exhausted"]
    assert pts.read_text().startswith("x,y,z,word\n")
    assert len(rad.read_text().splitlines()) == 7


def test_orbit_budget_exhaustion(capsys):
    code, out, _ = run(capsys, "orbit", *DENSE, "--depth", "12", "--budget", "200")
    assert code == EXIT_HEURISTIC and json.loads(out)["budget_exhausted"]


def test_approx_subcommand(capsys):
    code, out, _ = run(capsys, "approx", *DENSE, "--target", "random:4", "--epsilon", "0.1", "--depth", "10")
    data = json.loads(out)
    assert code == EXIT_OK and data["converged"] and float(data["distance"]) < 0.1


def test_approx_rejects_non_rotation_target(capsys):
    target = json.dumps([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    assert run(capsys, "approx", *DENSE, "--target", target)[0] == EXIT_BAD_INPUT


def test_bundle_subcommand(capsys):
    code, out, _ = run(capsys, "bundle", "--connection", "tests/data/octahedral_connection.json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert (data["+"]["verdict"], data["+"]["order"]) == ("finite", 24)
    assert data["-"]["degenerate"] and not data["+"]["degenerate"]


def test_bundle_bad_connection(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"P": [[0, 1, 0, 0], [1, 0, 0, 0], [0] * 4, [0] * 4], "Q": [[0] * 4] * 4}))
    assert run(capsys, "bundle", "--connection", str(path))[0] == EXIT_BAD_INPUT


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "holonomy", "classify", *FINITE], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["order"] == 24
