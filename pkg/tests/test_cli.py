import csv
import io
import json
import math

import pytest

from conicdet.cli import CSV_FIELDS, format_number, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--beta=-0.5,-0.8,-0.7")
    assert code == 0
    data = json.loads(out)
    assert data["log_det"] == pytest.approx(0.0971988299826945, abs=1e-12)
    assert data["geometry"] == "flat"
    assert math.fsum(data["terms"].values()) == pytest.approx(data["log_det"], abs=1e-15)


def test_eval_csv(capsys):
    code, out, _ = run(capsys, "eval", "--beta=-0.8,-0.8,-0.8", "--area=3", "--format=csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_FIELDS
    row = dict(zip(rows[0], rows[1]))
    assert float(row["log_det"]) == pytest.approx(0.801164961481785833, abs=1e-12)
    assert row["geometry"] == "hyperbolic"


def test_eval_both_paths(capsys):
    code, out, _ = run(capsys, "eval", "--beta=-0.8,-0.8,-0.8", "--path=both")
    assert code == 0
    assert json.loads(out)["residual"] < 1e-6


def test_near_sphere(capsys):
    code, out, _ = run(capsys, "eval", "--beta=-1e-9,-1e-9,-1e-9", f"--area={4 * math.pi!r}")
    assert json.loads(out)["log_det"] == pytest.approx(1.1616845748, abs=1e-7)


@pytest.mark.parametrize(
    "argv,invariant",
    [
        (["eval", "--beta=-0.5,0.1,-0.5"], "order must lie in (-1,0)"),
        (["eval", "--beta=-0.98,-0.3,-0.5"], "Troyanov condition"),
        (["eval", "--beta=-0.5,-0.5,-0.5", "--area=-1"], "area must be positive"),
    ],
)
def test_invalid_input_names_invariant(capsys, argv, invariant):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert f"({invariant})" in err


def test_bad_extremal_sum(capsys):
    code, _, err = run(capsys, "extremal", "--sum=-3.5")
    assert code == 2 and "invalid input" in err


def test_unknown_flag():
    with pytest.raises(SystemExit) as info:
        main(["eval", "--beta=-0.5,-0.5,-0.5", "--bogus"])
    assert info.value.code == 2


def test_malformed_beta():
    with pytest.raises(SystemExit) as info:
        main(["eval", "--beta=-0.5,-0.5"])
    assert info.value.code == 2


def test_deterministic_output(capsys):
    argv = ["sweep", "--mode=fixed-sum", "--sum=-1.2", "--grid=4", "--format=csv"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_flat_sweep_minimum_at_symmetric_cell(capsys):
    code, out, _ = run(capsys, "sweep", "--mode=flat-line", "--grid=25", "--format=csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 625
    good = [r for r in rows if not r["error"]]
    best = min(good, key=lambda r: float(r["log_det"]))
    assert float(best["beta1"]) == pytest.approx(-2 / 3, abs=1e-12)
    assert float(best["beta3"]) == pytest.approx(-2 / 3, abs=1e-12)


def test_invalid_sweep_cells_reported(capsys):
    code, out, _ = run(capsys, "sweep", "--sum=-0.6", "--grid=5", "--format=csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 25
    assert any("Troyanov" in r["error"] for r in rows)


def test_spindle_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--mode=spindle-line", "--grid=3")
    data = json.loads(out)
    assert code == 0 and len(data) == 3
    assert data[1]["log_det"] == pytest.approx(-0.491252668004549674, abs=1e-12)


def test_extremal(capsys):
    code, out, _ = run(capsys, "extremal", "--sum=-2", "--area=0.866")
    data = json.loads(out)
    assert code == 0
    assert data["s0"] == pytest.approx(1.92, abs=0.02)
    assert data["classification"] == "Minimum"
    _, out, _ = run(capsys, "extremal", "--sum=-2", "--area=4")
    assert json.loads(out)["classification"] == "Maximum"


def test_limits(capsys):
    code, out, _ = run(capsys, "limits")
    data = json.loads(out)
    assert code == 0
    assert data["round_sphere"]["residual"] < 1e-6
    assert all(s["residual"] < 1e-5 for s in data["spindle"])


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite=specfun")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3 and all(line.startswith("PASS specfun.") for line in lines)


def test_verify_failure_exit(capsys):
    code, out, _ = run(capsys, "verify", "--suite=specfun", "--tol-scale=1e-30")
    assert code == 1 and "FAIL" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "eval", "--beta=-0.2,-0.3,-0.4", f"--out={target}")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["log_det"] == pytest.approx(-0.488717686211495278, abs=1e-12)


def test_unwritable_out(tmp_path, capsys):
    code, _, err = run(capsys, "eval", "--beta=-0.2,-0.3,-0.4", f"--out={tmp_path / 'missing' / 'r.json'}")
    assert code == 1 and err


def test_number_format():
    assert format_number(0.1) == "0.10000000000000001"
    assert format_number(float("nan")) == "null"
