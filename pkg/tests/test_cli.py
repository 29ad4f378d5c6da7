import json
import subprocess
import sys

import pytest

from lienard.cli import EXIT_CHECK, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, RunConfig, main, run


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_coeffs_v3(capsys):
    code, out, _ = _run(capsys, "coeffs", "--d", "2", "--K", "3")
    assert code == EXIT_OK
    orders = {row["k"]: row for row in json.loads(out)["orders"]}
    assert orders[2]["v2pi"] == {}
    assert orders[3]["v2pi"] == {"0,1": ["0/1", "1/4"]}


def test_bautin_certificate(capsys):
    code, out, _ = _run(capsys, "bautin", "--d", "4", "--K", "9")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["B"] == 5 and data["ok"]
    assert data["diagonal_decimal"][0].startswith("0.785398163397448309615660845")


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("LIENARD_PRECISION", "8")
    _, out, _ = _run(capsys, "bautin", "--d", "2")
    assert json.loads(out)["diagonal_decimal"] == ["0.78539816"]


def test_radius(capsys):
    code, out, _ = _run(capsys, "radius", "--lambda", "2")
    data = json.loads(out)
    assert code == EXIT_OK
    assert abs(data["rho"] - 0.5) < 1e-12
    assert abs(data["radius_scaled"] - 0.25) < 1e-12
    assert data["radius_basic"] == pytest.approx(1 / 3)


def test_bernstein(capsys):
    code, out, _ = _run(capsys, "bernstein", "--lambda", "0,0")
    data = json.loads(out)
    assert code == EXIT_OK and data["zero_bound"] == 2
    assert data["variants"]["zero_radius_ratio"] == pytest.approx(1.0)


def test_validate_csv(capsys):
    code, out, _ = _run(capsys, "validate", "--lambda", "0.1,-0.05", "--K", "12", "--grid", "4", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == EXIT_OK
    assert lines[0] == "r0,r_return,residual,tail_bound" and len(lines) == 5


def test_cycles(capsys):
    code, out, _ = _run(capsys, "cycles", "--lambda", "0,-0.1", "--grid", "10")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["real_cycles"] == 0 and data["complex"]["count"] <= 2


def test_lins_neto(capsys):
    code, out, _ = _run(capsys, "lins-neto", "--n", "1", "--epsilon", "0.01", "--grid", "20")
    data = json.loads(out)
    assert code == EXIT_OK and data["cycles"] == 1


def test_check_failure_exit(capsys):
    # the outer cycle at r = 2/3 lies beyond the scanned range
    code, out, _ = _run(capsys, "lins-neto", "--n", "2", "--radius", "0.5", "--grid", "20")
    assert code == EXIT_CHECK
    data = json.loads(out)
    assert data["ok"] is False and "expected 2 cycles" in data["reason"]


def test_numeric_failure_exit(capsys):
    code, out, _ = _run(capsys, "cycles", "--lambda", "4", "--radius", "2.5", "--grid", "4")
    assert code == EXIT_NUMERIC
    assert "Error" in json.loads(out)["reason"]


@pytest.mark.parametrize(
    "argv",
    [["coeffs"], ["radius"], ["coeffs", "--d", "2", "--lambda", "1"], ["coeffs", "--d", "0"], ["coeffs", "--d", "2", "--K", "1"], ["lins-neto"]],
)
def test_usage_errors(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == EXIT_USAGE
    assert json.loads(err.strip().splitlines()[-1])["ok"] is False


def test_argparse_errors():
    with pytest.raises(SystemExit) as exc:
        main(["radius", "--lambda", "a,b"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["bogus"])


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("plot")
    assert RunConfig("radius", lam=[1.0, 2.0]).d == 2


def test_out_file_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(RunConfig("coeffs", d=3, K=5, out=str(a))) == EXIT_OK
    assert run(RunConfig("coeffs", d=3, K=5, out=str(b))) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lienard", "radius", "--lambda", "1,1"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["rho"] == pytest.approx(0.618034, abs=1e-6)
