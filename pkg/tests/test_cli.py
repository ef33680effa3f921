import csv
import json
import subprocess
import sys

import pytest

from sl2c.cli import main, parse_config
from sl2c.errors import InvalidStrengths
from sl2c.spectra import SpectrumResult, scarf_series


def run_json(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = main([*argv, "--out", str(out), "--reproducible"])
    return code, json.loads(out.read_text()) if out.exists() else None


def test_spectrum_broken_phase(tmp_path):
    code, data = run_json(tmp_path, "spectrum", "--scarf", "--v1", "2", "--v2", "3")
    assert code == 0
    assert data["classification"] == "ConjugatePairs"
    assert data["critical_strength"] == 2.25
    regular = [lv for lv in data["levels"] if lv["regular"]]
    assert sorted(round(lv["im"], 6) for lv in regular) == [-0.559144, 0.559144]
    assert all(round(lv["re"], 6) == -0.229356 for lv in regular)
    assert "generated_at" not in data


def test_spectrum_json_round_trip(tmp_path):
    _, data = run_json(tmp_path, "spectrum", "--scarf", "--v1", "2", "--v2", "2", "--levels", "4")
    assert SpectrumResult.from_dict(data) == scarf_series(2, 2, 4)
    _, crit = run_json(tmp_path, "spectrum", "--scarf", "--v1", "2", "--v2", "2.25")
    assert SpectrumResult.from_dict(crit) == scarf_series(2, 2.25)


def test_reproducible_output_is_byte_identical(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["spectrum", "--morse-general", "--v1r", "0", "--v1i", "2", "--v2r", "4", "--v2i", "0",
                     "--out", str(p), "--reproducible"]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_timestamp_without_reproducible(tmp_path):
    out = tmp_path / "t.json"
    assert main(["invert", "--scarf", "--v1", "2", "--v2", "2", "--out", str(out)]) == 0
    assert "generated_at" in json.loads(out.read_text())


def test_zero_coupling_is_invalid(capsys):
    assert main(["spectrum", "--scarf", "--v1", "2", "--v2", "0"]) == 2
    assert "V2 != 0" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--scarf", "--v1", "2"],
        ["spectrum", "--morse-general", "--v1r", "3", "--v1i", "0", "--v2r", "1", "--v2i", "0"],
        ["spectrum", "--pt2", "--v1", "1", "--v2", "1", "--gamma", "0"],
        ["spectrum", "--scarf", "--v1", "2", "--v2", "1", "--levels", "0"],
        ["spectrum", "--scarf", "--v1", "2", "--v2", "1", "--format", "csv"],
        ["scan", "--morse-general", "--v1r", "0", "--v1i", "2", "--v2r", "4", "--v2i", "0", "--v2-range", "1:2"],
        ["scan", "--scarf", "--v1", "2", "--v2-range", "3:1"],
        ["verify", "--scarf", "--v1", "2", "--v2", "2", "--grid", "0:1"],
        ["spectrum", "--v1", "2", "--v2", "1"],
        ["bogus"],
    ],
)
def test_invalid_input_exit_code(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_parse_config_validates_before_running():
    with pytest.raises(InvalidStrengths):
        parse_config(["invert", "--morse-param", "--a", "1", "--b", "0", "--gamma", "1", "--delta", "1"])
    cfg = parse_config(["invert", "--pt2", "--v1", "1", "--v2", "1"])
    assert cfg.strengths.gamma > 0 and cfg.fmt == "json"


def test_invert_morse(tmp_path):
    code, data = run_json(tmp_path, "invert", "--morse-general", "--v1r", "0", "--v1i", "2", "--v2r", "4", "--v2i", "4")
    assert code == 0
    (sol,) = data["solutions"]
    assert sol["regular"] is True
    assert sol["m"] == {"re": 2.0, "im": 0.0}
    assert sol["b"] == {"re": 1.0, "im": 1.0}
    assert data["residual"] < 1e-12


def test_verify_morse(tmp_path):
    code, data = run_json(tmp_path, "verify", "--morse-general", "--v1r", "0", "--v1i", "2", "--v2r", "4", "--v2i", "0")
    assert code == 0
    assert data["converged"] is True
    assert data["classification"] == "GenuinelyComplex"
    (pair,) = data["pairs"]
    assert pair["numeric"]["re"] == pytest.approx(0.75, abs=1e-3)
    assert pair["numeric"]["im"] == pytest.approx(1.0, abs=1e-3)


def test_verify_parametrized_morse(tmp_path):
    code, data = run_json(tmp_path, "verify", "--morse-param", "--a", "1", "--b", "1", "--gamma", "3", "--delta", "3")
    assert code == 0 and data["converged"]


def test_scan_is_not_bracketed(capsys):
    assert main(["scan", "--scarf", "--v1", "2", "--v2-range", "2.5:3.0"]) == 3
    assert "bracket" in capsys.readouterr().err


def test_scan_csv(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    argv = ["scan", "--scarf", "--v1", "2", "--v2-range", "1.5:3.0", "--grid", "-20:20:801",
            "--points", "6", "--bisect-tol", "1e-2", "--out", str(out)]
    assert main(argv) == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["v2", "gap", "max_imag", "numeric_broken", "classification"]
    assert len(rows) == 6
    flags = [int(r["numeric_broken"]) for r in rows]
    assert flags == sorted(flags) and flags[0] == 0 and flags[-1] == 1
    k = flags.index(1)
    assert float(rows[k - 1]["v2"]) < 2.25 < float(rows[k]["v2"])
    summary = json.loads(capsys.readouterr().out)
    assert summary["algebraic_critical"] == 2.25
    assert abs(summary["numeric_critical"] - 2.25) < 0.1


def test_scan_json_to_stdout(capsys):
    argv = ["scan", "--pt2", "--v1", "2", "--v2-range", "1.5:3.0", "--grid", "-20:20:801",
            "--points", "4", "--bisect-tol", "5e-2", "--format", "json", "--reproducible"]
    assert main(argv) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["gap_curve"]) == 4
    assert data["evaluations"] >= 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sl2c", "spectrum", "--scarf", "--v1", "2", "--v2", "2", "--reproducible"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["classification"] == "AllReal"
