"""Command-line interface: CSV contract, tables, stability report, exit codes."""

import json
import math

import numpy as np
import pytest

import convfem.cli as cli
import convfem.solver
from convfem import SingularSystemError


def _read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def _column(rows, header, name, cast=float):
    idx = header.index(name)
    return [cast(row[idx]) if row[idx] != "" else None for row in rows]


def test_solve_free_vibration_csv(tmp_path):
    out = tmp_path / "run.csv"
    code = cli.main(
        [
            "solve", "--m", "1", "--k", "9", "--u0", "0", "--v0", "2",
            "--t-end", "10", "--tau", "0.1", "--scheme", "both", "--exact",
            "--out", str(out),
        ]
    )
    assert code == 0
    header, rows = _read_csv(out)
    assert ",".join(header) == "time,fem,onestep,exact,err_fem,err_onestep"
    times = _column(rows, header, "time")
    fem = _column(rows, header, "fem")
    onestep = _column(rows, header, "onestep")
    exact = _column(rows, header, "exact")
    err_fem = _column(rows, header, "err_fem")
    assert len(rows) == 101
    i = times.index(1.0)
    assert fem[i] == pytest.approx(0.1018, abs=5e-5)
    assert onestep[i] == pytest.approx(0.1018, abs=5e-5)
    assert exact[i] == pytest.approx(0.0941, abs=5e-5)
    assert err_fem[i] == pytest.approx(fem[i] - exact[i], abs=1e-15)


def test_solve_is_byte_deterministic(tmp_path):
    args = [
        "solve", "--m", "1", "--k", "9", "--v0", "2", "--t-end", "4",
        "--tau", "0.05", "--scheme", "both", "--exact",
    ]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_solve_forced_spot_value(tmp_path):
    out = tmp_path / "forced.csv"
    code = cli.main(
        [
            "solve", "--m", "1", "--k", "9", "--u0", "0", "--v0", "0",
            "--t-end", "10", "--tau", "0.05", "--forcing", "sin:5,3.6",
            "--scheme", "fem", "--exact", "--out", str(out),
        ]
    )
    assert code == 0
    header, rows = _read_csv(out)
    times = _column(rows, header, "time")
    fem = _column(rows, header, "fem")
    onestep = _column(rows, header, "onestep")
    i = times.index(4.0)
    assert fem[i] == pytest.approx(-2.0349, abs=5e-5)
    assert onestep[i] is None  # scheme fem leaves the column empty


def test_solve_omits_exact_without_flag(tmp_path):
    out = tmp_path / "plain.csv"
    assert (
        cli.main(
            ["solve", "--m", "1", "--k", "9", "--v0", "2", "--t-end", "1",
             "--n", "10", "--scheme", "onestep", "--out", str(out)]
        )
        == 0
    )
    header, rows = _read_csv(out)
    assert all(row[header.index("exact")] == "" for row in rows)
    assert all(row[header.index("fem")] == "" for row in rows)
    assert all(row[header.index("onestep")] != "" for row in rows)


def test_resonance_envelope(tmp_path):
    # driving at the natural frequency: the response envelope grows like
    # (f0 / (2 m omega)) * t; check the last period against that line
    out = tmp_path / "resonance.csv"
    code = cli.main(
        [
            "solve", "--m", "1", "--k", "9", "--u0", "0", "--v0", "0",
            "--t-end", "30", "--tau", "0.05", "--forcing", "sin:5,3.0",
            "--scheme", "onestep", "--exact", "--out", str(out),
        ]
    )
    assert code == 0
    header, rows = _read_csv(out)
    times = np.array(_column(rows, header, "time"))
    onestep = np.array(_column(rows, header, "onestep"))
    period = 2.0 * math.pi / 3.0
    window = times >= 30.0 - period
    peak = np.max(np.abs(onestep[window]))
    predicted = (5.0 / (2.0 * 1.0 * 3.0)) * 30.0
    assert abs(peak - predicted) <= 0.10 * predicted


def test_unstable_onestep_warns_but_succeeds(tmp_path, capsys):
    out = tmp_path / "wild.csv"
    code = cli.main(
        ["solve", "--m", "1", "--k", "9", "--v0", "2", "--t-end", "12",
         "--tau", "1.2", "--scheme", "onestep", "--out", str(out)]
    )
    assert code == 0
    captured = capsys.readouterr()
    assert "warning" in captured.err.lower()
    assert out.exists()


def test_solve_config_file_with_flag_override(tmp_path):
    config = {
        "m": 1.0, "k": 9.0, "u0": 0.0, "v0": 2.0, "horizon": 10.0,
        "tau": 0.1, "scheme": "fem", "emit_exact": True,
    }
    path = tmp_path / "run.json"
    path.write_text(json.dumps(config))
    out = tmp_path / "out.csv"
    # flag overrides the config's tau
    code = cli.main(["solve", "--config", str(path), "--tau", "0.05", "--out", str(out)])
    assert code == 0
    header, rows = _read_csv(out)
    assert len(rows) == 201


def test_solve_config_unknown_key(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"m": 1.0, "mystery": 2}))
    assert cli.main(["solve", "--config", str(path)]) == 2


def test_solve_usage_errors():
    # tau and n together
    assert (
        cli.main(["solve", "--m", "1", "--k", "9", "--t-end", "1",
                  "--tau", "0.1", "--n", "10"]) == 2
    )
    # neither tau nor n
    assert cli.main(["solve", "--m", "1", "--k", "9", "--t-end", "1"]) == 2
    # missing required parameter
    assert cli.main(["solve", "--tau", "0.1"]) == 2
    # step does not divide the horizon
    assert (
        cli.main(["solve", "--m", "1", "--k", "9", "--t-end", "1", "--tau", "0.3"]) == 2
    )
    # malformed forcing
    assert (
        cli.main(["solve", "--m", "1", "--k", "9", "--t-end", "1", "--tau", "0.1",
                  "--forcing", "sin:5"]) == 2
    )
    # negative mass
    assert (
        cli.main(["solve", "--m", "-1", "--k", "9", "--t-end", "1", "--tau", "0.1"]) == 2
    )
    # unknown subcommand
    assert cli.main(["frobnicate"]) == 2


def test_singular_system_exit_code(tmp_path, monkeypatch):
    def boom(rs):
        raise SingularSystemError("forced failure")

    monkeypatch.setattr(convfem.solver, "solve_reduced", boom)
    monkeypatch.setattr("convfem.cli.fem_trajectory", lambda *a, **k: boom(None))
    code = cli.main(
        ["solve", "--m", "1", "--k", "9", "--t-end", "1", "--tau", "0.1",
         "--scheme", "fem", "--out", str(tmp_path / "x.csv")]
    )
    assert code == 3


def test_tables_one(tmp_path):
    out = tmp_path / "table1.txt"
    assert cli.main(["tables", "1", "--out", str(out)]) == 0
    text = out.read_text()
    # value at time 5 for the 0.05 step
    row5 = next(line for line in text.splitlines() if line.strip().startswith("5 ") or line.strip().startswith("5" + " "))
    assert "0.4410" in row5
    assert "0.4335" in row5  # closed-form column


def test_tables_two(tmp_path):
    out = tmp_path / "table2.txt"
    assert cli.main(["tables", "2", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    row7 = next(line for line in lines if line.strip().startswith("7"))
    assert "1.1832" in row7
    row4 = next(line for line in lines if line.strip().startswith("4"))
    assert "-2.0349" in row4


def test_tables_three(tmp_path):
    out = tmp_path / "table3.txt"
    assert cli.main(["tables", "3", "--out", str(out)]) == 0
    text = out.read_text()
    assert "tau=0.5" in text and "tau=0.01" in text
    # F and O columns agree at 4 decimals in every row, and the scheme gap
    # stays under 1e-10 once the printed scaling is undone
    scale = None
    for line in text.splitlines():
        if "scaled by" in line:
            scale = float(line.rsplit("scaled by", 1)[1].strip(" )\n"))
            continue
        parts = line.split()
        if parts and parts[0].isdigit():
            assert parts[1] == parts[2]
            assert abs(float(parts[3]) / scale) <= 1e-10


def test_tables_unknown_id():
    assert cli.main(["tables", "9"]) == 2


def test_stability_report(capsys):
    assert cli.main(["stability", "--m", "1", "--k", "9"]) == 0
    text = capsys.readouterr().out
    assert "1.154701" in text
    assert "0.5513" in text

    assert cli.main(["stability", "--m", "1", "--k", "9", "--tau", "0.1"]) == 0
    text = capsys.readouterr().out
    assert "STABLE" in text and "UNSTABLE" not in text
    assert "1.000000" in text

    assert cli.main(["stability", "--m", "1", "--k", "9", "--tau", "1.2"]) == 0
    assert "UNSTABLE" in capsys.readouterr().out

    assert cli.main(["stability", "--m", "-1", "--k", "9"]) == 2


def test_stdout_output(capsys):
    assert cli.main(["solve", "--m", "1", "--k", "9", "--v0", "2",
                     "--t-end", "1", "--n", "4", "--scheme", "fem"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("time,fem,onestep,exact,err_fem,err_onestep\n")
    assert len(out.splitlines()) == 6
