import csv
import io
import json
import subprocess
import sys

import pytest

from grover_rel.backend import EXTENDED, STANDARD
from grover_rel.cli import main
from grover_rel.collision import conserved_quantities
from grover_rel.io import (CSV_COLUMNS, RawNumber, dumps, read_trajectory,
                           write_trajectory)
from grover_rel.transfer import TransferConfig, run_transfer


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def summary(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines())


# -- simulate ---------------------------------------------------------------

def test_simulate_n2(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "2", "--v0", "0.5")
    assert code == 0
    s = summary(out)
    assert s["steps_to_max"] == "0"
    assert float(s["max_fraction"]) == pytest.approx(0.5, abs=1e-15)
    assert s["termination"] == "first_max_found"


def test_simulate_single_step_extended(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "1000",
                       "--one-minus-v0", "2e-6", "--precision", "extended")
    assert code == 0
    s = summary(out)
    assert s["steps_to_max"] == "1"
    assert len(s["max_fraction"].split("e")[0].replace(".", "")) == 34
    assert float(s["max_fraction"]) > 0.999


@pytest.mark.parametrize("argv", [
    ("simulate", "--n", "1.5", "--v0", "0.1"),
    ("simulate", "--n", "100", "--v0", "1.2"),
    ("simulate", "--n", "100", "--v0", "0.1", "--one-minus-v0", "0.9"),
    ("simulate", "--n", "100"),
    ("simulate", "--n", "abc", "--v0", "0.1"),
    ("predict",),
    ("sweep", "--n-list", "100:1000:3-cubic", "--v0-list", "0.1"),
    ("sweep", "--n-list", "1000,100", "--v0-list", "0.1"),
    ("bogus",),
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(list(argv))
        raise SystemExit(code)
    assert exc.value.code == 1
    assert capsys.readouterr().err


def test_simulate_iteration_limit_exits_2(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "10000", "--v0", "0.1",
                       "--max-iter", "3")
    assert code == 2
    assert summary(out)["termination"] == "iteration_limit"


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_simulate_record_formats(capsys, fmt):
    code, out, _ = run(capsys, "simulate", "--n", "100", "--v0", "0.3",
                       "--format", fmt)
    assert code == 0
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(out)))
        assert tuple(rows[0]) == CSV_COLUMNS
        row = rows[0]
    else:
        doc = json.loads(out)
        assert doc["precision"] == "standard"
        row = doc["records"][0]
    assert int(row["steps_to_max"]) == 5
    assert row["termination"] == "first_max_found"


# -- predict ----------------------------------------------------------------

def test_predict_n(capsys):
    code, out, _ = run(capsys, "predict", "--n", "1000")
    assert code == 0
    s = summary(out)
    assert float(s["v0_ss"]) == pytest.approx(1 - 2e-6, rel=1e-15)
    assert float(s["one_minus_v0_ss"]) == pytest.approx(2e-6, rel=1e-15)
    assert s["v0_ss_extrapolated"] == "false"
    assert float(s["asymptote"]) == pytest.approx(24.836470664, rel=1e-9)


def test_predict_small_n_flags_extrapolation(capsys):
    _, out, _ = run(capsys, "predict", "--n", "10")
    assert summary(out)["v0_ss_extrapolated"] == "true"


def test_predict_json_extended(capsys):
    code, out, _ = run(capsys, "predict", "--v0", "0.01", "--format", "json",
                       "--precision", "extended")
    assert code == 0
    text = json.loads(out, parse_float=str)["M_b"]
    assert EXTENDED.num(text) == pytest.approx(EXTENDED.num(4) / 3 * 10**4,
                                               rel=1e-33)


# -- sweep ------------------------------------------------------------------

SWEEP = ("sweep", "--n-list", "100,10000", "--v0-list",
         "0.001,0.01,0.3,1-1e-6", "--classical")


def test_sweep_rows_and_header(capsys):
    code, out, _ = run(capsys, *SWEEP, "--jobs", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8
    assert [float(r["N"]) for r in rows] == [100.0] * 4 + [1e4] * 4
    assert {r["classical_steps"] for r in rows[:4]} == {"7"}
    # low speeds match the classical count
    assert rows[0]["steps_to_max"] == rows[0]["classical_steps"]


def test_sweep_jobs_byte_identical(tmp_path):
    outs = []
    for jobs in ("1", "3"):
        path = tmp_path / f"j{jobs}.csv"
        assert main([*SWEEP, "--jobs", jobs, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--n-list", "100:10000:3-log",
                       "--v0-list", "0.1", "--format", "json", "--jobs", "1")
    assert code == 0
    doc = json.loads(out)
    assert [r["N"] for r in doc["records"]] == [100.0, 1000.0, 10000.0]
    assert doc["records"][0]["classical_steps"] is None


def test_sweep_unwritable_out(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    code, _, err = run(capsys, *SWEEP, "--out", str(target))
    assert code == 1
    assert "cannot write" in err


def test_sweep_error_row_exits_2(capsys):
    code, out, _ = run(capsys, "sweep", "--n-list", "10",
                       "--v0-list", "0.5,1-1e-310", "--jobs", "1")
    assert code == 2
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[1]["termination"] == "error"
    assert rows[1]["steps_to_max"] == ""


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "grover_rel.cli", "simulate", "--n", "2",
         "--v0", "0.1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "first_max_found" in proc.stdout


# -- trajectory JSON --------------------------------------------------------

@pytest.mark.parametrize("backend,kw", [
    (STANDARD, {"v0": "0.3"}),
    (EXTENDED, {"one_minus_v0": "2e-6"}),
])
def test_trajectory_round_trip(backend, kw):
    cfg = TransferConfig(400, backend=backend, record_trajectory=True, **kw)
    out = run_transfer(cfg)
    buf = io.StringIO()
    write_trajectory(cfg, out.trajectory, buf)
    buf.seek(0)
    header, points = read_trajectory(buf)

    assert header["precision"] == backend.name
    assert header["n"] == 400
    (key,) = kw
    assert header[key] == backend.num(kw[key])
    assert [p.k for p in points] == list(range(len(out.trajectory)))

    tol = 1e-15 if backend is STANDARD else 1e-32
    e0 = conserved_quantities(points[0].state).E
    for p, q in zip(points, out.trajectory):
        assert p.K2_fraction == pytest.approx(q.K2_fraction, rel=tol, abs=tol)
        assert p.state.v_small == pytest.approx(q.state.v_small, rel=tol,
                                                abs=tol)
        assert abs(p.K1_fraction + p.K2_fraction - 1) < 100 * tol
        assert abs(conserved_quantities(p.state).E / e0 - 1) < 100 * tol
    # light ball's share climbs until the recorded maximum
    fr = [p.K2_fraction for p in points]
    assert all(a < b for a, b in zip(fr[:out.steps_to_max],
                                     fr[1:out.steps_to_max + 1]))


def test_trajectory_cli_file(tmp_path, capsys):
    path = tmp_path / "t.json"
    code, _, _ = run(capsys, "simulate", "--n", "100", "--v0", "0.1",
                     "--trajectory", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["v0_or_one_minus_v0"] == {"v0": 0.1}
    assert set(doc["records"][0]) == {"k", "v1", "v2", "alpha1", "alpha2",
                                      "K1_frac", "K2_frac", "e_drift",
                                      "p_drift"}
    assert doc["records"][0]["K2_frac"] == pytest.approx(0.01, rel=1e-14)


def test_dumps_raw_numbers():
    text = dumps({"a": RawNumber("1.50e+00"), "b": [True, None, "x"], "c": {}})
    assert json.loads(text) == {"a": 1.5, "b": [True, None, "x"], "c": {}}
    with pytest.raises(TypeError):
        dumps({"a": object()})
