"""CLI surface: state specs, file I/O with exit codes, report formats,
sweeps, determinism."""

import json
import math

import numpy as np
import pytest

from sepspectra.cli import (
    build_state,
    eval_rows,
    format_rows_csv,
    format_rows_json,
    load_state,
    main,
    parse_grid,
    save_state,
    CliUsageError,
)
from sepspectra.states import maximally_entangled_state, pure_state, werner

from conftest import max_abs


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def eval_json(capsys, *argv):
    code, out, err = run_cli(capsys, "eval", *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


# ---------------------------------------------------------------------------
# eval command

def test_eval_rank_counterexample_values(capsys):
    rows = eval_json(capsys, "rank-counterexample")
    q = rows[0]["quantities"]
    assert abs(q["tsallis_2"] - 0.2) < 1e-9
    assert abs(q["tsallis_0"]) < 1e-9
    assert abs(q["tsallis_inf"]) < 1e-9
    assert rows[0]["verdicts"]["tsallis_sign"] == "pass"


def test_eval_werner_entangled_regime(capsys):
    rows = eval_json(capsys, "werner:3:0.9")
    assert rows[0]["verdicts"]["ppt"] == "fail"
    # the reduction criterion does not see Werner entanglement beyond d=2:
    # its minimum eigenvalue is 1/d - p/r- > 0 for d >= 3
    assert rows[0]["verdicts"]["reduction"] == "pass"
    assert abs(rows[0]["quantities"]["reduction_min_eig"] - (1 / 3 - 0.3)) < 1e-9


def test_eval_counterpart_matches_werner_spectrum(capsys):
    werner_row = eval_json(capsys, "werner:3:0.9")[0]
    counter_row = eval_json(capsys, "counterpart:3:0.9")[0]
    assert counter_row["verdicts"]["ppt"] == "pass"
    for key, value in werner_row["quantities"].items():
        if key.startswith("lambda_"):
            assert abs(counter_row["quantities"][key] - value) < 1e-9


def test_eval_infinity_sentinel_serialization(capsys, tmp_path):
    state = pure_state(maximally_entangled_state(2), 2, 2)
    path = tmp_path / "bell.json"
    save_state(state, str(path))
    rows = eval_json(capsys, str(path))
    assert rows[0]["quantities"]["tsallis_inf"] == "-inf"

    code, out, err = run_cli(capsys, "eval", str(path))
    assert code == 0
    header, record = out.strip().split("\n")
    idx = header.split(",").index("tsallis_inf")
    assert record.split(",")[idx] == "-inf"


def test_eval_custom_alphas_support_flag(capsys):
    rows = eval_json(capsys, "rank-counterexample", "--alphas=-1,2")
    assert rows[0]["verdicts"]["flags"] == "support_restricted"
    assert "tsallis_-1" in rows[0]["quantities"]


def test_eval_unknown_spec_exits_2(capsys):
    code, _, err = run_cli(capsys, "eval", "nonsense:1")
    assert code == 2
    assert "unknown state spec" in err


def test_eval_bad_builder_params_exit_2(capsys):
    code, _, err = run_cli(capsys, "eval", "werner:3:1.5")
    assert code == 2
    code, _, err = run_cli(capsys, "eval", "counterpart:2:0.5")
    assert code == 2
    assert "odd" in err


def test_eval_csv_header_names_every_column(capsys):
    code, out, _ = run_cli(capsys, "eval", "werner:3:0.5")
    assert code == 0
    header, record = out.strip().split("\n")
    assert len(header.split(",")) == len(record.split(","))
    assert header.split(",")[0] == "scenario"
    assert "gap_2" in header.split(",")


# ---------------------------------------------------------------------------
# state files

def test_state_file_round_trip(tmp_path):
    state = werner(3, 0.5)
    path = tmp_path / "w.json"
    save_state(state, str(path))
    loaded = load_state(str(path))
    assert loaded.dim_a == 3 and loaded.dim_b == 3
    assert max_abs(loaded.matrix - state.matrix) <= 1e-15


def test_state_file_bad_trace_exit_3(capsys, tmp_path):
    path = tmp_path / "bad_trace.json"
    n = 4
    payload = {
        "dimA": 2, "dimB": 2,
        "re": (np.eye(n) * 0.9 / n).tolist(),
        "im": np.zeros((n, n)).tolist(),
    }
    path.write_text(json.dumps(payload))
    code, _, err = run_cli(capsys, "eval", str(path))
    assert code == 3
    assert "trace" in err


def test_state_file_shape_mismatch_exit_3(capsys, tmp_path):
    path = tmp_path / "bad_shape.json"
    payload = {
        "dimA": 2, "dimB": 3,
        "re": (np.eye(4) / 4).tolist(),
        "im": np.zeros((4, 4)).tolist(),
    }
    path.write_text(json.dumps(payload))
    code, _, err = run_cli(capsys, "eval", str(path))
    assert code == 3
    assert "shape mismatch" in err


def test_state_file_non_hermitian_exit_3(capsys, tmp_path):
    path = tmp_path / "nonherm.json"
    re = (np.eye(4) / 4).tolist()
    im = np.zeros((4, 4))
    im[0, 1] = 0.2
    payload = {"dimA": 2, "dimB": 2, "re": re, "im": im.tolist()}
    path.write_text(json.dumps(payload))
    code, _, err = run_cli(capsys, "eval", str(path))
    assert code == 3
    assert "Hermitian" in err


def test_state_file_negative_eigenvalue_exit_3(capsys, tmp_path):
    path = tmp_path / "indefinite.json"
    payload = {
        "dimA": 2, "dimB": 2,
        "re": np.diag([0.75, 0.75, -0.25, -0.25]).tolist(),
        "im": np.zeros((4, 4)).tolist(),
    }
    path.write_text(json.dumps(payload))
    code, _, err = run_cli(capsys, "eval", str(path))
    assert code == 3
    assert "positive semidefinite" in err


def test_state_file_malformed_json_exit_3(capsys, tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "eval", str(path))
    assert code == 3


def test_dump_state_round_trips(capsys, tmp_path):
    path = tmp_path / "dumped.json"
    code, _, _ = run_cli(capsys, "eval", "werner:3:0.5",
                         "--dump-state", str(path))
    assert code == 0
    loaded = load_state(str(path))
    assert max_abs(loaded.matrix - werner(3, 0.5).matrix) <= 1e-15


# ---------------------------------------------------------------------------
# sweeps

def test_werner_sweep_ppt_flip(capsys):
    code, out, _ = run_cli(capsys, "sweep-werner", "--d", "3",
                           "--p-grid", "0:1:0.05", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 21
    verdicts = {row["parameters"]["p"]: row["verdicts"]["werner_ppt"]
                for row in rows}
    assert verdicts[0.5] == "pass"
    assert verdicts[0.55] == "fail"
    assert all(row["verdicts"]["counterpart_ppt"] == "pass" for row in rows)
    assert all(row["quantities"]["spectrum_distance"] < 1e-10 for row in rows)


def test_family_sweep_det_flip(capsys):
    code, out, _ = run_cli(capsys, "sweep-family",
                           "--r-grid", "0:0.375:0.005", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 76
    verdicts = {row["parameters"]["r"]: row["verdicts"]["prime_det_nonneg"]
                for row in rows}
    assert verdicts[0.215] == "pass"
    assert verdicts[0.22] == "fail"
    assert all(row["verdicts"]["rho_det_nonneg"] == "pass" for row in rows)
    assert all(row["verdicts"]["prime_chsh"] == "pass" for row in rows)


def test_empty_grid_empty_report(capsys):
    code, out, _ = run_cli(capsys, "sweep-family", "--r-grid", "")
    assert code == 0
    assert out == ""
    code, out, _ = run_cli(capsys, "sweep-family", "--r-grid", "",
                           "--format", "json")
    assert code == 0
    assert json.loads(out) == []


def test_sweep_rejects_even_dimension(capsys):
    code, _, err = run_cli(capsys, "sweep-werner", "--d", "4",
                           "--p-grid", "0:1:0.5")
    assert code == 2
    assert "odd" in err


def test_grid_parsing():
    assert parse_grid("") == []
    assert parse_grid("0.1,0.2") == [0.1, 0.2]
    assert parse_grid("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    with pytest.raises(CliUsageError):
        parse_grid("0:1:-0.1")
    with pytest.raises(CliUsageError):
        parse_grid("0:1:0.00001")  # too many points


# ---------------------------------------------------------------------------
# output plumbing

def test_out_flag_writes_file(capsys, tmp_path):
    path = tmp_path / "report.csv"
    code, out, _ = run_cli(capsys, "eval", "rank-counterexample",
                           "--out", str(path))
    assert code == 0
    assert out == ""
    text = path.read_text()
    assert text.startswith("scenario,")


def test_identical_invocations_are_byte_identical(capsys):
    _, out1, _ = run_cli(capsys, "eval", "werner:3:0.7", "--format", "json")
    _, out2, _ = run_cli(capsys, "eval", "werner:3:0.7", "--format", "json")
    assert out1 == out2
    _, csv1, _ = run_cli(capsys, "sweep-family", "--r-grid", "0:0.3:0.1")
    _, csv2, _ = run_cli(capsys, "sweep-family", "--r-grid", "0:0.3:0.1")
    assert csv1 == csv2


def test_twelve_significant_digits(capsys):
    code, out, _ = run_cli(capsys, "eval", "werner:3:0.9")
    header, record = out.strip().split("\n")
    fields = dict(zip(header.split(","), record.split(",")))
    assert fields["reduction_min_eig"] == "0.0333333333333"


def test_library_level_row_builders():
    rows = eval_rows("werner:3:0.5", (0.0, 2.0, math.inf), 1e-10)
    assert rows[0].scenario == "werner:3:0.5"
    assert "tsallis_inf" in rows[0].quantities
    csv_text = format_rows_csv(rows)
    json_text = format_rows_json(rows)
    assert csv_text.count("\n") == 2
    assert json.loads(json_text)[0]["parameters"]["d"] == 3.0


def test_build_state_rejects_extra_params():
    with pytest.raises(CliUsageError):
        build_state("rank-counterexample:1", 1e-10)


def test_nonpositive_tolerance_exits_2(capsys):
    code, _, err = run_cli(capsys, "eval", "rank-counterexample", "--tol", "0")
    assert code == 2
    assert "tolerance" in err


def test_module_entry_point_subprocess():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "sepspectra", "eval", "werner:3:0.9",
         "--format", "json"],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    rows = json.loads(proc.stdout)
    assert rows[0]["verdicts"]["ppt"] == "fail"

    proc = subprocess.run(
        [sys.executable, "-m", "sepspectra", "eval", "no-such-builder:1"],
        capture_output=True, text=True)
    assert proc.returncode == 2
