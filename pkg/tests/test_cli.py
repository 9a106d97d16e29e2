"""Command-line interface: exit codes, files written, config handling."""

import json
import os

from idemlift.cli import main
from idemlift.report import REPORT_VERSION


def test_run_writes_report_and_exits_zero(tmp_path, capsys):
    out = tmp_path / "block.json"
    code = main(
        ["run", "block-testbed", "--grid", "0,0.4,3", "--out", str(out), "--seed", "2"]
    )
    assert code == 0
    stdout = capsys.readouterr().out
    assert "PASS" in stdout
    rep = json.loads(out.read_text())
    assert rep["version"] == REPORT_VERSION
    assert rep["scenario"] == "block-testbed"
    assert rep["seed"] == 2


def test_csv_grid_rows(tmp_path):
    out = tmp_path / "b.json"
    csv_path = tmp_path / "b.csv"
    code = main(
        [
            "run",
            "block-testbed",
            "--grid", "0,0.4,3",
            "--out", str(out),
            "--csv", str(csv_path),
        ]
    )
    assert code == 0
    lines = csv_path.read_text().splitlines()
    header = lines[0].split(",")
    assert header[:4] == ["run", "lambda_re", "lambda_im", "valid"]
    assert "lift" in header
    # local + two family steps + orthogonality summary, 3 points each
    assert len(lines) == 1 + 4 * 3


def test_absurd_tolerance_exits_one(tmp_path):
    code = main(
        [
            "run",
            "example3",
            "--grid", "0,0.4,3",
            "--tol-lift", "1e-30",
            "--out", str(tmp_path / "e3.json"),
        ]
    )
    assert code == 1


def test_unknown_scenario_exits_two_and_lists_ids(tmp_path, capsys):
    code = main(["run", "not-a-scenario", "--out", str(tmp_path / "x.json")])
    assert code == 2
    err = capsys.readouterr().err
    assert "dual-testbed" in err and "example2" in err


def test_list_prints_scenario_ids(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out.split()
    assert out == [
        "block-testbed",
        "dual-testbed",
        "example1",
        "example2",
        "example3",
        "remark3-probe",
    ]


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\ngrid=0,0.4,3\nseed=9\nout=%s\n" % (tmp_path / "r.json"))
    code = main(["run", "example1", "--config", str(cfg)])
    assert code == 0
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["seed"] == 9
    assert len(rep["grid"]) == 3


def test_flags_override_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("seed=9\n")
    out = tmp_path / "r.json"
    code = main(
        ["run", "example1", "--config", str(cfg), "--seed", "4",
         "--grid", "0,0.4,3", "--out", str(out)]
    )
    assert code == 0
    assert json.loads(out.read_text())["seed"] == 4


def test_unknown_config_key_exits_two(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("wibble=1\n")
    assert main(["run", "example1", "--config", str(cfg)]) == 2
    assert "wibble" in capsys.readouterr().err


def test_malformed_grid_exits_two(tmp_path, capsys):
    assert main(["run", "example1", "--grid", "0;0.5;3"]) == 2
    assert "grid" in capsys.readouterr().err


def test_missing_config_file_exits_two(tmp_path):
    assert main(["run", "example1", "--config", str(tmp_path / "absent.cfg")]) == 2


def test_env_var_sets_default_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("IDEMLIFT_OUT_DIR", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    code = main(["run", "example1", "--grid", "0,0.4,3"])
    assert code == 0
    assert (tmp_path / "example1-report.json").exists()


def test_cli_reports_are_deterministic(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert (
            main(["run", "remark3-probe", "--seed", "6", "--out", str(p)]) == 0
        )
    a = json.loads(paths[0].read_text())
    b = json.loads(paths[1].read_text())
    a.pop("timings")
    b.pop("timings")
    assert a == b
