"""End-to-end tests for the holobit command line interface.

Everything goes through cli.main(argv) in-process so exit codes, stdout
payloads, and stderr progress lines can all be asserted without spawning
subprocesses.
"""

import json

import pytest

from holobit import cli, runner


def _write_scenario(path, **overrides) -> str:
    """Serialize the default scenario with some fluid overrides to a file."""
    data = runner.Scenario().to_dict()
    for key, value in overrides.items():
        section, name = key.split(".", 1)
        data[section][name] = value
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_run_default_passes(capsys):
    rc = cli.main(["run"])
    captured = capsys.readouterr()
    assert rc == 0
    payload = json.loads(captured.out)
    assert payload["schema"] == "holobit/report/1"
    assert payload["summary"] == {"n_checks": 16, "n_passed": 16,
                                  "n_failed": 0, "all_passed": True}
    assert "[PASS] packet_coarse_graining" in captured.err
    assert "16/16 checks passed" in captured.err
    assert "[FAIL]" not in captured.err


def test_run_out_file_and_determinism(tmp_path, capsys):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert cli.main(["run", "--out", str(first)]) == 0
    assert cli.main(["run", "--out", str(second)]) == 0
    capsys.readouterr()
    blob = first.read_bytes()
    assert blob == second.read_bytes()
    assert blob.endswith(b"\n")
    # --out swallows stdout entirely; the payload must not leak there
    assert capsys.readouterr().out == ""


def test_run_csv_format(capsys):
    rc = cli.main(["run", "--format", "csv"])
    captured = capsys.readouterr()
    assert rc == 0
    lines = captured.out.strip().split("\n")
    assert lines[0] == "check,passed,residual,tolerance,error"
    assert len(lines) == 17


def test_run_failing_scenario_exits_one(tmp_path, capsys):
    path = _write_scenario(tmp_path / "fast.json", **{"fluid.u": 0.6})
    rc = cli.main(["run", "--scenario", path])
    captured = capsys.readouterr()
    assert rc == 1
    assert "[FAIL]" in captured.err
    assert "11/16 checks passed" in captured.err
    payload = json.loads(captured.out)
    assert payload["summary"]["all_passed"] is False


def test_run_seed_override_changes_payload(tmp_path, capsys):
    base = tmp_path / "s0.json"
    other = tmp_path / "s1.json"
    assert cli.main(["run", "--out", str(base)]) == 0
    assert cli.main(["run", "--seed", "1", "--out", str(other)]) == 0
    capsys.readouterr()
    a = json.loads(base.read_text())
    b = json.loads(other.read_text())
    assert a["scenario"]["seed"] == 0
    assert b["scenario"]["seed"] == 1
    assert a != b


def test_negative_seed_rejected(capsys):
    rc = cli.main(["run", "--seed", "-3"])
    captured = capsys.readouterr()
    assert rc == 2
    assert captured.err.startswith("config error: seed")
    assert captured.out == ""


def test_missing_scenario_file(tmp_path, capsys):
    rc = cli.main(["run", "--scenario", str(tmp_path / "nope.json")])
    captured = capsys.readouterr()
    assert rc == 2
    assert captured.err.startswith("config error:")


def test_malformed_scenario_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    rc = cli.main(["run", "--scenario", str(path)])
    assert rc == 2
    assert "config error:" in capsys.readouterr().err


def test_strict_regime_flag_reaches_scenario(tmp_path, capsys):
    out = tmp_path / "strict.json"
    assert cli.main(["run", "--strict-regime", "--out", str(out)]) == 0
    capsys.readouterr()
    payload = json.loads(out.read_text())
    assert payload["scenario"]["strict_regime"] is True


def test_sweep_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    rc = cli.main(["sweep", "--parameter", "fluid.u", "--values", "0,0.05",
                   "--format", "csv", "--out", str(out)])
    captured = capsys.readouterr()
    assert rc == 0
    assert "fluid.u = 0.0: 16 passed, 0 failed" in captured.err
    lines = out.read_text().strip().split("\n")
    assert lines[0] == ",".join(runner.SWEEP_COLUMNS)
    assert len(lines) == 3


def test_sweep_unknown_parameter(capsys):
    rc = cli.main(["sweep", "--parameter", "bogus.knob", "--values", "1,2"])
    captured = capsys.readouterr()
    assert rc == 2
    assert "unknown sweep parameter" in captured.err


def test_sweep_unparsable_values(capsys):
    rc = cli.main(["sweep", "--parameter", "fluid.u", "--values", "0.1,alpha"])
    assert rc == 2
    assert "config error: values" in capsys.readouterr().err


def test_sweep_empty_values(capsys):
    rc = cli.main(["sweep", "--parameter", "fluid.u", "--values", ","])
    assert rc == 2
    assert "at least one value" in capsys.readouterr().err


def test_sweep_requires_values_flag():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["sweep", "--parameter", "fluid.u"])
    assert excinfo.value.code == 2


def test_check_rejects_csv_quickly(capsys):
    rc = cli.main(["check", "--format", "csv"])
    captured = capsys.readouterr()
    assert rc == 2
    assert "acceptance report is JSON only" in captured.err
    # the format gate fires before any criterion runs
    assert "criterion" not in captured.err


@pytest.mark.slow
def test_check_full_suite(tmp_path, capsys):
    out = tmp_path / "acceptance.json"
    rc = cli.main(["check", "--out", str(out)])
    captured = capsys.readouterr()
    assert rc == 0
    assert "[PASS] criterion 1:" in captured.err
    assert "10/10 criteria passed" in captured.err
    payload = json.loads(out.read_text())
    assert payload["summary"]["all_passed"] is True
    assert len(payload["criteria"]) == 10


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["frobnicate"])
    assert excinfo.value.code == 2
