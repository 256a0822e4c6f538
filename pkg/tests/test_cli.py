import json
import subprocess
import sys

import numpy as np
import pytest

from poissondisk.cli import ConfigError, RunConfig, compile_expression, main, run


def run_json(argv, capsys):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_catalog(capsys):
    code, rows = run_json(["catalog"], capsys)
    labels = {r["label"]: r for r in rows}
    assert code == 0
    assert labels["identity"]["K"] == "1" and labels["identity"]["g"] == "0"
    assert labels["quadratic-source:c"]["g"] == "4c"


def test_measure_perimeter(capsys):
    code, rows = run_json(["measure", "--map", "scale:2", "--functional", "perimeter", "--r", "1"], capsys)
    assert code == 0 and rows[0]["value"] == pytest.approx(4 * np.pi)


def test_measure_coefficients_csv(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["measure", "--map", "shear:0.5", "--functional", "coefficients", "--n-max", "3",
                 "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("map,functional,n") and len(lines) == 4


def test_verify_identity_thm3(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--map", "identity", "--suite", "thm3", "--out", str(out)]) == 0
    reps = json.loads(out.read_text())
    first = reps[0]
    assert first["theorem_id"] == "thm3.coefficients[n=1]" and first["sharp"] and first["map"] == "identity"
    for key in ("theorem_id", "lhs", "rhs", "margin", "holds", "resolution"):
        assert key in first


def test_verify_shear_all_holds(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--map", "shear:0.5", "--suite", "all", "--out", str(out)]) == 0


def test_verify_reports_failure(monkeypatch, tmp_path):
    from poissondisk.analysis import suites
    from poissondisk.analysis.report import make_report

    monkeypatch.setattr(suites, "run_suite",
                        lambda *a, **k: [make_report("fake", 2.0, 1.0, 0.0)])
    out = tmp_path / "r.json"
    assert main(["verify", "--map", "identity", "--out", str(out)]) == 1


@pytest.mark.parametrize("argv", [
    ["verify", "--map", "nope"],
    ["verify", "--map", "shear:2"],
    ["verify", "--boundary-nodes", "1000"],
    ["solve", "--map", "custom", "--psi", "__import__('os')"],
    ["solve", "--map", "custom"],
    ["solve", "--map", "identity", "--points", "2"],
    ["verify", "--map", "identity", "--suite", "thm3", "--out", "/nonexistent/dir/x.json"],
])
def test_config_errors(argv, capsys):
    assert main(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"map": "scale:5", "functional": "radial-length-sup"}))
    code, rows = run_json(["measure", "--config", str(cfg)], capsys)
    assert code == 0 and rows[0]["value"] == pytest.approx(5.0)
    # flags override the file
    code, rows = run_json(["measure", "--config", str(cfg), "--map", "identity"], capsys)
    assert rows[0]["value"] == pytest.approx(1.0)


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"map": "identity",\n "seed": }')
    assert main(["verify", "--config", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    unknown = tmp_path / "unknown.json"
    unknown.write_text('{"colour": 1}')
    assert main(["verify", "--config", str(unknown)]) == 2


def test_custom_solve(capsys):
    code, rows = run_json(["solve", "--map", "custom", "--psi", "0", "--g", "1",
                           "--points", "0", "0.5i"], capsys)
    assert code == 0
    assert rows[0]["f"][0] == pytest.approx(-0.25, abs=1e-10)
    assert rows[1]["f_z"][1] == pytest.approx(-0.125, abs=1e-10)


def test_expressions():
    f = compile_expression("z^2 + conj(z) + abs(z)*i")
    assert f(np.array([0.5j]))[0] == pytest.approx(-0.25 - 0.5j + 0.5j)
    with pytest.raises(ConfigError):
        compile_expression("z.real")
    with pytest.raises(ConfigError):
        compile_expression("open('x')")


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig("verify", suite="thm7").validate()
    assert run(RunConfig("catalog", out=None)) == 0


def test_console_script_deterministic(tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.csv"
        subprocess.run([sys.executable, "-m", "poissondisk.cli", "verify", "--map", "cubic:0.1",
                        "--suite", "thm1", "--seed", "7", "--format", "csv", "--out", str(out)],
                       check=True)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
