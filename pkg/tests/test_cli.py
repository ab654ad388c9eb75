import json
import math
import subprocess
import sys

import pytest

from engelsr.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_k0(capsys):
    code, out, _ = run_cli(capsys, "k0")
    assert code == 0
    assert out.startswith("0.9089085575")


def test_cut_time_circular(capsys):
    code, out, _ = run_cli(capsys, "cut-time", "--theta", "0", "--c", "4", "--alpha", "0")
    assert code == 0
    assert "class,C6" in out
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(math.pi / 2, rel=1e-12)


def test_cut_time_infinite(capsys):
    code, out, _ = run_cli(capsys, "cut-time", "--theta", "0.3", "--c", "0", "--alpha", "0")
    assert code == 0
    assert "t_cut,inf" in out


def test_classify(capsys):
    code, out, _ = run_cli(capsys, "classify", "--x", "0", "--y", "0", "--z", "0", "--w", "1")
    assert code == 0
    assert out.strip() == "E+ family"


def test_classify_json(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "classify",
                           "--x", "0", "--y", "1", "--z", "0", "--w", "1")
    assert code == 0
    data = json.loads(out)
    assert data["label"] == "I0x+"
    assert data["multiplicity"] == 2


def test_geodesic_csv(capsys):
    code, out, _ = run_cli(capsys, "geodesic", "--theta", "0", "--c", "0", "--alpha", "0",
                           "--t", "2", "--samples", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,x,y,z,w,theta,c"
    assert len(lines) == 6
    last = [float(v) for v in lines[-1].split(",")]
    assert last[0] == 2.0
    assert last[2] == pytest.approx(2.0, abs=1e-10)


def test_synthesize_json(capsys):
    code, out, _ = run_cli(capsys, "synthesize", "--x", "0", "--y", "2", "--z", "0", "--w", "0")
    assert code == 0
    data = json.loads(out)
    assert data["stratum"]["label"] == "A+"
    assert len(data["minimizers"]) == 1
    assert data["minimizers"][0]["time"] == pytest.approx(2.0, abs=1e-12)


def test_curves_csv(capsys):
    code, out, _ = run_cli(capsys, "curves", "--which", "w21", "--grid", "12")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,Y,W"
    assert len(lines) == 13


def test_deterministic_output(capsys):
    argv = ["synthesize", "--x", "0", "--y", "1", "--z", "0", "--w", "1"]
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run_cli(capsys, "-o", str(target), "k0")
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("0.9089")


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json", "k_grid": 5}))
    code, out, _ = run_cli(capsys, "--config", str(cfg), "curves", "--which", "fix3")
    assert code == 0
    assert len(json.loads(out)) == 5


def test_config_env_var(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json"}))
    monkeypatch.setenv("ENGELSR_CONFIG", str(cfg))
    code, out, _ = run_cli(capsys, "classify", "--x", "1", "--y", "1", "--z", "1", "--w", "1")
    assert code == 0
    assert json.loads(out)["label"] == "Generic"


def test_bad_config_exits_2(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"eps_class": -1}))
    code, _, err = run_cli(capsys, "--config", str(cfg), "k0")
    assert code == 2
    assert "config error" in err


def test_usage_error_exits_2(capsys):
    assert main(["curves", "--which", "bogus"]) == 2


def test_numeric_error_exits_1(capsys):
    code, _, err = run_cli(capsys, "synthesize", "--x", "0", "--y", "0", "--z", "0", "--w", "0")
    assert code == 1
    assert "error" in err


def test_module_entrypoint_runs():
    proc = subprocess.run([sys.executable, "-m", "engelsr.cli", "k0"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout.startswith("0.9089")
