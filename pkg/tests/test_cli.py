import json
import subprocess
import sys

import pytest

from fermifid.cli import main


def run_main(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_spectrum_cyclic(capsys):
    code, out = run_main(["spectrum", "--L", "8", "--mu", "1.2",
                          "--gamma", "0.5"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "j,re_zeta,im_zeta,modulus,theta"
    assert len(lines) == 9
    # zeta_1 = mu + L - 1 in the default s4 convention
    assert float(lines[1].split(",")[1]) == pytest.approx(8.2)


def test_spectrum_free_ends(capsys):
    code, out = run_main(["spectrum", "--L", "6", "--boundary", "free",
                          "--mu", "1.0", "--gamma", "0.3"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "j,lambda"


def test_map_to_file_with_metadata(tmp_path, capsys):
    out_file = tmp_path / "map.csv"
    code, _ = run_main(["map", "--L", "9", "--mu", "0:2:3",
                        "--gamma", "0.5:1.5:2", "--quantities", "E0,gap",
                        "--out", str(out_file)], capsys)
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "L,mu,gamma,E0,gap,status"
    assert len(lines) == 7
    meta = json.loads((tmp_path / "map.csv.meta.json").read_text())
    assert meta["mu"] == [0.0, 2.0, 3]


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"L": 8, "mu": "1.2", "gamma": "0.5",
                               "range": 1, "format": "csv"}))
    code, out = run_main(["spectrum", "--config", str(cfg)], capsys)
    assert code == 0
    # r = 1 chain: zeta_1 = mu + 2r = 3.2 in the s4 convention
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(3.2)
    # flag overrides config
    code, out = run_main(["spectrum", "--config", str(cfg), "--mu", "2.2",
                          "--range", "full"], capsys)
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(9.2)


def test_boundary_command(capsys):
    code, out = run_main(["boundary", "--L", "2", "--boundary", "free",
                          "--mu", "0.1:1.5:40", "--gamma", "0.6"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert float(lines[1].split(",")[1]) == pytest.approx(0.8, abs=1e-6)


def test_scaling_and_collapse(capsys):
    code, out = run_main(["scaling", "--L", "101,201", "--gamma", "1.5",
                          "--mu", "0.8:1.2:21"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "L,mu_min,h_min"
    assert len(lines) == 3
    code, out = run_main(["collapse", "--L", "101,201", "--gamma", "1.5",
                          "--mu", "0.8:1.2:21", "--collapse-points", "5"],
                         capsys)
    assert code == 0
    assert len(out.splitlines()) == 11


def test_tdl_command(capsys):
    code, out = run_main(["tdl", "--L", "1001", "--mu", "2", "--gamma", "1.5"],
                         capsys)
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert float(row[3]) == pytest.approx(-21.688333333333333)


def test_oracle_check(capsys):
    code, out = run_main(["oracle-check", "--trials", "4", "--seed", "11",
                          "--L", "6"], capsys)
    assert code == 0
    assert "oracle-check" in out


def test_parameter_error_exit_code(capsys):
    code = main(["map", "--L", "9", "--mu", "0:2:3", "--gamma", "0.5:1.5:2",
                 "--quantities", "bogus"])
    assert code == 1


def test_bad_axis_spec_exit_code(capsys):
    code = main(["spectrum", "--L", "8", "--mu", "1:2"])
    assert code == 1


def test_io_error_exit_code(capsys):
    code = main(["spectrum", "--L", "8", "--mu", "1.0",
                 "--out", "/nonexistent-dir/x.csv"])
    assert code == 2


def test_missing_config_exit_code(capsys):
    code = main(["spectrum", "--config", "/nonexistent-dir/cfg.json"])
    assert code == 2


def test_usage_error_exits_one():
    proc = subprocess.run([sys.executable, "-m", "fermifid.cli",
                           "--no-such-flag"], capture_output=True)
    assert proc.returncode == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fermifid.cli", "tdl",
                           "--mu", "2", "--gamma", "1.5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("L,mu,gamma")
