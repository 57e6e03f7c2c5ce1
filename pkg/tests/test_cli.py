import json
import math

import numpy as np
import pytest

import catlab.cli as cli
from catlab.cli import main, parse_theta, parse_z, read_table, success_probability
from catlab import CatalysisParams, catalyze


def run(args):
    return main(args)


def test_parse_theta_tokens_exact():
    assert parse_theta("pi/4") == math.pi / 4
    assert parse_theta("pi") == math.pi
    assert parse_theta("0.68") == 0.68
    with pytest.raises(Exception):
        parse_theta("tau/4")


def test_parse_z():
    assert parse_z("1.5") == 1.5 + 0j
    assert parse_z("1,-0.4") == 1 - 0.4j
    with pytest.raises(Exception):
        parse_z("a,b")


def test_success_probability_matches_oracle():
    p = CatalysisParams(z=1.2, theta=0.8, m=2)
    _, p_succ = catalyze(p.z, p.theta, p.m)
    assert success_probability(p) == pytest.approx(p_succ, rel=1e-10)


def test_metrics_csv_roundtrip(tmp_path):
    out = tmp_path / "metrics.csv"
    assert run(["metrics", "--z", "1", "--theta", "pi/4", "--m", "0", "--m", "2",
                "--out", str(out)]) == 0
    config, columns, rows, _ = read_table(out)
    assert config["command"] == "metrics"
    assert columns[:4] == ["z_re", "z_im", "theta", "m"]
    assert len(rows) == 2
    # coherent baseline row
    q, g2_val, var_q, var_p = rows[0][4], rows[0][5], rows[0][6], rows[0][7]
    assert abs(q) < 1e-12 and abs(g2_val - 1) < 1e-12
    assert var_q == pytest.approx(0.5, abs=1e-12)
    assert var_p == pytest.approx(0.5, abs=1e-12)
    # re-serialization is exact
    out2 = tmp_path / "again.csv"
    assert run(["metrics", "--z", "1", "--theta", "pi/4", "--m", "0", "--m", "2",
                "--out", str(out2)]) == 0
    assert out.read_text() == out2.read_text()


def test_metrics_json_mirror(tmp_path):
    out_csv = tmp_path / "m.csv"
    out_json = tmp_path / "m.json"
    base = ["metrics", "--z", "0.5,0.25", "--theta", "0.9", "--m", "1"]
    assert run(base + ["--out", str(out_csv)]) == 0
    assert run(base + ["--format", "json", "--out", str(out_json)]) == 0
    _, columns_c, rows_c, _ = read_table(out_csv)
    payload = json.loads(out_json.read_text())
    assert payload["columns"] == columns_c
    assert np.allclose(payload["rows"], rows_c, rtol=0, atol=0)


def test_metrics_oracle_audit(tmp_path):
    out = tmp_path / "audited.json"
    assert run(["metrics", "--z", "1", "--theta", "pi/3", "--m", "2",
                "--oracle", "--format", "json", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["oracle_max_deviation"] < 1e-6


def test_pnd_rows_sum_to_one(tmp_path):
    out = tmp_path / "pnd.csv"
    assert run(["pnd", "--z", "1", "--theta", "pi/3", "--m", "0",
                "--out", str(out)]) == 0
    config, columns, rows, extra = read_table(out)
    assert columns == ["n", "p_n"]
    assert abs(sum(r[1] for r in rows) - 1.0) < 1e-8
    # Poisson with mean cos^2(pi/3) = 0.25
    assert rows[0][1] == pytest.approx(math.exp(-0.25), rel=1e-12)
    assert extra["sum_p"] == pytest.approx(1.0, abs=1e-8)


def test_pnd_known_probability(tmp_path):
    out = tmp_path / "pnd3.csv"
    assert run(["pnd", "--z", "0.5", "--theta", "pi/3", "--m", "3",
                "--out", str(out), "--oracle"]) == 0
    _, _, rows, extra = read_table(out)
    assert rows[1][1] == pytest.approx(0.77, abs=0.005)
    assert extra["oracle_max_deviation"] < 1e-6


def test_wigner_grid_file_roundtrip(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    assert run(["wigner", "--z", "1", "--theta", "pi/5", "--m", "1",
                "--grid=-3:3:41", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "delta =" in printed and "min_W =" in printed
    config, columns, rows, extra = read_table(out)
    assert columns == ["q", "p", "W"]
    assert len(rows) == 41 * 41
    # row-major q-then-p: first 41 rows share q_min
    assert all(r[0] == rows[0][0] for r in rows[:41])
    assert extra["delta"] == pytest.approx(0.023, abs=0.01)
    assert extra["norm_defect"] < 5e-3


def test_exit_code_bad_input():
    assert run(["metrics", "--z", "0", "--theta", "0.4", "--m", "1"]) == 2
    assert run(["metrics", "--z", "1", "--theta", "pi/2", "--m", "1"]) == 2


def test_exit_code_nonconvergence():
    assert run(["metrics", "--z", "2", "--theta", "0.5", "--m", "2",
                "--oracle", "--n-trunc", "6"]) == 3


def test_scan_subcommand_extras(tmp_path):
    out = tmp_path / "scan.json"
    assert run(["scan", "--metric", "mandel-q", "--variable", "theta",
                "--lo", "0.01", "--hi", "1.5", "--n-points", "300",
                "--z", "1", "--theta", "0", "--m", "1",
                "--format", "json", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    crossings = [v for k, v in payload.items() if k.startswith("zero_crossing")]
    assert crossings, "negative region must produce at least one sign change"
    assert len(payload["rows"]) == 300


def test_squeeze_opt_subcommand(tmp_path):
    out = tmp_path / "sq.csv"
    assert run(["squeeze-opt", "--z", "1", "--m", "1", "--out", str(out)]) == 0
    _, columns, rows, _ = read_table(out)
    assert columns == ["z_re", "z_im", "m", "db_best", "theta_star", "var_at_star"]
    assert rows[0][3] == pytest.approx(-1.249, abs=0.005)


def test_decohere_subcommand(tmp_path, capsys):
    out = tmp_path / "dec.csv"
    assert run(["decohere", "--z", "1", "--theta", "pi/4", "--m", "1",
                "--kt", "0", "--kt", "0.1", "--out", str(out)]) == 0
    assert "kt_c =" in capsys.readouterr().out
    _, columns, rows, extra = read_table(out)
    assert columns == ["kt", "min_W", "delta"]
    assert rows[0][1] < 0.0 and rows[1][1] < 0.0
    assert rows[0][1] <= rows[1][1]
    assert extra["kt_c"] > 0.0


def test_table1_plumbing(tmp_path, monkeypatch):
    # the 18 real cells are exercised by the acceptance suite; here only
    # the table layout and serialization
    monkeypatch.setattr(cli.wigner, "negative_volume", lambda p: 0.125)
    out = tmp_path / "table.csv"
    assert run(["table1", "--out", str(out)]) == 0
    _, columns, rows, _ = read_table(out)
    assert columns == ["m", "z", "theta", "delta"]
    assert len(rows) == 18
    assert {int(r[0]) for r in rows} == {1, 2, 3}
    assert {r[1] for r in rows} == {1.0, 2.0}


def test_repro_list_and_cheap_recipe(tmp_path, capsys):
    assert run(["repro", "--list"]) == 0
    assert "pnd-panels" in capsys.readouterr().out
    assert run(["repro", "pnd-panels", "--out-dir", str(tmp_path)]) == 0
    files = sorted(tmp_path.glob("pnd_*.csv"))
    assert len(files) == 4
    _, columns, rows, _ = read_table(files[0])
    assert columns[0] == "n"
    assert len(rows) == 11
