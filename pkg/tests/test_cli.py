import json

import pytest

from ccgeom.cli import EXIT_ALL_FAILED, EXIT_BAD_CONFIG, EXIT_OK, PRESETS, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_missing_config_and_preset_is_config_error(capsys):
    code, _, err = run(capsys, "section")
    assert code == EXIT_BAD_CONFIG
    assert "config" in err


def test_bad_config_file(tmp_path, capsys):
    bad = tmp_path / "c.json"
    bad.write_text("{nope")
    code, _, err = run(capsys, "section", "--config", str(bad))
    assert code == EXIT_BAD_CONFIG


def test_section_preset_json_report(capsys):
    code, out, _ = run(capsys, "section", "--preset", "disk-grid")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["summary"]["n_failed"] == 0
    assert rep["summary"]["n_rows"] == 9


def test_section_preset_csv_deterministic(tmp_path, capsys):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out_dir in (a, b):
        code, _, _ = run(capsys, "section", "--preset", "disk-grid",
                         "--out", str(out_dir), "--format", "csv")
        assert code == EXIT_OK
    assert (a / "rows.csv").read_bytes() == (b / "rows.csv").read_bytes()
    rep = json.loads((a / "report.json").read_text())
    assert rep["version"]
    assert "wall_time_s" in rep
    assert rep["config"] == PRESETS["section"]["disk-grid"]


def test_sccp_preset_controls(capsys):
    code, out, _ = run(capsys, "sccp", "--preset", "controls")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["summary"]["max_residual_norm"] >= 1e-3


def test_sccp_config_file(tmp_path, capsys):
    cfg = {
        "body": {"kind": "ellipsoid", "params": [1.0, 1.0],
                 "translation": [0.0, 0.0], "dim": 2},
        "n_directions": 4,
        "seed": 3,
    }
    f = tmp_path / "cfg.json"
    f.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "sccp", "--config", str(f))
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["summary"]["verdict"]["tag"] == "concurrent"


def test_cutvol_parallel_preset(capsys):
    code, out, _ = run(capsys, "cutvol", "--preset", "parabola-parallel")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["summary"]["rel_spread"] <= 1e-6
    assert rep["summary"]["mean"] == pytest.approx(4.0 / 3.0, rel=1e-6)


def test_cutvol_homothety_preset(capsys):
    code, out, _ = run(capsys, "cutvol", "--preset", "hyperbola-homothety")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["summary"]["rel_spread"] <= 1e-6


def test_cutvol_gradient_preset(capsys):
    code, out, _ = run(capsys, "cutvol", "--preset", "sphere-gradient",
                       "--seed", "1")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["summary"]["n_failed"] == 0
    assert rep["summary"]["max_scaled_identity_residual"] <= 1e-4


def test_asym_fig_presets(capsys):
    code, out, _ = run(capsys, "asym", "--preset", "hyperboloid")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["summary"]["verdict"] == "asymptotic"

    code, out, _ = run(capsys, "asym", "--preset", "fig1")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["summary"]["verdict"] == "not_asymptotic"
    # at R = 1e5 the scaled gap is log(R)/R, about 1.15e-4
    assert rep["summary"]["d_blowdown_final"] <= 2e-4


def test_all_rows_failed_exit_code(tmp_path, capsys):
    cfg = {
        "body": {"kind": "elliptic-paraboloid-epigraph", "params": [1.0, 1.0],
                 "translation": [0.0, 0.0, 0.0], "dim": 3},
        "directions": [[1.0, 0.0, 0.0]],  # unbounded sections only
        "levels": [0.0, 1.0],
    }
    f = tmp_path / "cfg.json"
    f.write_text(json.dumps(cfg))
    code, _, _ = run(capsys, "section", "--config", str(f))
    assert code == EXIT_ALL_FAILED


def test_cutvol_gradient_auto_translates_origin(tmp_path, capsys):
    cfg = {
        "body": {"kind": "ellipsoid", "params": [1.0, 1.0],
                 "translation": [0.0, 0.0], "dim": 2},
        "op": "gradient", "n_cuts": 3, "seed": 2,
    }
    f = tmp_path / "cfg.json"
    f.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "cutvol", "--config", str(f))
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["summary"]["origin_shift"][-1] > 0
    assert rep["summary"]["max_scaled_identity_residual"] <= 1e-4


def test_asym_bounded_body_reports_empty_shell(tmp_path, capsys):
    cfg = {
        "body": {"kind": "ellipsoid", "params": [1.0, 1.0],
                 "translation": [0.0, 0.0], "dim": 2},
        "radii": [100.0, 1000.0],
    }
    f = tmp_path / "cfg.json"
    f.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "asym", "--config", str(f))
    assert code == EXIT_ALL_FAILED
    rep = json.loads(out)
    assert rep["summary"]["n_failed"] == 2


def test_tol_override_is_echoed(tmp_path, capsys):
    out_dir = tmp_path / "o"
    code, _, _ = run(capsys, "section", "--preset", "disk-grid",
                     "--out", str(out_dir), "--tol", "1e-6")
    assert code == EXIT_OK
    rep = json.loads((out_dir / "report.json").read_text())
    assert rep["config"]["tol"] == 1e-6
