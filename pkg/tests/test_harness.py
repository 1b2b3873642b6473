"""Checks for the experiment harness: configs, runs, files, determinism."""

import json
import os

import numpy as np
import pytest

from catlab import cli, harness
from catlab.errors import ConfigInvalid


def make(kind, parameters, prefix="t", **kw):
    return harness.ExperimentConfig.from_dict(
        {"kind": kind, "parameters": parameters, "prefix": prefix, **kw})


def read_csv(path):
    lines = path.read_text().split("\n")
    assert lines[0].startswith("# config: ")
    assert lines[-1] == ""  # trailing newline
    return lines[0], lines[1], lines[2:-1]


def test_config_rejects_unknown_fields():
    with pytest.raises(ConfigInvalid):
        harness.ExperimentConfig.from_dict({"kind": "classical", "parameters": {},
                                            "extra": 1})
    with pytest.raises(ConfigInvalid):
        make("no-such-kind", {})
    with pytest.raises(ConfigInvalid):
        make("classical", {"p": 2, "n": 2, "grid": 256}, budget={"bytes": 1})


def test_config_range_forms():
    cfg = make("classical", {"p": 2, "n": "2..4", "grid": 256})
    assert len(harness.validate(cfg)) == 3
    cfg = make("classical", {"p": 2, "n": [1, 3], "grid": 256})
    assert len(harness.validate(cfg)) == 2
    cfg = make("classical", {"p": 2, "n": 2, "grid": 256})
    assert len(harness.validate(cfg)) == 1
    with pytest.raises(ConfigInvalid):
        harness.validate(make("classical", {"p": 2, "n": "4..2", "grid": 256}))
    with pytest.raises(ConfigInvalid):
        harness.validate(make("classical", {"p": 2, "n": [], "grid": 256}))
    with pytest.raises(ConfigInvalid):
        harness.validate(make("classical", {"p": 2}))  # n missing


def test_validation_happens_before_compute(tmp_path):
    cfg = make("single-cat-entropy", {"q": "3..2", "p": 2, "n": 1})
    with pytest.raises(ConfigInvalid):
        harness.run(cfg, out_dir=str(tmp_path))
    assert list(tmp_path.iterdir()) == []


def test_classical_run_contents(tmp_path):
    cfg = make("classical", {"p": 2, "n": "1..2", "grid": 256}, prefix="cl")
    rs = harness.run(cfg, out_dir=str(tmp_path))
    assert rs.errors == []
    assert [os.path.basename(p) for p in rs.outputs] == ["cl_entropy.csv"]
    config_line, header, rows = read_csv(tmp_path / "cl_entropy.csv")
    assert header == "p,n,grid,S_cl"
    assert len(rows) == 2
    assert rows[0] == "2,1,256,1.38629436111989"
    echoed = json.loads(config_line[len("# config: "):])
    assert echoed["kind"] == "classical"
    assert "workers" not in json.dumps(echoed)
    summary = json.loads((tmp_path / "cl_summary.json").read_text())
    assert summary["outputs"] == ["cl_entropy.csv"]
    assert summary["errors"] == []


def test_single_entropy_columns_and_omega_gap(tmp_path):
    # small dim runs through the compressed recursion: word columns are blank
    cfg = make("single-cat-entropy", {"q": 2, "p": 2, "n": "6..7"}, prefix="s")
    rs = harness.run(cfg, out_dir=str(tmp_path))
    assert rs.errors == []
    _, header, rows = read_csv(tmp_path / "s_entropy.csv")
    assert header == "q,p,n,S_af,S_diag,S_cl,bound"
    cells = rows[1].split(",")
    assert cells[:3] == ["2", "2", "7"]
    assert cells[4] == ""            # no word list at this length
    assert float(cells[3]) > 0.0
    assert float(cells[6]) == pytest.approx(4.0 * np.log(2.0), abs=1e-10)


def test_runs_are_deterministic_bytes(tmp_path):
    cfg = make("mass-sweep", {"q": "2..3", "p": 2, "n": 3, "sector": [0, 0]},
               prefix="m")
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    harness.run(cfg, out_dir=str(a))
    harness.run(cfg, out_dir=str(b))
    harness.run(cfg, out_dir=str(c), workers=2)
    content = (a / "m_scaling.csv").read_bytes()
    assert (b / "m_scaling.csv").read_bytes() == content
    assert (c / "m_scaling.csv").read_bytes() == content


def test_partial_failure_keeps_feasible_points(tmp_path):
    # the last point blows the word budget, the earlier ones still land
    cfg = make("single-cat-entropy", {"q": [2, 7], "p": 2, "n": 3},
               prefix="pf", budget={"words": 16})
    rs = harness.run(cfg, out_dir=str(tmp_path))
    assert len(rs.errors) == 1
    assert "budget" in rs.errors[0]["error"].lower() or "word" in rs.errors[0]["error"].lower()
    _, _, rows = read_csv(tmp_path / "pf_entropy.csv")
    assert len(rows) == 1
    assert rows[0].split(",")[0] == "2"
    summary = json.loads((tmp_path / "pf_summary.json").read_text())
    assert len(summary["errors"]) == 1


def test_sector_matrix_outputs_and_plot_data(tmp_path):
    cfg = make("sector-matrix",
               {"q": 2, "p": 2, "n": 3, "sector": [0, 0]}, prefix="sm")
    rs = harness.run(cfg, out_dir=str(tmp_path))
    assert rs.errors == []
    names = [os.path.basename(p) for p in rs.outputs]
    assert "sm_matrix.csv" in names and "sm_measures.csv" in names
    _, header, rows = read_csv(tmp_path / "sm_matrix.csv")
    assert header == "theta,sigma,re,im,abs"
    assert len(rows) == 16  # 4 sector words squared
    harness.emit_plot_data(rs)
    assert (tmp_path / "sm_plot.gp").exists()
    assert (tmp_path / "sm_plotdata_grid.csv").exists()
    assert (tmp_path / "sm_plotdata_diag.csv").exists()
    gp = (tmp_path / "sm_plot.gp").read_text()
    assert "set key autotitle columnhead" in gp


def test_von_neumann_run_and_snapshots(tmp_path):
    cfg = make("von-neumann",
               {"q": 3, "r": 1, "i": 1, "kappa": 5.0, "steps": 3,
                "snapshots": [2]}, prefix="vn")
    rs = harness.run(cfg, out_dir=str(tmp_path))
    assert rs.errors == []
    _, header, rows = read_csv(tmp_path / "vn_entropy.csv")
    assert header == "t,S_vn"
    assert len(rows) == 4
    assert float(rows[0].split(",")[1]) == pytest.approx(0.0, abs=1e-10)
    _, sheader, srows = read_csv(tmp_path / "vn_snapshot2.csv")
    assert sheader == "j0p,j0,abs"
    assert len(srows) == 64


def test_kappa_sweep_columns(tmp_path):
    cfg = make("kappa-sweep",
               {"q": 3, "r": 1, "i": 1, "p": 2, "n": 3,
                "kappa": [0.0, 10.0], "sector": [0, 0]}, prefix="ks")
    rs = harness.run(cfg, out_dir=str(tmp_path))
    assert rs.errors == []
    _, header, rows = read_csv(tmp_path / "ks_sweep.csv")
    assert header == "kappa,offdiag,d_symb,sector_prob,S_af,S_diag,S_cl"
    assert len(rows) == 2
    prob = float(rows[0].split(",")[3])
    assert prob == pytest.approx(0.0625, abs=1e-6)


def test_cli_validate_and_run(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({
        "kind": "classical", "prefix": "c",
        "parameters": {"p": 2, "n": 1, "grid": 256}}))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "kind": "classical", "prefix": "c",
        "parameters": {"p": 2, "n": "4..2", "grid": 256}}))
    assert cli.main(["validate", str(good)]) == 0
    assert cli.main(["validate", str(bad)]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["validate", str(tmp_path / "missing.json")])
    assert exc.value.code == 2
    out = tmp_path / "out"
    assert cli.main(["run", str(good), "--out", str(out)]) == 0
    assert (out / "c_entropy.csv").exists()
    assert (out / "c_plot.gp").exists()


def test_cli_run_reports_point_failures(tmp_path):
    cfg = tmp_path / "fail.json"
    cfg.write_text(json.dumps({
        "kind": "single-cat-entropy", "prefix": "f",
        "parameters": {"q": 7, "p": 2, "n": 3},
        "budget": {"words": 16}}))
    out = tmp_path / "out"
    assert cli.main(["run", str(cfg), "--out", str(out)]) == 1


def test_cli_list_experiments(tmp_path, monkeypatch, capsys):
    exp = tmp_path / "experiments"
    exp.mkdir()
    (exp / "alpha.json").write_text("{}")
    monkeypatch.chdir(tmp_path)
    assert cli.main(["list-experiments"]) == 0
    out = capsys.readouterr().out
    assert "alpha.json" in out
