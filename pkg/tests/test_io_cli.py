import math
import os
import subprocess
import sys

import numpy as np
import pytest

import wesurf as ws
from wesurf.cli import main
from wesurf.io_export import SCHEMA, export_mesh, quad_triangles, write_surface_csv


def flat_surface(n1=3, n2=3):
    g = ws.ParamGrid("rectangle", n1, n2, (0.0, 1.0, 0.0, 1.0))
    r = g.nodes()
    return ws.surface_from_components(g, r.real, np.zeros(g.shape), r.imag)


# ----------------------------------------------------------------- exporters

def test_obj_counts_for_tiny_grid(tmp_path):
    path = export_mesh(flat_surface(), tmp_path / "flat.obj")
    lines = path.read_text().splitlines()
    assert sum(1 for L in lines if L.startswith("v ")) == 9
    assert sum(1 for L in lines if L.startswith("f ")) == 8


def test_obj_counts_for_catenoid_annulus(tmp_path):
    g = ws.default_annulus(0.4, 0.9, 64, 64)
    s = ws.catenoid_closed(g)
    lines = export_mesh(s, tmp_path / "cat.obj").read_text().splitlines()
    assert sum(1 for L in lines if L.startswith("v ")) == 4096
    # full-circle sampling includes both angular endpoints: the seam closes
    verts = np.array([[float(v) for v in L.split()[1:]] for L in lines
                      if L.startswith("v ")]).reshape(64, 64, 3)
    assert np.max(np.abs(verts[:, 0, :] - verts[:, -1, :])) < 1e-12


def test_obj_rerun_is_byte_identical(tmp_path):
    s = flat_surface(5, 7)
    a = export_mesh(s, tmp_path / "a.obj").read_bytes()
    b = export_mesh(s, tmp_path / "b.obj").read_bytes()
    assert a == b


def test_wick_mesh_writes_complex_sidecar(tmp_path):
    g = ws.default_annulus(0.4, 0.9, 5, 8)
    s = ws.wick_rotate(ws.catenoid_closed(g))
    export_mesh(s, tmp_path / "wick.obj")
    sidecar = tmp_path / "wick_complex.csv"
    assert sidecar.exists()
    header = sidecar.read_text().splitlines()
    assert header[0] == f"# schema: {SCHEMA}"
    assert header[1].split(",")[4:6] == ["x_re", "x_im"]
    # vertices use (x_re, |t_im|, phi_re)
    lines = (tmp_path / "wick.obj").read_text().splitlines()
    first = [float(v) for v in lines[1].split()[1:]]
    assert first[1] == pytest.approx(abs(complex(s.t[0, 0]).imag))


def test_quad_triangulation_indices():
    faces = quad_triangles(2, 3)
    assert faces == [(0, 3, 4), (4, 1, 0), (1, 4, 5), (5, 2, 1)]


def test_surface_csv_schema(tmp_path):
    s = flat_surface()
    path = write_surface_csv(s, tmp_path / "s.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == f"# schema: {SCHEMA}"
    assert lines[1] == "i,j,r1,r2,x_re,x_im,t_re,t_im,phi_re,phi_im"
    assert len(lines) == 2 + 9


# ----------------------------------------------------------------------- CLI

def test_cli_generate_smoke(tmp_path, capsys):
    rc = main(["generate", "--surface", "catenoid", "--kappa", "1",
               "--annulus", "0.4", "0.9", "--n", "24", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "catenoid.obj").exists()
    assert (tmp_path / "catenoid_conjugate.csv").exists()
    assert (tmp_path / "catenoid_report.csv").exists()


def test_cli_scherk_harmonicity_report(tmp_path):
    rc = main(["generate", "--surface", "scherk", "--rect", "-0.5", "0.5",
               "-0.5", "0.5", "--n", "48", "--out", str(tmp_path)])
    assert rc == 0
    rows = (tmp_path / "scherk_report.csv").read_text().splitlines()[2:]
    harmonic = [float(r.split(",")[2]) for r in rows
                if r.split(",")[1] in ("x", "t", "phi")]
    assert max(harmonic) < 1e-6


def test_cli_unknown_surface_exits_2(tmp_path, capsys):
    rc = main(["generate", "--surface", "moebius", "--out", str(tmp_path)])
    assert rc == 2
    assert "valid ids" in capsys.readouterr().err


def test_cli_family_verify_passes(tmp_path):
    rc = main(["family-verify", "--surface", "catenoid", "--out", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "family_verify.csv").read_text().splitlines()
    assert lines[1].split(",")[0] == "theta"
    assert len(lines) == 2 + 5  # default five thetas


def test_cli_family_verify_empty_theta_exits_2(tmp_path, capsys):
    rc = main(["family-verify", "--surface", "catenoid", "--theta",
               "--out", str(tmp_path)])
    assert rc == 2


def test_cli_family_verify_corruption_exits_1(tmp_path, capsys):
    rc = main(["family-verify", "--surface", "catenoid",
               "--corrupt-y-scale", "1.01", "--out", str(tmp_path)])
    assert rc == 1
    assert "tolerance breach" in capsys.readouterr().err


def test_cli_family_verify_deterministic(tmp_path):
    d1, d2 = tmp_path / "one", tmp_path / "two"
    for d in (d1, d2):
        assert main(["family-verify", "--surface", "catenoid",
                     "--theta", "0", "0.4", "1.1", "--out", str(d)]) == 0
    for name in sorted(os.listdir(d1)):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes(), name


def test_cli_residuals(tmp_path):
    rc = main(["residuals", "--surface", "right_helicoid", "--out", str(tmp_path)])
    assert rc == 0
    text = (tmp_path / "right_helicoid_residuals.csv").read_text()
    assert "minimal" in text and "born_infeld_wick" in text


def test_cli_boost_check(tmp_path):
    rc = main(["boost-check", "--rapidity", "0.2", "0.8", "1.5",
               "--out", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "boost_check.csv").read_text().splitlines()
    assert len(lines) == 2 + 3


def test_cli_export_table(tmp_path):
    rc = main(["export", "--surface", "enneper", "--format", "table",
               "--n", "12", "--out", str(tmp_path)])
    assert rc == 0
    text = (tmp_path / "enneper.dat").read_text()
    assert text.startswith(f"# schema: {SCHEMA}")
    assert "\n\n" in text  # gnuplot block separators


def test_cli_config_file_with_flag_override(tmp_path):
    cfgfile = tmp_path / "run.ini"
    cfgfile.write_text(
        "[surface]\nid = catenoid\nkappa = 1.0\n"
        "[grid]\nkind = annulus\nn1 = 16\nn2 = 16\n"
        "rho_min = 0.4\nrho_max = 0.9\n"
        "[family]\nthetas = 0, 0.7\n"
        f"[output]\ndir = {tmp_path}\nformats = csv\n")
    rc = main(["family-verify", "--config", str(cfgfile)])
    assert rc == 0
    lines = (tmp_path / "family_verify.csv").read_text().splitlines()
    assert len(lines) == 2 + 2
    # flag overrides config value
    rc = main(["family-verify", "--config", str(cfgfile), "--theta", "0", "0.3", "0.9"])
    assert rc == 0
    assert len((tmp_path / "family_verify.csv").read_text().splitlines()) == 2 + 3


def test_cli_env_var_overrides_output_dir(tmp_path, monkeypatch):
    env_dir = tmp_path / "env_out"
    monkeypatch.setenv("WESURF_OUT", str(env_dir))
    rc = main(["export", "--surface", "enneper", "--format", "csv",
               "--n", "8", "--out", str(tmp_path / "ignored")])
    assert rc == 0
    assert (env_dir / "enneper.csv").exists()
    assert not (tmp_path / "ignored" / "enneper.csv").exists()


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "wesurf.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "wesurf" in proc.stdout
