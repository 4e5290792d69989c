"""Command-line driver.

Subcommands
-----------
generate       sample a surface and its harmonic conjugate, export mesh/CSV
               plus a harmonicity/conjugacy report
family-verify  sweep the soliton family over theta and check the invariants
               (Born-Infeld residual, E/F/G constancy, action, boost delta)
residuals      minimal-surface and Wick-substituted Born-Infeld residuals
boost-check    Lorentz-boost invariance of the Born-Infeld residual and the
               boost composition law
export         write one artifact (obj/csv/table) for a surface

Configuration is a flat INI file (sections [surface], [grid], [family],
[tolerances], [output]) mirrored 1:1 by command-line flags; flags override
the file.  The WESURF_OUT environment variable overrides the output
directory from either source.  Exit codes: 0 success, 1 tolerance breach,
2 configuration/usage error.
"""

from __future__ import annotations

import argparse
import configparser
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import CATALOG_IDS, CatalogError, verification_grid
from .family import SolitonFamily
from .generate import (conjugacy_violation, gamma_chart_sector,
                       generate_conjugate_pair, we_data)
from .geometry import action, fundamental_form, theta_sweep_invariance
from .grids import GridError, ParamGrid, SurfaceGrid, laplacian
from .hodograph import HodographError
from .io_export import (export_mesh, write_report_csv, write_surface_csv,
                        write_surface_table)
from .pde import (LorentzBoost, boost, born_infeld_residual,
                  chain_rule_partials, graph_patch, minimal_surface_residual,
                  wick_catenoid_graph_fns, wick_equivalence_check)
from .quadrature import QuadratureError
from .stencils import interior_mask

DEFAULT_THETAS = (0.0, 0.3, 0.7, 1.1, math.pi / 2)
VALID_FORMATS = ("csv", "obj", "table")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    surface: str = "catenoid"
    params: dict = field(default_factory=dict)      # kappa/alpha/a/b overrides
    base: complex | None = None
    grid: ParamGrid | None = None                   # None -> entry default
    thetas: tuple[float, ...] = DEFAULT_THETAS
    rapidities: tuple[float, ...] = (0.8,)
    resid_tol: float = 1e-4
    cr_tol: float = 1e-6
    dev_tol: float = 1e-8
    f_tol: float = 1e-8
    action_rel_tol: float = 1e-7
    boost_tol: float = 1e-4
    comp_tol: float = 1e-12
    harmonic_tol: float = 1e-6
    out_dir: Path = Path(".")
    formats: tuple[str, ...] = ("csv", "obj")
    corrupt_y_scale: float = 1.0

    def validate(self, need_thetas: bool = False) -> None:
        if self.surface not in CATALOG_IDS:
            raise ConfigError(
                f"unknown surface id {self.surface!r}; valid ids: "
                + ", ".join(i for i in CATALOG_IDS if i != "custom"))
        if need_thetas and len(self.thetas) == 0:
            raise ConfigError("theta list must not be empty for family commands")
        for name in ("resid_tol", "cr_tol", "dev_tol", "f_tol",
                     "action_rel_tol", "boost_tol", "comp_tol", "harmonic_tol"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"tolerance {name} must be positive")
        bad = [f for f in self.formats if f not in VALID_FORMATS]
        if bad:
            raise ConfigError(f"unknown export formats {bad}; valid: {VALID_FORMATS}")


def _read_config_file(path: str) -> dict:
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path}")
    out: dict = {}
    sec = cp["surface"] if cp.has_section("surface") else {}
    if "id" in sec:
        out["surface"] = sec["id"]
    for key in ("kappa", "alpha", "a", "b"):
        if key in sec:
            out.setdefault("params", {})[key] = float(sec[key])
    if "base_re" in sec or "base_im" in sec:
        out["base"] = complex(float(sec.get("base_re", 0.0)),
                              float(sec.get("base_im", 0.0)))
    if cp.has_section("grid"):
        g = cp["grid"]
        kind = g.get("kind", "annulus")
        n1 = g.getint("n1", 64)
        n2 = g.getint("n2", n1)
        if kind == "annulus":
            bounds = (g.getfloat("rho_min", 0.4), g.getfloat("rho_max", 0.9),
                      g.getfloat("psi_min", 0.0), g.getfloat("psi_max", 2 * math.pi))
        else:
            bounds = (g.getfloat("r1_min", -0.5), g.getfloat("r1_max", 0.5),
                      g.getfloat("r2_min", -0.5), g.getfloat("r2_max", 0.5))
        out["grid"] = ParamGrid(kind, n1, n2, bounds)
    if cp.has_section("family"):
        fam = cp["family"]
        if "thetas" in fam:
            out["thetas"] = tuple(float(v) for v in fam["thetas"].split(",") if v.strip())
        if "rapidity" in fam:
            out["rapidities"] = tuple(float(v) for v in fam["rapidity"].split(",") if v.strip())
    if cp.has_section("tolerances"):
        known = ("resid_tol", "cr_tol", "dev_tol", "f_tol", "action_rel_tol",
                 "boost_tol", "comp_tol", "harmonic_tol")
        for key, val in cp["tolerances"].items():
            if key not in known:
                raise ConfigError(f"unknown tolerance {key!r}; valid: {known}")
            out[key] = float(val)
    if cp.has_section("output"):
        o = cp["output"]
        if "dir" in o:
            out["out_dir"] = Path(o["dir"])
        if "formats" in o:
            out["formats"] = tuple(v.strip() for v in o["formats"].split(",") if v.strip())
    return out


def _build_config(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        for key, val in _read_config_file(args.config).items():
            setattr(cfg, key, val)
    if getattr(args, "surface", None):
        cfg.surface = args.surface
    for key in ("kappa", "alpha", "a", "b"):
        val = getattr(args, key, None)
        if val is not None:
            cfg.params[key] = val
    if getattr(args, "base", None) is not None:
        cfg.base = complex(args.base[0], args.base[1])
    if getattr(args, "gamma_chart", None) is not None:
        g = args.gamma_chart
        n = getattr(args, "n", None) or [64]
        cfg.grid = gamma_chart_sector(g[0], g[1], g[2], g[3], n[0], n[-1])
    elif getattr(args, "annulus", None) is not None:
        b = args.annulus
        bounds = (b[0], b[1], b[2] if len(b) > 2 else 0.0,
                  b[3] if len(b) > 3 else 2 * math.pi)
        n = getattr(args, "n", None) or [64]
        cfg.grid = ParamGrid("annulus", n[0], n[-1], bounds)
    elif getattr(args, "rect", None) is not None:
        b = args.rect
        n = getattr(args, "n", None) or [64]
        cfg.grid = ParamGrid("rectangle", n[0], n[-1], tuple(b))
    elif getattr(args, "n", None):
        n = args.n
        base_grid = cfg.grid or verification_grid(cfg.surface)
        cfg.grid = ParamGrid(base_grid.kind, n[0], n[-1], base_grid.bounds,
                             base_grid.allow_unit_circle)
    if getattr(args, "theta", None) is not None:
        cfg.thetas = tuple(args.theta)
    if getattr(args, "rapidity", None) is not None:
        cfg.rapidities = tuple(args.rapidity)
    for name in ("resid_tol", "cr_tol", "dev_tol", "f_tol", "action_rel_tol",
                 "boost_tol", "comp_tol", "harmonic_tol"):
        val = getattr(args, name, None)
        if val is not None:
            setattr(cfg, name, val)
    if getattr(args, "out", None):
        cfg.out_dir = Path(args.out)
    if os.environ.get("WESURF_OUT"):
        cfg.out_dir = Path(os.environ["WESURF_OUT"])
    if getattr(args, "formats", None):
        cfg.formats = tuple(v.strip() for v in args.formats.split(",") if v.strip())
    if getattr(args, "corrupt_y_scale", None) is not None:
        cfg.corrupt_y_scale = args.corrupt_y_scale
    return cfg


def _surfaces(cfg: RunConfig) -> tuple[SurfaceGrid, SurfaceGrid, ParamGrid]:
    grid = cfg.grid or verification_grid(cfg.surface)
    data = we_data(cfg.surface, base=cfg.base, **cfg.params)
    X, Y = generate_conjugate_pair(data, grid)
    if cfg.corrupt_y_scale != 1.0:
        vals = Y.values * cfg.corrupt_y_scale
        jac = None if Y.jac is None else Y.jac * cfg.corrupt_y_scale
        jac2 = None if Y.jac2 is None else Y.jac2 * cfg.corrupt_y_scale
        Y = SurfaceGrid(Y.grid, vals, Y.reality, jac, jac2, dict(Y.meta))
    return X, Y, grid


def _export_surface(s: SurfaceGrid, stem: str, cfg: RunConfig) -> list[Path]:
    written = []
    if "obj" in cfg.formats:
        written.append(export_mesh(s, cfg.out_dir / f"{stem}.obj"))
    if "csv" in cfg.formats:
        written.append(write_surface_csv(s, cfg.out_dir / f"{stem}.csv"))
    if "table" in cfg.formats:
        written.append(write_surface_table(s, cfg.out_dir / f"{stem}.dat"))
    return written


def cmd_generate(cfg: RunConfig) -> int:
    cfg.validate()
    X, Y, grid = _surfaces(cfg)
    files = _export_surface(X, cfg.surface, cfg)
    files += _export_surface(Y, f"{cfg.surface}_conjugate", cfg)
    rows = []
    worst_h = 0.0
    # harmonicity over centered-stencil nodes; one-sided edge closures carry
    # larger truncation constants and would mask the surface property
    mask = interior_mask(grid.shape, 6, 2)
    for label, srf in (("surface", X), ("conjugate", Y)):
        for comp in ("x", "t", "phi"):
            h_max = float(np.max(np.abs(laplacian(srf, comp, accuracy=6))[mask]))
            worst_h = max(worst_h, h_max)
            rows.append([label, comp, h_max])
    form = fundamental_form(X, "euclidean", source="auto")
    rows.append(["surface", "isothermal_defect", form.isothermal_defect])
    cr = conjugacy_violation(X, Y, source="auto")
    rows.append(["pair", "cr_defect", cr])
    files.append(write_report_csv(cfg.out_dir / f"{cfg.surface}_report.csv",
                                  ["target", "quantity", "max_abs"], rows))
    for f in files:
        print(f)
    print(f"harmonicity max {worst_h:.3e}, isothermal defect "
          f"{form.isothermal_defect:.3e}, CR defect {cr:.3e}")
    return 0


def cmd_family_verify(cfg: RunConfig) -> int:
    cfg.validate(need_thetas=True)
    X, Y, grid = _surfaces(cfg)
    fam = SolitonFamily(X, Y, validate=False)
    lb = LorentzBoost(cfg.rapidities[0])
    sweep = theta_sweep_invariance(fam, cfg.thetas, source="auto")
    header = ["theta", "max_bi_residual", "e_deviation", "g_deviation",
              "max_f_abs", "action", "boost_delta"]
    rows = []
    actions = []
    bi_max = []
    boost_deltas = []
    base_form = fundamental_form(fam.at(cfg.thetas[0]), "wick_signed", "auto")
    for th in cfg.thetas:
        S = fam.at(th)
        form = fundamental_form(S, "wick_signed", "auto")
        patch = chain_rule_partials(S, first_source="auto", second_source="auto")
        res = born_infeld_residual(patch)
        res_b = born_infeld_residual(boost(patch, lb))
        delta = abs(res.max_abs - res_b.max_abs)
        a_val = action(form, grid)
        rows.append([th, res.max_abs,
                     float(np.max(np.abs(form.E - base_form.E))),
                     float(np.max(np.abs(form.G - base_form.G))),
                     float(np.max(np.abs(form.F))), a_val, delta])
        actions.append(a_val)
        bi_max.append(res.max_abs)
        boost_deltas.append(delta)
    out = write_report_csv(cfg.out_dir / "family_verify.csv", header, rows)
    print(out)
    for th in cfg.thetas:
        if "obj" in cfg.formats:
            print(export_mesh(fam.at(th), cfg.out_dir / f"s_theta_{th:.6g}.obj"))
    spread = (max(actions) - min(actions)) / max(abs(np.median(actions)), 1e-300)
    checks = [
        ("max_bi_residual", max(bi_max), cfg.resid_tol),
        ("e_deviation", sweep.e_deviation.max_abs, cfg.dev_tol),
        ("g_deviation", sweep.g_deviation.max_abs, cfg.dev_tol),
        ("max_f_abs", sweep.f_max, cfg.f_tol),
        ("action_rel_spread", spread, cfg.action_rel_tol),
        ("boost_delta", max(boost_deltas), cfg.boost_tol),
    ]
    status = 0
    for name, value, tol in checks:
        ok = value <= tol
        print(f"{name}: {value:.3e} (tol {tol:.1e}) {'ok' if ok else 'FAIL'}")
        if not ok:
            if name in header:
                col = header.index(name)
                worst = max(range(len(rows)), key=lambda k: rows[k][col])
                print(f"tolerance breach: {name} at theta="
                      f"{cfg.thetas[worst]:.6g}", file=sys.stderr)
            else:
                print(f"tolerance breach: {name}", file=sys.stderr)
            status = 1
    return status


def cmd_residuals(cfg: RunConfig) -> int:
    cfg.validate()
    X, _, _ = _surfaces(cfg)
    # accuracy 6: the default O(h^2) truncation sits right at the 1e-4
    # tolerance for the pole-adjacent entries
    patch = chain_rule_partials(X, first_source="auto", accuracy=6, second_source="fd")
    mres = minimal_surface_residual(patch)
    wres = wick_equivalence_check(patch)
    rows = [["minimal", mres.max_abs, mres.mean_abs, mres.rms, mres.node_count,
             patch.dropped_count],
            ["born_infeld_wick", wres.max_abs, wres.mean_abs, wres.rms,
             wres.node_count, patch.dropped_count]]
    out = write_report_csv(cfg.out_dir / f"{cfg.surface}_residuals.csv",
                           ["kind", "max_abs", "mean_abs", "rms", "nodes", "dropped"],
                           rows)
    print(out)
    print(f"minimal residual max {mres.max_abs:.3e} (tol {cfg.resid_tol:.1e})")
    return 0 if mres.max_abs <= cfg.resid_tol and wres.max_abs <= cfg.resid_tol else 1


def _wick_catenoid_patch():
    xs = np.linspace(2.0, 3.0, 51)[:, None] + np.zeros((1, 51))
    ts = np.zeros((51, 1)) + np.linspace(-0.45, 0.45, 51)[None, :]
    return graph_patch(xs, ts, wick_catenoid_graph_fns())


def cmd_boost_check(cfg: RunConfig) -> int:
    cfg.validate()
    patch = _wick_catenoid_patch()
    base = born_infeld_residual(patch)
    rows = []
    status = 0
    for rap in cfg.rapidities:
        lb = LorentzBoost(rap)
        after = born_infeld_residual(boost(patch, lb))
        half = LorentzBoost(0.5 * rap)
        once = boost(patch, lb)
        twice = boost(boost(patch, half), half)
        comp = max(float(np.max(np.abs(once.x - twice.x))),
                   float(np.max(np.abs(once.t - twice.t))),
                   float(np.max(np.abs(once.phi_x - twice.phi_x))))
        delta = abs(base.max_abs - after.max_abs)
        rows.append([rap, base.max_abs, after.max_abs, delta, comp])
        if delta > cfg.boost_tol or comp > cfg.comp_tol:
            print(f"tolerance breach at rapidity {rap}", file=sys.stderr)
            status = 1
    out = write_report_csv(cfg.out_dir / "boost_check.csv",
                           ["rapidity", "residual_before", "residual_after",
                            "delta", "composition_error"], rows)
    print(out)
    return status


def cmd_export(cfg: RunConfig, fmt: str) -> int:
    cfg.validate()
    if fmt not in VALID_FORMATS:
        raise ConfigError(f"unknown format {fmt!r}; valid: {VALID_FORMATS}")
    cfg.formats = (fmt,)
    X, _, _ = _surfaces(cfg)
    for f in _export_surface(X, cfg.surface, cfg):
        print(f)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="INI config file (flags override it)")
    p.add_argument("--surface", help="catalog surface id")
    p.add_argument("--kappa", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--base", type=float, nargs=2, metavar=("RE", "IM"),
                   help="integration base point")
    p.add_argument("--annulus", type=float, nargs="+",
                   metavar="B", help="rho_min rho_max [psi_min psi_max]")
    p.add_argument("--rect", type=float, nargs=4,
                   metavar=("R1MIN", "R1MAX", "R2MIN", "R2MAX"))
    p.add_argument("--gamma-chart", dest="gamma_chart", type=float, nargs=4,
                   metavar=("G1MIN", "G1MAX", "G2MIN", "G2MAX"),
                   help="exponential chart w = exp(-i gamma/2) over a gamma "
                        "rectangle (Catalan-type parametrizations)")
    p.add_argument("--n", type=int, nargs="+", help="grid counts n1 [n2]")
    p.add_argument("--out", help="output directory")
    p.add_argument("--formats", help="comma list from csv,obj,table")
    for name in ("resid-tol", "cr-tol", "dev-tol", "f-tol", "action-rel-tol",
                 "boost-tol", "comp-tol", "harmonic-tol"):
        p.add_argument(f"--{name}", dest=name.replace("-", "_"), type=float)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wesurf",
                                 description="Weierstrass-Enneper surfaces and "
                                 "Born-Infeld soliton families")
    ap.add_argument("--version", action="version", version=f"wesurf {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="surface + conjugate + report")
    _add_common(p)

    p = sub.add_parser("family-verify", help="theta-family invariant sweep")
    _add_common(p)
    p.add_argument("--theta", type=float, nargs="*",
                   help="family parameters to sweep")
    p.add_argument("--rapidity", type=float, nargs="+")
    p.add_argument("--corrupt-y-scale", dest="corrupt_y_scale", type=float,
                   help="test hook: scale the conjugate member")

    p = sub.add_parser("residuals", help="PDE residual reports")
    _add_common(p)

    p = sub.add_parser("boost-check", help="Lorentz invariance checks")
    _add_common(p)
    p.add_argument("--rapidity", type=float, nargs="+")

    p = sub.add_parser("export", help="write one artifact for a surface")
    _add_common(p)
    p.add_argument("--format", default="obj", help="obj, csv or table")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _build_config(args)
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "generate":
            return cmd_generate(cfg)
        if args.command == "family-verify":
            return cmd_family_verify(cfg)
        if args.command == "residuals":
            return cmd_residuals(cfg)
        if args.command == "boost-check":
            return cmd_boost_check(cfg)
        if args.command == "export":
            return cmd_export(cfg, args.format)
        raise ConfigError(f"unknown command {args.command!r}")  # pragma: no cover
    except (ConfigError, CatalogError, GridError, HodographError,
            QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
