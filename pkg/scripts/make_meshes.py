#!/usr/bin/env python3
"""Export OBJ meshes for the whole surface catalog.

Each entry is sampled on a presentation domain (full annulus for the
pole-at-zero entries, rectangles otherwise) together with its harmonic
conjugate, plus the Wick-rotated soliton S_theta for a few thetas of the
helicoid/catenoid family.

Usage:
    python scripts/make_meshes.py [--out DIR] [--n N]
"""

import argparse
import math
import sys
from pathlib import Path

import wesurf as ws

PRESENTATION = {
    "enneper": ws.ParamGrid("rectangle", 64, 64, (-0.6, 0.6, -0.6, 0.6)),
    "catenoid": ws.default_annulus(0.4, 0.9, 64, 64),
    "right_helicoid": ws.default_annulus(0.4, 0.9, 64, 64),
    "general_helicoid": ws.default_annulus(0.4, 0.9, 64, 64),
    "scherk": ws.ParamGrid("rectangle", 64, 64, (-0.5, 0.5, -0.5, 0.5)),
    "general_scherk": ws.ParamGrid("rectangle", 64, 64, (-0.4, 0.4, -0.4, 0.4)),
    "henneberg": ws.default_annulus(0.55, 0.95, 64, 64),
    "general_enneper": ws.default_annulus(0.55, 0.95, 64, 64),
    "schwarz_riemann": ws.ParamGrid("rectangle", 64, 64, (-0.25, 0.25, -0.25, 0.25)),
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="meshes")
    ap.add_argument("--n", type=int, default=64)
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for sid, grid in PRESENTATION.items():
        if args.n != 64:
            grid = ws.ParamGrid(grid.kind, args.n, args.n, grid.bounds,
                                grid.allow_unit_circle)
        X, Y = ws.generate_conjugate_pair(ws.we_data(sid), grid)
        print(ws.export_mesh(X, out / f"{sid}.obj"))
        print(ws.export_mesh(Y, out / f"{sid}_conjugate.obj"))
    fam_grid = ws.default_annulus(0.4, 0.9, args.n, args.n)
    fam = ws.SolitonFamily(ws.helicoid_closed(fam_grid),
                           ws.catenoid_closed(fam_grid))
    for theta in (0.0, math.pi / 6, math.pi / 3, math.pi / 2):
        print(ws.export_mesh(fam.at(theta), out / f"s_theta_{theta:.4f}.obj"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
