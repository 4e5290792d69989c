"""Deterministic exporters: OBJ meshes, CSV node tables, gnuplot tables.

All writers are byte-deterministic for fixed input (fixed float formatting,
no timestamps) and atomic (temp file + rename), so repeated runs with the
same configuration produce identical files.

Complex values are serialized as adjacent <name>_re, <name>_im columns.
CSV and table files carry a schema comment line as their first row.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .grids import SurfaceGrid

SCHEMA = "wesurf/1"


class ExportError(ValueError):
    pass


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _atomic_write(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def mesh_vertices(s: SurfaceGrid) -> np.ndarray:
    """Vertex coordinates for meshing, shape (n1*n2, 3), row-major.

    Real grids use (x, t, phi) directly; Wick-rotated grids use
    (Re x, |Im t|, Re phi) with the full complex data kept for the sidecar.
    """
    if s.reality == "real":
        coords = np.stack([s.x.real, s.t.real, s.phi.real])
    else:
        coords = np.stack([s.x.real, np.abs(s.t.imag), s.phi.real])
    return coords.reshape(3, -1).T


def quad_triangles(n1: int, n2: int) -> list[tuple[int, int, int]]:
    """Two triangles per grid quad, vertices in row-major order, 0-based."""
    faces = []
    for i in range(n1 - 1):
        for j in range(n2 - 1):
            v00 = i * n2 + j
            v01 = v00 + 1
            v10 = v00 + n2
            v11 = v10 + 1
            faces.append((v00, v10, v11))
            faces.append((v11, v01, v00))
    return faces


def export_mesh(s: SurfaceGrid, path, format: str = "obj") -> Path:
    """Write the surface as an OBJ mesh (plus a complex-data sidecar CSV for
    Wick-rotated grids).

    Grids sampled over a full circle close up automatically because the
    angular axis includes both endpoints (seam vertices coincide).
    """
    if format != "obj":
        raise ExportError(f"unsupported mesh format {format!r}")
    path = Path(path)
    verts = mesh_vertices(s)
    lines = [f"# wesurf mesh export (schema {SCHEMA})"]
    for v in verts:
        lines.append(f"v {_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}")
    for a, b, c in quad_triangles(s.grid.n1, s.grid.n2):
        lines.append(f"f {a + 1} {b + 1} {c + 1}")
    out = _atomic_write(path, "\n".join(lines) + "\n")
    if s.reality != "real":
        write_surface_csv(s, path.with_name(path.stem + "_complex.csv"))
    return out


def _node_rows(s: SurfaceGrid):
    r = s.grid.nodes()
    n1, n2 = s.grid.shape
    for i in range(n1):
        for j in range(n2):
            yield (i, j, r[i, j].real, r[i, j].imag,
                   s.x[i, j], s.t[i, j], s.phi[i, j])


def write_surface_csv(s: SurfaceGrid, path) -> Path:
    """Node table: grid indices, parameter-plane position, complex components."""
    header = "i,j,r1,r2,x_re,x_im,t_re,t_im,phi_re,phi_im"
    lines = [f"# schema: {SCHEMA}", header]
    for i, j, r1, r2, x, t, phi in _node_rows(s):
        lines.append(",".join([str(i), str(j), _fmt(r1), _fmt(r2),
                               _fmt(x.real), _fmt(x.imag),
                               _fmt(t.real), _fmt(t.imag),
                               _fmt(phi.real), _fmt(phi.imag)]))
    return _atomic_write(Path(path), "\n".join(lines) + "\n")


def write_surface_table(s: SurfaceGrid, path) -> Path:
    """Gnuplot-ready table: whitespace columns, blank line between grid rows
    (splot/pm3d block format)."""
    lines = [f"# schema: {SCHEMA}",
             "# columns: r1 r2 x_re x_im t_re t_im phi_re phi_im"]
    r = s.grid.nodes()
    n1, n2 = s.grid.shape
    for i in range(n1):
        for j in range(n2):
            vals = (r[i, j].real, r[i, j].imag,
                    s.x[i, j].real, s.x[i, j].imag,
                    s.t[i, j].real, s.t[i, j].imag,
                    s.phi[i, j].real, s.phi[i, j].imag)
            lines.append(" ".join(_fmt(v) for v in vals))
        lines.append("")
    return _atomic_write(Path(path), "\n".join(lines) + "\n")


def write_report_csv(path, header: list[str], rows: list[list]) -> Path:
    """Generic report writer with the schema comment + named header row."""
    lines = [f"# schema: {SCHEMA}", ",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, str):
                cells.append(v)
            elif isinstance(v, (int, np.integer)):
                cells.append(str(int(v)))
            else:
                cells.append(_fmt(v))
        lines.append(",".join(cells))
    return _atomic_write(Path(path), "\n".join(lines) + "\n")


__all__ = ["ExportError", "SCHEMA", "export_mesh", "mesh_vertices",
           "quad_triangles", "write_report_csv", "write_surface_csv",
           "write_surface_table"]
