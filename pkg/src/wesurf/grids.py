"""Parameter-plane grids and sampled parametric surfaces.

Surfaces are sampled over a rectangle in the r = r1 + i*r2 plane or over an
annulus/annular sector in polar coordinates (rho, psi).  Derivatives are
always reported with respect to the Cartesian isothermal coordinates
(r1, r2); on polar grids the chain rule through r = rho*exp(i*psi) is applied
with exact trigonometric factors, so the formal accuracy of the stencils is
preserved.

A SurfaceGrid may carry the analytic first derivatives of its components
(filled in by the generators, which know them in closed form).  Consumers
that only need first derivatives can then bypass finite-difference
truncation entirely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .stencils import axis_derivative, min_samples

TWO_PI = 2.0 * np.pi

COMPONENTS = ("x", "t", "phi")
_COMPONENT_INDEX = {"x": 0, "t": 1, "phi": 2}

GridKind = Literal["rectangle", "annulus"]
Axis = Literal["r1", "r2"]
Reality = Literal["real", "wick_rotated"]

REAL_IMAG_TOL = 1e-12


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class ParamGrid:
    """Uniform grid over a rectangle or an annular sector of the r-plane.

    rectangle: axis 0 sweeps r1 in [b0, b1], axis 1 sweeps r2 in [b2, b3].
    annulus:   axis 0 sweeps rho in [b0, b1], axis 1 sweeps the angle psi in
               [b2, b3] (default full circle).  Node values are rho*exp(i*psi).

    Both axes include their endpoints and are uniformly spaced; n1, n2 >= 3 so
    that centered differences exist.  An annulus whose radial range straddles
    |r| = 1 must be constructed with allow_unit_circle=True: the hodograph
    maps u = r/(1-|r|^2) and the nonparametric (x,t) charts degenerate there.
    """

    kind: GridKind
    n1: int
    n2: int
    bounds: tuple[float, float, float, float]
    allow_unit_circle: bool = False

    def __post_init__(self):
        if self.kind not in ("rectangle", "annulus"):
            raise GridError(f"unknown grid kind {self.kind!r}")
        if self.n1 < 3 or self.n2 < 3:
            raise GridError("grid counts must be >= 3")
        b = tuple(float(v) for v in self.bounds)
        object.__setattr__(self, "bounds", b)
        if not all(np.isfinite(b)):
            raise GridError("grid bounds must be finite")
        if b[1] <= b[0] or b[3] <= b[2]:
            raise GridError("grid bounds must be increasing per axis")
        if self.kind == "annulus":
            if b[0] <= 0:
                raise GridError("annulus requires 0 < rho_min")
            if b[0] < 1.0 < b[1] and not self.allow_unit_circle:
                raise GridError(
                    "annulus straddles |r| = 1; pass allow_unit_circle=True "
                    "to acknowledge the singular circle of the hodograph maps")

    # -- axis coordinates ------------------------------------------------
    @property
    def axis1(self) -> np.ndarray:
        return np.linspace(self.bounds[0], self.bounds[1], self.n1)

    @property
    def axis2(self) -> np.ndarray:
        return np.linspace(self.bounds[2], self.bounds[3], self.n2)

    @property
    def h1(self) -> float:
        return (self.bounds[1] - self.bounds[0]) / (self.n1 - 1)

    @property
    def h2(self) -> float:
        return (self.bounds[3] - self.bounds[2]) / (self.n2 - 1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    def nodes(self) -> np.ndarray:
        """Complex node positions r, shape (n1, n2)."""
        a1 = self.axis1[:, None]
        a2 = self.axis2[None, :]
        if self.kind == "rectangle":
            return a1 + 1j * a2 + np.zeros(self.shape)
        return a1 * np.exp(1j * a2)

    def polar_factors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(rho, cos psi, sin psi) broadcast to grid shape (annulus only)."""
        if self.kind != "annulus":
            raise GridError("polar factors only defined for annulus grids")
        rho = np.broadcast_to(self.axis1[:, None], self.shape)
        c = np.broadcast_to(np.cos(self.axis2)[None, :], self.shape)
        s = np.broadcast_to(np.sin(self.axis2)[None, :], self.shape)
        return rho, c, s

    def area_weights(self) -> np.ndarray:
        """Trapezoid weights for integrating f(r1, r2) dr1 dr2 over the domain.

        Polar grids pick up the rho Jacobian of dr1 dr2 = rho drho dpsi.
        """
        w1 = np.full(self.n1, self.h1)
        w1[0] = w1[-1] = 0.5 * self.h1
        w2 = np.full(self.n2, self.h2)
        w2[0] = w2[-1] = 0.5 * self.h2
        w = w1[:, None] * w2[None, :]
        if self.kind == "annulus":
            w = w * self.axis1[:, None]
        return w


def default_rectangle(half_width: float = 0.6, n: int = 121) -> ParamGrid:
    return ParamGrid("rectangle", n, n, (-half_width, half_width, -half_width, half_width))


def default_annulus(rho_min: float = 0.4, rho_max: float = 0.9,
                    n_rho: int = 51, n_psi: int = 128) -> ParamGrid:
    """Full-circle annulus strictly inside the unit disk, away from r = 0."""
    return ParamGrid("annulus", n_rho, n_psi, (rho_min, rho_max, 0.0, TWO_PI))


@dataclass(frozen=True)
class SurfaceGrid:
    """Sampled parametric surface (x, t, phi) over a ParamGrid.

    values has shape (3, n1, n2), complex; components may be genuinely complex
    only when reality == "wick_rotated".  jac, when present, holds the
    analytic first derivatives d(component)/d(r1) and /d(r2), shape
    (3, 2, n1, n2); it is propagated through conjugation, Wick rotation and
    family combinations.
    """

    grid: ParamGrid
    values: np.ndarray
    reality: Reality = "real"
    jac: np.ndarray | None = None
    jac2: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = np.ascontiguousarray(np.asarray(self.values, dtype=complex))
        if vals.shape != (3, self.grid.n1, self.grid.n2):
            raise GridError(f"values shape {vals.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise GridError("surface components must be finite")
        if self.reality == "real":
            bad = np.abs(vals.imag) > REAL_IMAG_TOL * (1.0 + np.abs(vals.real))
            if np.any(bad):
                raise GridError("reality=real but components have imaginary parts")
        elif self.reality != "wick_rotated":
            raise GridError(f"unknown reality flag {self.reality!r}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        if self.jac is not None:
            jac = np.ascontiguousarray(np.asarray(self.jac, dtype=complex))
            if jac.shape != (3, 2, self.grid.n1, self.grid.n2):
                raise GridError(f"jac shape {jac.shape} invalid")
            if not np.all(np.isfinite(jac)):
                raise GridError("analytic derivatives must be finite")
            jac.flags.writeable = False
            object.__setattr__(self, "jac", jac)
        if self.jac2 is not None:
            # second derivatives per component, ordered (d11, d12, d22)
            jac2 = np.ascontiguousarray(np.asarray(self.jac2, dtype=complex))
            if jac2.shape != (3, 3, self.grid.n1, self.grid.n2):
                raise GridError(f"jac2 shape {jac2.shape} invalid")
            if not np.all(np.isfinite(jac2)):
                raise GridError("analytic second derivatives must be finite")
            jac2.flags.writeable = False
            object.__setattr__(self, "jac2", jac2)

    @property
    def x(self) -> np.ndarray:
        return self.values[0]

    @property
    def t(self) -> np.ndarray:
        return self.values[1]

    @property
    def phi(self) -> np.ndarray:
        return self.values[2]

    def component(self, name: str) -> np.ndarray:
        return self.values[_COMPONENT_INDEX[name]]

    def with_values(self, values, reality=None, jac=None, jac2=None, meta=None) -> "SurfaceGrid":
        return SurfaceGrid(self.grid, values,
                           self.reality if reality is None else reality,
                           self.jac if jac is None else jac,
                           self.jac2 if jac2 is None else jac2,
                           dict(self.meta) if meta is None else meta)


def surface_from_components(grid: ParamGrid, x, t, phi, reality: Reality = "real",
                            jac=None, jac2=None, meta=None) -> SurfaceGrid:
    values = np.stack([np.asarray(x, dtype=complex),
                       np.asarray(t, dtype=complex),
                       np.asarray(phi, dtype=complex)])
    return SurfaceGrid(grid, values, reality, jac, jac2, meta or {})


# ---------------------------------------------------------------------------
# derivatives with respect to the Cartesian coordinates (r1, r2)
# ---------------------------------------------------------------------------

def array_derivative(grid: ParamGrid, arr: np.ndarray, axis: Axis,
                     order: int = 1, accuracy: int = 2) -> np.ndarray:
    """d^order(arr)/d(r_axis)^order for an array sampled on `grid`.

    On annulus grids the polar chain rule is applied; second derivatives are
    then built by applying the first-derivative operator twice, which keeps
    the formal order of accuracy.
    """
    if axis not in ("r1", "r2"):
        raise GridError(f"axis must be 'r1' or 'r2', got {axis!r}")
    if order not in (1, 2):
        raise GridError("derivative order must be 1 or 2")
    _check_size(grid, order, accuracy)
    if grid.kind == "rectangle":
        ax = 0 if axis == "r1" else 1
        h = grid.h1 if ax == 0 else grid.h2
        return axis_derivative(arr, h, ax, order, accuracy)
    if order == 1:
        d_rho = axis_derivative(arr, grid.h1, 0, 1, accuracy)
        d_psi = axis_derivative(arr, grid.h2, 1, 1, accuracy)
        rho, c, s = grid.polar_factors()
        if axis == "r1":
            return c * d_rho - (s / rho) * d_psi
        return s * d_rho + (c / rho) * d_psi
    first = array_derivative(grid, arr, axis, 1, accuracy)
    return array_derivative(grid, first, axis, 1, accuracy)


def _check_size(grid: ParamGrid, order: int, accuracy: int) -> None:
    need = min_samples(order, accuracy)
    if order == 2 and accuracy == 2:
        need = max(need, 5)  # contract: second derivatives want n >= 5
    if grid.n1 < need or grid.n2 < need:
        raise GridError(
            f"grid {grid.shape} too small for order={order}, accuracy={accuracy} "
            f"stencils (need >= {need} per axis)")


def central_diff(surface: SurfaceGrid, component: str, axis: Axis,
                 order: int = 1, accuracy: int = 2) -> np.ndarray:
    """Finite-difference derivative of one surface component.

    Second-order accurate by default (centered interior, one-sided edges);
    accuracy 4 or 6 is available where the default truncation error is too
    coarse for a check's tolerance.
    """
    return array_derivative(surface.grid, surface.component(component), axis,
                            order, accuracy)


def laplacian(surface: SurfaceGrid, component: str, accuracy: int = 2) -> np.ndarray:
    """d2/dr1^2 + d2/dr2^2 of a component (harmonicity test).

    On polar grids the exact identity lap = f_rr + f_r/rho + f_pp/rho^2 is
    used with direct second-difference stencils per axis.
    """
    grid = surface.grid
    arr = surface.component(component)
    _check_size(grid, 2, accuracy)
    if grid.kind == "rectangle":
        return (axis_derivative(arr, grid.h1, 0, 2, accuracy)
                + axis_derivative(arr, grid.h2, 1, 2, accuracy))
    rho, _, _ = grid.polar_factors()
    f_rr = axis_derivative(arr, grid.h1, 0, 2, accuracy)
    f_r = axis_derivative(arr, grid.h1, 0, 1, accuracy)
    f_pp = axis_derivative(arr, grid.h2, 1, 2, accuracy)
    return f_rr + f_r / rho + f_pp / rho ** 2


def surface_jacobian(surface: SurfaceGrid, source: str = "auto",
                     accuracy: int = 2) -> np.ndarray:
    """First derivatives of all components, shape (3, 2, n1, n2).

    source: "auto" prefers the analytic derivatives carried by the surface,
    "analytic" requires them, "fd" forces finite differences.
    """
    if source not in ("auto", "analytic", "fd"):
        raise GridError(f"unknown derivative source {source!r}")
    if source in ("auto", "analytic") and surface.jac is not None:
        return surface.jac
    if source == "analytic":
        raise GridError("surface carries no analytic derivatives")
    out = np.empty((3, 2, surface.grid.n1, surface.grid.n2), dtype=complex)
    for k in range(3):
        out[k, 0] = array_derivative(surface.grid, surface.values[k], "r1", 1, accuracy)
        out[k, 1] = array_derivative(surface.grid, surface.values[k], "r2", 1, accuracy)
    return out


__all__ = [
    "COMPONENTS", "GridError", "ParamGrid", "SurfaceGrid", "array_derivative",
    "central_diff", "default_annulus", "default_rectangle", "laplacian",
    "surface_from_components", "surface_jacobian",
]
