"""Wick rotation and the one-parameter family of Born-Infeld solitons.

From a conjugate pair of real minimal surfaces X, Y (isothermal, sharing a
grid), Wick rotation t -> i t yields complex solutions X^s, Y^s of the
Born-Infeld equation, and every combination

    S_theta = cos(theta) X^s + sin(theta) Y^s

is again a solution.  The family's F/G data is the same combination of the
members' handles, F_theta = cos(theta) F_1 + sin(theta) F_2, which for the
helicoid/catenoid pair collapses to (i/2) e^{-i theta} / r.

`verify_soliton_relations` certifies a Wick-rotated grid against its F/G
data by checking the three defining relations

    x - t  = F(r)    - int rbar^2 G'(rbar) drbar
    x + t  = G(rbar) - int r^2    F'(r)    dr
    phi    = int r F'(r) dr + int rbar G'(rbar) drbar

nodewise (integration constants calibrated at a base node).  Note the
left-hand sides combine x and t directly: for Wick-rotated components
x^s -+ t^s equals the minimal surface's x -+ i t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .generate import conjugacy_violation
from .grids import SurfaceGrid
from .hodograph import FGPair
from .quadrature import DEFAULT_RULE, antiderivative_on_grid
from .reports import ResidualReport, residual_report

HALF_PI = 0.5 * math.pi
_TRIG_SNAP = 1e-15


class FamilyError(ValueError):
    pass


def _cos_sin(theta: float) -> tuple[float, float]:
    """cos/sin with quarter-angle snapping.

    cos(pi/2) evaluates to ~6e-17 in floats; snapping it to zero makes the
    family hit its members exactly at multiples of pi/2 (the residual would
    otherwise be 1e-16-scale noise, which matters for exact-equality checks).
    """
    c, s = math.cos(theta), math.sin(theta)
    if abs(c) < _TRIG_SNAP:
        c = 0.0
    if abs(s) < _TRIG_SNAP:
        s = 0.0
    return c, s


def wick_rotate(s: SurfaceGrid) -> SurfaceGrid:
    """t -> i t; x and phi unchanged.  Applying it twice negates t."""
    values = s.values.copy()
    values[1] = 1j * values[1]
    jac = None
    if s.jac is not None:
        jac = s.jac.copy()
        jac[1] = 1j * jac[1]
    jac2 = None
    if s.jac2 is not None:
        jac2 = s.jac2.copy()
        jac2[1] = 1j * jac2[1]
    meta = dict(s.meta)
    meta["wick_rotations"] = meta.get("wick_rotations", 0) + 1
    return SurfaceGrid(s.grid, values, "wick_rotated", jac, jac2, meta)


@dataclass(frozen=True)
class SolitonFamily:
    """A conjugate minimal-surface pair with cached Wick rotations.

    The pair must pass the Cauchy-Riemann conjugacy check before a family is
    accepted; corruption tests can bypass with validate=False.
    """

    X: SurfaceGrid
    Y: SurfaceGrid
    Xs: SurfaceGrid = field(init=False)
    Ys: SurfaceGrid = field(init=False)
    cr_tolerance: float = 1e-6
    validate: bool = True

    def __post_init__(self):
        if self.X.grid != self.Y.grid:
            raise FamilyError("family members must share a ParamGrid")
        if self.validate:
            defect = conjugacy_violation(self.X, self.Y, source="auto",
                                         accuracy=2, interior_only=True)
            if defect > self.cr_tolerance:
                raise FamilyError(
                    f"surfaces are not harmonic conjugates: CR defect {defect:.3g} "
                    f"> {self.cr_tolerance:.3g}")
        object.__setattr__(self, "Xs", wick_rotate(self.X))
        object.__setattr__(self, "Ys", wick_rotate(self.Y))

    def at(self, theta: float) -> SurfaceGrid:
        """S_theta = cos(theta) X^s + sin(theta) Y^s, componentwise."""
        c, s = _cos_sin(theta)
        values = c * self.Xs.values + s * self.Ys.values
        jac = None
        if self.Xs.jac is not None and self.Ys.jac is not None:
            jac = c * self.Xs.jac + s * self.Ys.jac
        jac2 = None
        if self.Xs.jac2 is not None and self.Ys.jac2 is not None:
            jac2 = c * self.Xs.jac2 + s * self.Ys.jac2
        meta = {"surface": self.X.meta.get("surface"), "theta": theta,
                "base": self.X.meta.get("base")}
        return SurfaceGrid(self.X.grid, values, "wick_rotated", jac, jac2, meta)


def family_at(fam: SolitonFamily, theta: float) -> SurfaceGrid:
    return fam.at(theta)


def theta_derivative(fam: SolitonFamily, theta: float, order: int) -> SurfaceGrid:
    """d^order S_theta / d theta^order = S at theta + order * pi/2.

    The order is reduced mod 4 before the shift, so order 4 reproduces
    S_theta bit for bit (theta + 2*pi would not round-trip in floats).
    """
    if not 1 <= order <= 4:
        raise FamilyError("derivative order must be in 1..4")
    return fam.at(theta + (order % 4) * HALF_PI)


def family_fg(pair1: FGPair, pair2: FGPair, theta: float) -> FGPair:
    """F/G data of S_theta: the cos/sin combination of the members' handles.

    Real weights preserve the reality constraint F(r) = conj(G(conj r)).
    """
    c, s = _cos_sin(theta)

    def comb(f1, f2):
        return lambda w: c * f1(w) + s * f2(w)

    constraint = pair1.reality_constraint and pair2.reality_constraint
    return FGPair(F=comb(pair1.F, pair2.F), G=comb(pair1.G, pair2.G),
                  Fp=comb(pair1.Fp, pair2.Fp), Gp=comb(pair1.Gp, pair2.Gp),
                  reality_constraint=constraint,
                  label=f"{pair1.label}+{pair2.label}@{theta:g}")


@dataclass(frozen=True)
class SolitonRelationsReport:
    """Mismatch statistics of the three defining relations."""

    x_minus_t: ResidualReport
    x_plus_t: ResidualReport
    phi: ResidualReport

    @property
    def max_mismatch(self) -> float:
        return max(self.x_minus_t.max_abs, self.x_plus_t.max_abs, self.phi.max_abs)


def verify_soliton_relations(s: SurfaceGrid, p: FGPair,
                             base_index: tuple[int, int] = (0, 0),
                             singularities=(),
                             rule: str = DEFAULT_RULE) -> SolitonRelationsReport:
    """Check a Wick-rotated grid against its F/G data, nodewise.

    All four integrals run from the grid node at base_index along the fixed
    path family; each relation's constant is calibrated at that node.
    """
    grid = s.grid
    r = grid.nodes()
    base = complex(r[base_index])

    def holo(w):
        return np.stack([w ** 2 * p.Fp(w), w * p.Fp(w)])

    def anti(w):
        return np.stack([w ** 2 * p.Gp(w), w * p.Gp(w)])

    A, P = antiderivative_on_grid(holo, base, grid, singularities, rule)
    B, Q = antiderivative_on_grid(anti, base, grid, singularities, rule,
                                  conjugate_plane=True)
    lhs = (s.x - s.t, s.x + s.t, s.phi)
    rhs = (p.F(r) - B, p.G(np.conj(r)) - A, P + Q)
    reports = []
    for left, right in zip(lhs, rhs):
        shift = left[base_index] - right[base_index]
        reports.append(residual_report(np.abs(left - right - shift)))
    return SolitonRelationsReport(*reports)


__all__ = [
    "FamilyError", "SolitonFamily", "SolitonRelationsReport", "family_at",
    "family_fg", "theta_derivative", "verify_soliton_relations", "wick_rotate",
]
