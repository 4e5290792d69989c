"""Nonparametric residuals of the minimal-surface and Born-Infeld equations.

    minimal:     (1 + phi_t^2) phi_xx - 2 phi_x phi_t phi_xt + (1 + phi_x^2) phi_tt = 0
    Born-Infeld: (1 - phi_t^2) phi_xx + 2 phi_x phi_t phi_xt - (1 + phi_x^2) phi_tt = 0

The two equations exchange under the Wick substitution t -> i t.  Parametric
grids are converted to nonparametric derivative data by inverting the 2x2
Jacobian d(x, t)/d(r1, r2) nodewise (complex-valued for Wick-rotated grids);
second partials differentiate the (phi_x, phi_t) fields on the grid and
apply the inverse Jacobian again, so they inherit the finite-difference
step dependence even when the first derivatives are analytic.

Also here: the Lorentz boost (cosh, sinh matrix) under which the Born-Infeld
equation is invariant, applied to patches by transforming coordinates and
derivative data exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grids import SurfaceGrid, array_derivative, surface_jacobian
from .reports import ResidualReport, residual_report

RAPIDITY_UNIT_TOL = 1e-12
DEFAULT_COND_CUTOFF = 1e8
DET_FLOOR = 1e-14


class PDEError(ValueError):
    pass


@dataclass(frozen=True)
class LorentzBoost:
    """Hyperbolic rotation of the (x, t) plane by a rapidity angle."""

    rapidity: float
    a: float = field(init=False)
    b: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "a", math.cosh(self.rapidity))
        object.__setattr__(self, "b", math.sinh(self.rapidity))
        if abs(self.a ** 2 - self.b ** 2 - 1.0) > RAPIDITY_UNIT_TOL * max(1.0, self.a ** 2):
            raise PDEError("cosh^2 - sinh^2 deviates from 1 beyond tolerance")


@dataclass
class NonparametricPatch:
    """Samples of phi(x, t) with first and second partials.

    valid_mask marks nodes whose Jacobian inversion was well conditioned;
    statistics ignore the rest (dropped_count of them).  jacobian_det is
    kept for change-of-variables quadrature.
    """

    x: np.ndarray
    t: np.ndarray
    phi: np.ndarray
    phi_x: np.ndarray
    phi_t: np.ndarray
    phi_xx: np.ndarray
    phi_xt: np.ndarray
    phi_tt: np.ndarray
    valid_mask: np.ndarray
    jacobian_det: np.ndarray | None = None
    dropped_count: int = 0
    mixed_asymmetry: float = 0.0

    def __post_init__(self):
        fields = (self.x, self.t, self.phi, self.phi_x, self.phi_t,
                  self.phi_xx, self.phi_xt, self.phi_tt)
        for arr in fields:
            if np.any(~np.isfinite(np.asarray(arr)[self.valid_mask])):
                raise PDEError("non-finite derivative data at retained nodes")
        self.dropped_count = int(self.valid_mask.size - self.valid_mask.sum())


def _dilate(mask: np.ndarray, reach: int) -> np.ndarray:
    """Grow a bad-node mask by `reach` nodes along each axis."""
    out = mask.copy()
    for _ in range(reach):
        grown = out.copy()
        grown[1:, :] |= out[:-1, :]
        grown[:-1, :] |= out[1:, :]
        grown[:, 1:] |= out[:, :-1]
        grown[:, :-1] |= out[:, 1:]
        out = grown
    return out


def chain_rule_partials(s: SurfaceGrid, first_source: str = "auto",
                        accuracy: int = 2, second_source: str = "fd",
                        cond_cutoff: float = DEFAULT_COND_CUTOFF,
                        det_floor: float = DET_FLOOR) -> NonparametricPatch:
    """Nonparametric derivative data of phi over the (x, t) chart of `s`.

    Nodes where |det J| < det_floor or the infinity-norm condition number
    exceeds cond_cutoff are dropped (and, on the finite-difference route,
    their stencil neighbors with them, since garbage values would leak
    through).

    second_source: "fd" differentiates the (phi_x, phi_t) fields on the grid
    (truncation O(h^accuracy), the generic route); "analytic" uses the exact
    second derivatives carried by generated/closed-form grids; "auto" prefers
    analytic when available.  Graph slopes of W-E charts diverge toward
    |r| = 1, which is where the fd route loses accuracy first.
    """
    grid = s.grid
    jac = surface_jacobian(s, first_source, accuracy)
    x1, x2 = jac[0, 0], jac[0, 1]
    t1, t2 = jac[1, 0], jac[1, 1]
    p1, p2 = jac[2, 0], jac[2, 1]
    det = x1 * t2 - x2 * t1
    bad = np.abs(det) < det_floor
    det_safe = np.where(bad, 1.0, det)
    norm_j = np.maximum(np.abs(x1) + np.abs(x2), np.abs(t1) + np.abs(t2))
    norm_inv = np.maximum(np.abs(t2) + np.abs(x2), np.abs(t1) + np.abs(x1)) / np.abs(det_safe)
    bad |= norm_j * norm_inv > cond_cutoff

    def solve(f1, f2):
        return (t2 * f1 - t1 * f2) / det_safe, (x1 * f2 - x2 * f1) / det_safe

    phi_x, phi_t = solve(p1, p2)
    if second_source not in ("fd", "analytic", "auto"):
        raise PDEError(f"unknown second_source {second_source!r}")
    analytic = second_source == "analytic" or (second_source == "auto" and s.jac2 is not None)
    if analytic:
        if s.jac2 is None:
            raise PDEError("surface carries no analytic second derivatives")
        # d_i of the solved gradient fields, by quotient rule on exact data
        x11, x12, x22 = s.jac2[0]
        t11, t12, t22 = s.jac2[1]
        p11, p12, p22 = s.jac2[2]
        ddet = (np.stack([x11, x12]) * t2 + x1 * np.stack([t12, t22])
                - np.stack([x12, x22]) * t1 - x2 * np.stack([t11, t12]))
        dnum_x = (np.stack([t12, t22]) * p1 + t2 * np.stack([p11, p12])
                  - np.stack([t11, t12]) * p2 - t1 * np.stack([p12, p22]))
        dnum_t = (np.stack([x11, x12]) * p2 + x1 * np.stack([p12, p22])
                  - np.stack([x12, x22]) * p1 - x2 * np.stack([p11, p12]))
        a1, a2 = (dnum_x - phi_x * ddet) / det_safe
        b1, b2 = (dnum_t - phi_t * ddet) / det_safe
        reach = 0
    else:
        a1 = array_derivative(grid, phi_x, "r1", 1, accuracy)
        a2 = array_derivative(grid, phi_x, "r2", 1, accuracy)
        b1 = array_derivative(grid, phi_t, "r1", 1, accuracy)
        b2 = array_derivative(grid, phi_t, "r2", 1, accuracy)
        reach = accuracy + 1  # stencil window reach, incl. one-sided edges
    phi_xx, phi_xt_a = solve(a1, a2)
    phi_tx_b, phi_tt = solve(b1, b2)
    phi_xt = 0.5 * (phi_xt_a + phi_tx_b)

    valid = ~_dilate(bad, reach) if reach else ~bad
    asym = float(np.max(np.abs((phi_xt_a - phi_tx_b)[valid]))) if valid.any() else np.nan
    return NonparametricPatch(
        x=s.x.copy(), t=s.t.copy(), phi=s.phi.copy(),
        phi_x=phi_x, phi_t=phi_t, phi_xx=phi_xx, phi_xt=phi_xt, phi_tt=phi_tt,
        valid_mask=valid, jacobian_det=det, mixed_asymmetry=asym)


def graph_patch(x: np.ndarray, t: np.ndarray, fns: dict) -> NonparametricPatch:
    """Patch from closed-form callables phi, phi_x, ..., sampled on (x, t).

    `fns` maps the field names to callables of (x, t); all six derivative
    entries are required.
    """
    needed = ("phi", "phi_x", "phi_t", "phi_xx", "phi_xt", "phi_tt")
    data = {k: np.asarray(fns[k](x, t), dtype=complex) for k in needed}
    mask = np.ones(np.shape(data["phi"]), dtype=bool)
    return NonparametricPatch(x=np.asarray(x, dtype=complex),
                              t=np.asarray(t, dtype=complex),
                              phi=data["phi"], phi_x=data["phi_x"],
                              phi_t=data["phi_t"], phi_xx=data["phi_xx"],
                              phi_xt=data["phi_xt"], phi_tt=data["phi_tt"],
                              valid_mask=mask)


def helicoid_graph_fns() -> dict:
    """phi = arctan(t/x) and its partials (q = x^2 + t^2)."""
    def q(x, t):
        return x ** 2 + t ** 2
    return {
        "phi": lambda x, t: np.arctan2(np.real(t), np.real(x)),
        "phi_x": lambda x, t: -t / q(x, t),
        "phi_t": lambda x, t: x / q(x, t),
        "phi_xx": lambda x, t: 2 * x * t / q(x, t) ** 2,
        "phi_xt": lambda x, t: (t ** 2 - x ** 2) / q(x, t) ** 2,
        "phi_tt": lambda x, t: -2 * x * t / q(x, t) ** 2,
    }


def catenoid_graph_fns() -> dict:
    """phi = arccosh sqrt(x^2 + t^2), valid on x^2 + t^2 > 1."""
    def q(x, t):
        return x ** 2 + t ** 2

    def D(x, t):
        return np.sqrt(q(x, t) ** 2 - q(x, t))

    return {
        "phi": lambda x, t: np.arccosh(np.sqrt(np.real(q(x, t)))),
        "phi_x": lambda x, t: x / D(x, t),
        "phi_t": lambda x, t: t / D(x, t),
        "phi_xx": lambda x, t: 1 / D(x, t) - x ** 2 * (2 * q(x, t) - 1) / D(x, t) ** 3,
        "phi_xt": lambda x, t: -x * t * (2 * q(x, t) - 1) / D(x, t) ** 3,
        "phi_tt": lambda x, t: 1 / D(x, t) - t ** 2 * (2 * q(x, t) - 1) / D(x, t) ** 3,
    }


def wick_catenoid_graph_fns() -> dict:
    """phi = arccosh sqrt(x^2 - t^2): the Wick-rotated catenoid, a real
    Born-Infeld solution on x^2 - t^2 > 1."""
    def p(x, t):
        return x ** 2 - t ** 2

    def D(x, t):
        return np.sqrt(p(x, t) ** 2 - p(x, t))

    return {
        "phi": lambda x, t: np.arccosh(np.sqrt(np.real(p(x, t)))),
        "phi_x": lambda x, t: x / D(x, t),
        "phi_t": lambda x, t: -t / D(x, t),
        "phi_xx": lambda x, t: 1 / D(x, t) - x ** 2 * (2 * p(x, t) - 1) / D(x, t) ** 3,
        "phi_xt": lambda x, t: x * t * (2 * p(x, t) - 1) / D(x, t) ** 3,
        "phi_tt": lambda x, t: -1 / D(x, t) - t ** 2 * (2 * p(x, t) - 1) / D(x, t) ** 3,
    }


def _residual_scale(p: NonparametricPatch) -> np.ndarray:
    return (np.abs(1 + p.phi_t ** 2) * np.abs(p.phi_xx)
            + 2 * np.abs(p.phi_x * p.phi_t * p.phi_xt)
            + np.abs(1 + p.phi_x ** 2) * np.abs(p.phi_tt))


def minimal_surface_residual(p: NonparametricPatch) -> ResidualReport:
    res = ((1 + p.phi_t ** 2) * p.phi_xx
           - 2 * p.phi_x * p.phi_t * p.phi_xt
           + (1 + p.phi_x ** 2) * p.phi_tt)
    return residual_report(res, p.valid_mask, _residual_scale(p))


def born_infeld_residual(p: NonparametricPatch) -> ResidualReport:
    """Pointwise Born-Infeld defect; modulus is reported for complex data."""
    res = ((1 - p.phi_t ** 2) * p.phi_xx
           + 2 * p.phi_x * p.phi_t * p.phi_xt
           - (1 + p.phi_x ** 2) * p.phi_tt)
    return residual_report(res, p.valid_mask, _residual_scale(p))


def boost(p: NonparametricPatch, lb: LorentzBoost) -> NonparametricPatch:
    """Boosted patch: x' = a x + b t, t' = b x + a t, derivative data pulled
    back exactly (phi'(x', t') = phi(x, t))."""
    a, b = lb.a, lb.b
    x2 = a * p.x + b * p.t
    t2 = b * p.x + a * p.t
    px = a * p.phi_x - b * p.phi_t
    pt = -b * p.phi_x + a * p.phi_t
    pxx = a * a * p.phi_xx - 2 * a * b * p.phi_xt + b * b * p.phi_tt
    pxt = -a * b * (p.phi_xx + p.phi_tt) + (a * a + b * b) * p.phi_xt
    ptt = b * b * p.phi_xx - 2 * a * b * p.phi_xt + a * a * p.phi_tt
    return NonparametricPatch(x=x2, t=t2, phi=p.phi.copy(), phi_x=px, phi_t=pt,
                              phi_xx=pxx, phi_xt=pxt, phi_tt=ptt,
                              valid_mask=p.valid_mask.copy(),
                              jacobian_det=None if p.jacobian_det is None
                              else p.jacobian_det.copy())


def boost_graph_fns(fns: dict, lb: LorentzBoost) -> dict:
    """Boost closed-form callables: phi'(x', t') = phi(a x' - b t', -b x' + a t')."""
    a, b = lb.a, lb.b

    def pull(x, t):
        return a * x - b * t, -b * x + a * t

    def wrap(combine):
        def g(x, t):
            x0, t0 = pull(x, t)
            return combine(x0, t0)
        return g

    return {
        "phi": wrap(lambda x0, t0: fns["phi"](x0, t0)),
        "phi_x": wrap(lambda x0, t0: a * fns["phi_x"](x0, t0) - b * fns["phi_t"](x0, t0)),
        "phi_t": wrap(lambda x0, t0: -b * fns["phi_x"](x0, t0) + a * fns["phi_t"](x0, t0)),
        "phi_xx": wrap(lambda x0, t0: a * a * fns["phi_xx"](x0, t0)
                       - 2 * a * b * fns["phi_xt"](x0, t0) + b * b * fns["phi_tt"](x0, t0)),
        "phi_xt": wrap(lambda x0, t0: -a * b * (fns["phi_xx"](x0, t0) + fns["phi_tt"](x0, t0))
                       + (a * a + b * b) * fns["phi_xt"](x0, t0)),
        "phi_tt": wrap(lambda x0, t0: b * b * fns["phi_xx"](x0, t0)
                       - 2 * a * b * fns["phi_xt"](x0, t0) + a * a * fns["phi_tt"](x0, t0)),
    }


def wick_substitute(p: NonparametricPatch) -> NonparametricPatch:
    """t -> i t on derivative data: phi_t -> -i phi_t, phi_tt -> -phi_tt,
    phi_xt -> -i phi_xt (x-derivatives unchanged)."""
    return NonparametricPatch(x=p.x.copy(), t=1j * p.t, phi=p.phi.copy(),
                              phi_x=p.phi_x.copy(), phi_t=-1j * p.phi_t,
                              phi_xx=p.phi_xx.copy(), phi_xt=-1j * p.phi_xt,
                              phi_tt=-p.phi_tt, valid_mask=p.valid_mask.copy())


def wick_equivalence_check(minimal: NonparametricPatch) -> ResidualReport:
    """Born-Infeld residual of the Wick-substituted patch.

    Algebraically identical to the minimal-surface residual of the input, so
    it vanishes exactly when the input was a minimal surface.
    """
    return born_infeld_residual(wick_substitute(minimal))


def t_reflect(p: NonparametricPatch) -> NonparametricPatch:
    """t -> -t, under which the Born-Infeld equation is invariant."""
    return NonparametricPatch(x=p.x.copy(), t=-p.t, phi=p.phi.copy(),
                              phi_x=p.phi_x.copy(), phi_t=-p.phi_t,
                              phi_xx=p.phi_xx.copy(), phi_xt=-p.phi_xt,
                              phi_tt=p.phi_tt.copy(), valid_mask=p.valid_mask.copy())


__all__ = [
    "LorentzBoost", "NonparametricPatch", "PDEError", "boost",
    "boost_graph_fns", "born_infeld_residual", "catenoid_graph_fns",
    "chain_rule_partials", "graph_patch", "helicoid_graph_fns",
    "minimal_surface_residual", "t_reflect", "wick_catenoid_graph_fns",
    "wick_equivalence_check", "wick_substitute",
]
