"""First fundamental form, isothermality, and the action integral.

Two signatures are supported.  "euclidean" is the ordinary form of a real
surface,

    E = x_{,1}^2 + t_{,1}^2 + phi_{,1}^2   (and F, G likewise),

"wick_signed" carries the minus sign of the soliton picture,

    E^s = x_{,1}^2 - t_{,1}^2 + phi_{,1}^2 ,

where the squares are algebraic squares of (possibly complex) derivatives:
for a Wick-rotated family the t derivative is imaginary, -(i t')^2 = +t'^2,
so E^s, F^s, G^s come out real up to round-off and independent of the family
parameter theta.

The action is A = int sqrt(E G - F^2) dr1 dr2 over the grid's domain
(tensor-product trapezoid; polar grids include the rho Jacobian).  The
reported value is domain-dependent by nature, so the grid is part of the
result's provenance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .grids import ParamGrid, SurfaceGrid, surface_jacobian
from .reports import ResidualReport, residual_report

Signature = Literal["euclidean", "wick_signed"]

DISCRIMINANT_CLAMP = 1e-12


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class FundamentalForm:
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    signature: Signature
    grid: ParamGrid

    @property
    def isothermal_defect(self) -> float:
        """max(|E - G|, |F|) over the grid: 0 for isothermal coordinates."""
        return float(max(np.max(np.abs(self.E - self.G)), np.max(np.abs(self.F))))


def fundamental_form(s: SurfaceGrid, signature: Signature = "euclidean",
                     source: str = "auto", accuracy: int = 2) -> FundamentalForm:
    """E, F, G from first derivatives (analytic when the grid carries them).

    source="fd" forces finite differences: the generic path for surfaces
    without analytic derivatives, with the usual O(h^accuracy) truncation.
    """
    if signature not in ("euclidean", "wick_signed"):
        raise GeometryError(f"unknown signature {signature!r}")
    jac = surface_jacobian(s, source, accuracy)
    sign = np.array([1.0, -1.0 if signature == "wick_signed" else 1.0, 1.0])
    d1, d2 = jac[:, 0], jac[:, 1]
    E = np.einsum("k,kij->ij", sign, d1 * d1)
    F = np.einsum("k,kij->ij", sign, d1 * d2)
    G = np.einsum("k,kij->ij", sign, d2 * d2)
    return FundamentalForm(E, F, G, signature, s.grid)


@dataclass(frozen=True)
class ThetaInvarianceReport:
    """Deviation of E^s, G^s from the first theta's arrays, and max |F^s|."""

    e_deviation: ResidualReport
    g_deviation: ResidualReport
    f_max: float
    thetas: tuple[float, ...]

    @property
    def max_deviation(self) -> float:
        return max(self.e_deviation.max_abs, self.g_deviation.max_abs)


def theta_sweep_invariance(fam, thetas, source: str = "auto",
                           accuracy: int = 2) -> ThetaInvarianceReport:
    """Sweep S_theta and report how far E^s, G^s move (they should not).

    `fam` is a SolitonFamily (duck-typed via its .at(theta) method).
    """
    thetas = tuple(float(t) for t in thetas)
    if len(thetas) < 1:
        raise GeometryError("need at least one theta")
    forms = [fundamental_form(fam.at(t), "wick_signed", source, accuracy)
             for t in thetas]
    e0, g0 = forms[0].E, forms[0].G
    e_dev = np.zeros(e0.shape)
    g_dev = np.zeros(g0.shape)
    f_max = 0.0
    for form in forms:
        e_dev = np.maximum(e_dev, np.abs(form.E - e0))
        g_dev = np.maximum(g_dev, np.abs(form.G - g0))
        f_max = max(f_max, float(np.max(np.abs(form.F))))
    return ThetaInvarianceReport(residual_report(e_dev), residual_report(g_dev),
                                 f_max, thetas)


def action(form: FundamentalForm, grid: ParamGrid) -> float:
    """A = int sqrt(E G - F^2) dr1 dr2 over the grid domain.

    The discriminant must be real and nonnegative up to round-off; values in
    (-clamp, 0) are clamped to zero (isothermal points can dip below zero by
    rounding), anything more negative is an error.
    """
    disc = form.E * form.G - form.F ** 2
    scale = 1.0 + np.max(np.abs(disc))
    if np.max(np.abs(disc.imag)) > DISCRIMINANT_CLAMP * scale:
        raise GeometryError("EG - F^2 has a non-negligible imaginary part")
    re = disc.real
    if np.min(re) < -DISCRIMINANT_CLAMP * scale:
        raise GeometryError("EG - F^2 is negative beyond the round-off clamp")
    integrand = np.sqrt(np.clip(re, 0.0, None))
    return float(np.sum(integrand * grid.area_weights()))


def change_of_variables_action(patch, grid: ParamGrid) -> float:
    """Independent action route: int sqrt(1 + phi_x^2 - phi_t^2) |det J| dr1 dr2.

    `patch` is a NonparametricPatch built from the same grid; J is the
    (complex) Jacobian d(x, t)/d(r1, r2).  Agrees with `action` of the
    wick_signed form wherever the (x, t) chart is a diffeomorphism.
    """
    integrand = np.sqrt(1.0 + patch.phi_x ** 2 - patch.phi_t ** 2)
    vals = np.abs(integrand) * np.abs(patch.jacobian_det)
    vals = np.where(patch.valid_mask, vals, 0.0)
    return float(np.sum(vals * grid.area_weights()))


__all__ = [
    "DISCRIMINANT_CLAMP", "FundamentalForm", "GeometryError",
    "ThetaInvarianceReport", "action", "change_of_variables_action",
    "fundamental_form", "theta_sweep_invariance",
]
