"""Registry of Weierstrass-Enneper generating functions R(w).

Each entry supplies the holomorphic density R(w) of the classical
representation

    x = x0 + Re int (1 - w^2) R(w) dw
    t = t0 + Re int i (1 + w^2) R(w) dw
    phi = phi0 + Re int 2 w R(w) dw

together with its singularity set and a default parameter-plane domain on
which the finite-difference verification suite meets its tolerances (pole
clearance governs how tight the domain must be).  Harmonic conjugation is
the substitution R -> -i R, tracked as a unit-modulus phase so repeated
conjugation stays exact ((-i)^2 = -1, etc.).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .grids import ParamGrid

CATALOG_IDS = (
    "enneper", "catenoid", "right_helicoid", "general_helicoid", "scherk",
    "general_scherk", "henneberg", "general_enneper", "schwarz_riemann",
    "custom",
)

PHASE_UNIT_TOL = 1e-14


class CatalogError(ValueError):
    pass


class SingularEvaluation(CatalogError):
    pass


class BranchRegionError(CatalogError):
    """Evaluation left the principal-branch region of a multivalued entry."""


@dataclass(frozen=True)
class WEFunction:
    """A catalog R(w) with its parameters and conjugation phase.

    Parameters not used by an entry are ignored.  `custom` entries evaluate
    the rational function numerator(w)/denominator(w) with coefficients in
    descending powers (numpy.polyval convention).
    """

    id: str
    kappa: float = 1.0
    alpha: float = math.pi / 4
    a: float = 1.0
    b: float = 1.0
    numerator: tuple[complex, ...] = (1.0,)
    denominator: tuple[complex, ...] = (1.0,)
    conjugation_phase: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.id not in CATALOG_IDS:
            raise CatalogError(
                f"unknown surface id {self.id!r}; valid ids: {', '.join(CATALOG_IDS)}")
        if abs(abs(self.conjugation_phase) - 1.0) > PHASE_UNIT_TOL:
            raise CatalogError("conjugation phase must have unit modulus")
        if self.id == "general_scherk":
            if not (0.0 < self.alpha < math.pi / 2):
                raise CatalogError("general_scherk requires 0 < alpha < pi/2")
            if self.a <= 0:
                raise CatalogError("general_scherk requires a > 0")
        if self.id == "custom":
            if len(self.denominator) == 0 or not any(c != 0 for c in self.denominator):
                raise CatalogError("custom entry needs a nonzero denominator")
            object.__setattr__(self, "numerator", tuple(complex(c) for c in self.numerator))
            object.__setattr__(self, "denominator", tuple(complex(c) for c in self.denominator))


def conjugate(f: WEFunction) -> WEFunction:
    """Harmonic-conjugate data: multiply the phase by -i, all else unchanged."""
    return replace(f, conjugation_phase=f.conjugation_phase * -1j)


def _schwarz_radicand(w):
    return 1.0 - 14.0 * w ** 4 + w ** 8


def _raw_R(f: WEFunction, w: np.ndarray) -> np.ndarray:
    if f.id == "enneper":
        return np.ones_like(w)
    if f.id == "catenoid":
        return f.kappa / (2.0 * w ** 2)
    if f.id == "right_helicoid":
        return 1j * f.kappa / (2.0 * w ** 2)
    if f.id == "general_helicoid":
        return f.kappa * cmath.exp(1j * f.alpha) / (2.0 * w ** 2)
    if f.id == "scherk":
        return 2.0 / (1.0 - w ** 4)
    if f.id == "general_scherk":
        c2a = math.cos(2.0 * f.alpha)
        return (-2.0j * f.a * math.sin(2.0 * f.alpha)
                / (1.0 + 2.0 * w ** 2 * c2a + w ** 4))
    if f.id == "henneberg":
        return 1.0 - w ** -4
    if f.id == "general_enneper":
        return 1j * f.a * (w ** 2 - 1.0) / w ** 3 - 1j * f.b / (2.0 * w ** 2)
    if f.id == "schwarz_riemann":
        s = _schwarz_radicand(w)
        if np.any(np.real(s) <= 0):
            raise BranchRegionError(
                "schwarz_riemann evaluated outside the principal-branch region "
                "Re(1 - 14 w^4 + w^8) > 0; restrict the domain/path")
        return s ** -0.5
    if f.id == "custom":
        num = np.polyval(np.asarray(f.numerator), w)
        den = np.polyval(np.asarray(f.denominator), w)
        return num / den
    raise CatalogError(f"unhandled id {f.id}")  # pragma: no cover


def eval_R(f: WEFunction, w) -> np.ndarray | complex:
    """conjugation_phase * R(w), vectorized over w.

    Raises SingularEvaluation if any sample hits a singularity (non-finite
    result); callers keep paths away from poles via quadrature's exclusion
    checks, this guard only catches exact hits.
    """
    w_arr = np.asarray(w, dtype=complex)
    scalar = w_arr.ndim == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = f.conjugation_phase * _raw_R(f, w_arr if not scalar else w_arr[None])
    if not np.all(np.isfinite(out)):
        raise SingularEvaluation(f"R({f.id}) evaluated at a singular point")
    return complex(out[0]) if scalar else out


def _raw_R_deriv(f: WEFunction, w: np.ndarray) -> np.ndarray:
    if f.id == "enneper":
        return np.zeros_like(w)
    if f.id == "catenoid":
        return -f.kappa / w ** 3
    if f.id == "right_helicoid":
        return -1j * f.kappa / w ** 3
    if f.id == "general_helicoid":
        return -f.kappa * cmath.exp(1j * f.alpha) / w ** 3
    if f.id == "scherk":
        return 8.0 * w ** 3 / (1.0 - w ** 4) ** 2
    if f.id == "general_scherk":
        c2a = math.cos(2.0 * f.alpha)
        den = 1.0 + 2.0 * w ** 2 * c2a + w ** 4
        return 2.0j * f.a * math.sin(2.0 * f.alpha) * (4.0 * w * c2a + 4.0 * w ** 3) / den ** 2
    if f.id == "henneberg":
        return 4.0 * w ** -5
    if f.id == "general_enneper":
        return 1j * f.a * (-(w ** -2) + 3.0 * w ** -4) + 1j * f.b / w ** 3
    if f.id == "schwarz_riemann":
        s = _schwarz_radicand(w)
        if np.any(np.real(s) <= 0):
            raise BranchRegionError(
                "schwarz_riemann derivative outside the principal-branch region")
        return (28.0 * w ** 3 - 4.0 * w ** 7) * s ** -1.5
    if f.id == "custom":
        num = np.asarray(f.numerator)
        den = np.asarray(f.denominator)
        p = np.polyval(num, w)
        q = np.polyval(den, w)
        dp = np.polyval(np.polyder(num), w) if len(num) > 1 else np.zeros_like(w)
        dq = np.polyval(np.polyder(den), w) if len(den) > 1 else np.zeros_like(w)
        return (dp * q - p * dq) / q ** 2
    raise CatalogError(f"unhandled id {f.id}")  # pragma: no cover


def eval_R_deriv(f: WEFunction, w) -> np.ndarray | complex:
    """conjugation_phase * dR/dw, vectorized (for exact second derivatives)."""
    w_arr = np.asarray(w, dtype=complex)
    scalar = w_arr.ndim == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = f.conjugation_phase * _raw_R_deriv(f, w_arr if not scalar else w_arr[None])
    if not np.all(np.isfinite(out)):
        raise SingularEvaluation(f"dR/dw ({f.id}) evaluated at a singular point")
    return complex(out[0]) if scalar else out


_SQ3 = math.sqrt(3.0)
_SCHWARZ_RADII = ((2.0 - _SQ3) ** 0.5, (2.0 + _SQ3) ** 0.5)


def singularity_points(f: WEFunction) -> list[complex]:
    """All finite poles / branch points of the entry, unfiltered."""
    if f.id == "enneper":
        return []
    if f.id in ("catenoid", "right_helicoid", "general_helicoid",
                "henneberg", "general_enneper"):
        return [0.0 + 0.0j]
    if f.id == "scherk":
        return [1.0 + 0j, -1.0 + 0j, 1j, -1j]
    if f.id == "general_scherk":
        half = math.pi / 2 - f.alpha
        root = cmath.exp(1j * half)
        other = cmath.exp(1j * (math.pi / 2 + f.alpha))
        return [root, -root, other, -other]
    if f.id == "schwarz_riemann":
        pts = []
        for radius in _SCHWARZ_RADII:
            for k in range(4):
                pts.append(radius * cmath.exp(1j * k * math.pi / 2))
        return pts
    if f.id == "custom":
        roots = np.roots(np.asarray(f.denominator)) if len(f.denominator) > 1 else []
        return [complex(z) for z in np.sort_complex(np.asarray(roots, dtype=complex))]
    raise CatalogError(f"unhandled id {f.id}")  # pragma: no cover


def singularities(f: WEFunction, region: ParamGrid) -> list[complex]:
    """Singularities inside the region's bounding box (with a hair of slack)."""
    if region.kind == "rectangle":
        x0, x1, y0, y1 = region.bounds
    else:
        rmax = region.bounds[1]
        x0, x1, y0, y1 = -rmax, rmax, -rmax, rmax
    eps = 1e-12 * (1.0 + abs(x1 - x0) + abs(y1 - y0))
    out = []
    for s in singularity_points(f):
        if x0 - eps <= s.real <= x1 + eps and y0 - eps <= s.imag <= y1 + eps:
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# default domains, bases and flags per entry
# ---------------------------------------------------------------------------

def _sector(rho0, rho1, psi0, psi1, h=0.01) -> ParamGrid:
    n1 = int(round((rho1 - rho0) / h)) + 1
    n2 = int(round((psi1 - psi0) / h)) + 1
    return ParamGrid("annulus", n1, n2, (rho0, rho1, psi0, psi1))


def _rect(half, h=0.01) -> ParamGrid:
    n = int(round(2 * half / h)) + 1
    return ParamGrid("rectangle", n, n, (-half, half, -half, half))


_POLE_SECTOR = (0.45, 0.7, 0.2, 1.47)

_ENTRY_TABLE = {
    # id: (verification domain args, rect?, default base, flip_t)
    "enneper": (0.45, True, 0.0 + 0.0j, False),
    "catenoid": (_POLE_SECTOR, False, 1.0 + 0.0j, False),
    "right_helicoid": (_POLE_SECTOR, False, 1.0 + 0.0j, False),
    "general_helicoid": (_POLE_SECTOR, False, 1.0 + 0.0j, False),
    "scherk": (0.5, True, 0.0 + 0.0j, False),
    "general_scherk": (0.4, True, 0.0 + 0.0j, False),
    "henneberg": ((0.6, 0.75, 0.25, 1.32), False, 0.675 * cmath.exp(0.785j), True),
    "general_enneper": ((0.6, 0.75, 0.2, 1.47), False, 0.675 * cmath.exp(0.835j), False),
    "schwarz_riemann": (0.25, True, 0.0 + 0.0j, False),
}


def verification_grid(surface_id: str, refine: int = 1) -> ParamGrid:
    """Default verification domain at step h ~= 1e-2 / refine.

    Domains keep enough clearance from the entry's poles (for quadrature and
    the conjugacy stencils) and from |w| = 1, where the graph slope of every
    W-E surface diverges (the Gauss map is w), so the nonparametric residual
    checks meet their tolerances.
    """
    args, is_rect, _, _ = _entry_row(surface_id)
    h = 0.01 / refine
    if is_rect:
        return _rect(args, h)
    return _sector(*args, h)


def default_base(surface_id: str) -> complex:
    return _entry_row(surface_id)[2]


def default_flip_t(surface_id: str) -> bool:
    return _entry_row(surface_id)[3]


def _entry_row(surface_id: str):
    try:
        return _ENTRY_TABLE[surface_id]
    except KeyError:
        raise CatalogError(
            f"no default domain for {surface_id!r}; valid ids: "
            f"{', '.join(sorted(_ENTRY_TABLE))}") from None


def catalog_function(surface_id: str, **params) -> WEFunction:
    """Build a WEFunction by id with per-entry defaults for its parameters."""
    return WEFunction(id=surface_id, **params)


__all__ = [
    "BranchRegionError", "CATALOG_IDS", "CatalogError", "SingularEvaluation",
    "WEFunction", "catalog_function", "conjugate", "default_base",
    "default_flip_t", "eval_R", "singularities", "singularity_points",
    "verification_grid",
]
