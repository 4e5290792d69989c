import math

import numpy as np
import pytest

import wesurf as ws


@pytest.fixture(scope="session")
def annulus_grid():
    """Full-circle annulus inside the unit disk (oracle comparisons)."""
    return ws.default_annulus(0.4, 0.9, 51, 128)


@pytest.fixture(scope="session")
def sector_grid():
    """Annular sector with both steps ~1e-2 (finite-difference checks)."""
    return ws.verification_grid("catenoid")


@pytest.fixture(scope="session")
def catenoid_pair(annulus_grid):
    data = ws.we_data("catenoid", base=1.0, kappa=1.0)
    return ws.generate_conjugate_pair(data, annulus_grid)


@pytest.fixture(scope="session")
def hc_family(annulus_grid):
    """Helicoid/catenoid conjugate family on the full annulus."""
    return ws.SolitonFamily(ws.helicoid_closed(annulus_grid),
                            ws.catenoid_closed(annulus_grid))


@pytest.fixture(scope="session")
def hc_family_sector(sector_grid):
    return ws.SolitonFamily(ws.helicoid_closed(sector_grid),
                            ws.catenoid_closed(sector_grid))


@pytest.fixture(scope="session")
def enneper_family():
    grid = ws.verification_grid("enneper")
    X, Y = ws.generate_conjugate_pair(ws.we_data("enneper"), grid)
    return ws.SolitonFamily(X, Y)


def rng_points(n, rho_lo=0.4, rho_hi=0.9, seed=7):
    rng = np.random.default_rng(seed)
    rho = rng.uniform(rho_lo, rho_hi, n)
    psi = rng.uniform(0.0, 2 * math.pi, n)
    return rho * np.exp(1j * psi)
