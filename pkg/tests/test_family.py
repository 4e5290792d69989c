import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import wesurf as ws
from wesurf.family import FamilyError

from conftest import rng_points


# ------------------------------------------------------------- wick rotation

def test_wick_leaves_zero_t_unchanged(annulus_grid):
    r = annulus_grid.nodes()
    s = ws.surface_from_components(annulus_grid, r.real, np.zeros(r.shape), r.imag)
    w = ws.wick_rotate(s)
    assert w.reality == "wick_rotated"
    assert np.array_equal(w.x, s.x) and np.array_equal(w.phi, s.phi)
    assert np.max(np.abs(w.t)) == 0.0


def test_double_wick_negates_t(annulus_grid):
    s = ws.catenoid_closed(annulus_grid)
    ww = ws.wick_rotate(ws.wick_rotate(s))
    assert np.array_equal(ww.t, -s.t)
    assert np.array_equal(ww.x, s.x)


def test_wick_catenoid_matches_nonparametric_form(annulus_grid):
    # phi = arccosh sqrt(x^2 - t^2) with t the (imaginary) rotated component
    s = ws.wick_rotate(ws.catenoid_closed(annulus_grid))
    p = s.x ** 2 - s.t ** 2
    assert np.max(np.abs(p.imag)) < 1e-12
    defined = p.real > 1.0 + 1e-9
    expected = np.arccosh(np.sqrt(p.real[defined]))
    assert np.max(np.abs(np.abs(s.phi.real[defined]) - expected)) < 1e-12


# ------------------------------------------------------------------- family

def test_family_rejects_non_conjugate_pair(annulus_grid):
    X = ws.helicoid_closed(annulus_grid)
    Y = ws.catenoid_closed(annulus_grid)
    bad = Y.with_values(2.0 * Y.values, jac=2.0 * Y.jac, jac2=2.0 * Y.jac2)
    with pytest.raises(FamilyError):
        ws.SolitonFamily(X, bad)
    fam = ws.SolitonFamily(X, bad, validate=False)  # corruption injection
    assert fam.Ys is not None


def test_family_at_zero_is_wick_x(hc_family):
    S = hc_family.at(0.0)
    assert np.array_equal(S.values, hc_family.Xs.values)


def test_family_at_half_pi_is_wick_y(hc_family):
    S = hc_family.at(math.pi / 2)
    assert np.array_equal(S.values, hc_family.Ys.values)


def test_family_phi_closed_form(hc_family, annulus_grid):
    # phi_theta = Im(e^{-i theta} log r) on the continued branch
    theta = 0.7
    S = hc_family.at(theta)
    L = np.log(annulus_grid.axis1)[:, None] + 1j * annulus_grid.axis2[None, :]
    expected = -0.5j * L * np.exp(-1j * theta) + 0.5j * np.conj(L) * np.exp(1j * theta)
    assert np.max(np.abs(S.phi - expected)) < 1e-12


def test_family_t_component_is_purely_imaginary(hc_family):
    for theta in (0.0, 0.4, 1.2):
        S = hc_family.at(theta)
        assert np.max(np.abs(S.t.real)) < 1e-12


@settings(max_examples=20, deadline=None)
@given(st.floats(-2.0, 2.0), st.floats(-2.0, 2.0))
def test_family_angle_addition_identity(t1, t2):
    grid = ws.ParamGrid("annulus", 5, 7, (0.5, 0.8, 0.1, 1.0))
    fam = ws.SolitonFamily(ws.helicoid_closed(grid), ws.catenoid_closed(grid))
    lhs = fam.at(t1).values + fam.at(t2).values
    rhs = 2.0 * math.cos(0.5 * (t1 - t2)) * fam.at(0.5 * (t1 + t2)).values
    assert np.max(np.abs(lhs - rhs)) < 1e-12


# ---------------------------------------------------------- theta derivative

def test_theta_derivative_order_four_is_identity(hc_family):
    theta = 0.3
    assert np.array_equal(ws.theta_derivative(hc_family, theta, 4).values,
                          hc_family.at(theta).values)


def test_theta_derivative_matches_shifted_family(hc_family):
    theta = 0.3
    for order in (1, 2, 3):
        lhs = ws.theta_derivative(hc_family, theta, order)
        rhs = hc_family.at(theta + order * math.pi / 2)
        assert np.array_equal(lhs.values, rhs.values)


def test_theta_derivative_order_two_negates(hc_family):
    theta = 0.3
    lhs = ws.theta_derivative(hc_family, theta, 2).values
    assert np.max(np.abs(lhs + hc_family.at(theta).values)) < 1e-12


def test_first_derivative_at_zero_is_wick_y(hc_family):
    assert np.array_equal(ws.theta_derivative(hc_family, 0.0, 1).values,
                          hc_family.Ys.values)


def test_theta_derivative_order_range():
    grid = ws.ParamGrid("annulus", 5, 7, (0.5, 0.8, 0.1, 1.0))
    fam = ws.SolitonFamily(ws.helicoid_closed(grid), ws.catenoid_closed(grid))
    with pytest.raises(FamilyError):
        ws.theta_derivative(fam, 0.0, 5)


# -------------------------------------------------------------- family F/G

def test_family_fg_closed_form_helicoid_catenoid():
    pts = rng_points(100, seed=11)
    rng = np.random.default_rng(12)
    thetas = rng.uniform(-math.pi, math.pi, 100)
    for r, th in zip(pts, thetas):
        fg = ws.family_fg(ws.helicoid_fg(), ws.catenoid_fg(), th)
        assert abs(fg.F(r) - 0.5j * np.exp(-1j * th) / r) < 1e-12
        assert abs(fg.G(np.conj(r)) + 0.5j * np.exp(1j * th) / np.conj(r)) < 1e-12


def test_family_fg_at_half_pi_is_catenoid():
    fg = ws.family_fg(ws.helicoid_fg(), ws.catenoid_fg(), math.pi / 2)
    r = 0.3 - 0.55j
    assert fg.F(r) == ws.catenoid_fg().F(r)


def test_family_fg_at_zero_unchanged():
    fg = ws.family_fg(ws.helicoid_fg(), ws.catenoid_fg(), 0.0)
    r = 0.62 + 0.14j
    assert fg.F(r) == ws.helicoid_fg().F(r)
    assert fg.Gp(np.conj(r)) == ws.helicoid_fg().Gp(np.conj(r))


def test_family_fg_keeps_reality_constraint():
    fg = ws.family_fg(ws.helicoid_fg(), ws.catenoid_fg(), 0.8)
    assert fg.reality_constraint
    assert fg.check_reality(rng_points(32)) < 1e-14


# ------------------------------------------------------- soliton relations

def test_soliton_relations_helicoid_catenoid(hc_family):
    for theta in (0.0, 0.3, math.pi / 2):
        S = hc_family.at(theta)
        fg = ws.family_fg(ws.helicoid_fg(), ws.catenoid_fg(), theta)
        rep = ws.verify_soliton_relations(S, fg, singularities=[0.0])
        assert rep.max_mismatch < 1e-8


def test_soliton_relations_detect_corrupted_F(hc_family):
    theta = 0.3
    S = hc_family.at(theta)
    fg = ws.family_fg(ws.helicoid_fg(), ws.catenoid_fg(), theta)
    bad = ws.FGPair(F=lambda r: 1.01 * fg.F(r), G=fg.G,
                    Fp=lambda r: 1.01 * fg.Fp(r), Gp=fg.Gp,
                    reality_constraint=False, label="corrupted")
    rep = ws.verify_soliton_relations(S, bad, singularities=[0.0])
    assert rep.max_mismatch > 1e-3


def test_soliton_relations_zero_surface(annulus_grid):
    z = np.zeros(annulus_grid.shape)
    s = ws.surface_from_components(annulus_grid, z, z, z, reality="wick_rotated")
    zero = ws.FGPair(F=lambda r: np.zeros_like(r), G=lambda s_: np.zeros_like(s_),
                     Fp=lambda r: np.zeros_like(r), Gp=lambda s_: np.zeros_like(s_),
                     reality_constraint=True, label="zero")
    rep = ws.verify_soliton_relations(s, zero)
    assert rep.max_mismatch == 0.0


def test_soliton_relations_enneper_family(enneper_family):
    theta = 0.45
    S = enneper_family.at(theta)
    fg = ws.family_fg(ws.enneper_fg(), ws.enneper_conjugate_fg(), theta)
    rep = ws.verify_soliton_relations(S, fg)
    assert rep.max_mismatch < 1e-8
