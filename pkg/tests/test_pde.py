import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import wesurf as ws
from wesurf.pde import PDEError, wick_substitute


def xt_mesh(x0, x1, t0, t1, n=41):
    xs = np.linspace(x0, x1, n)[:, None] + np.zeros((1, n))
    ts = np.zeros((n, 1)) + np.linspace(t0, t1, n)[None, :]
    return xs, ts


# -------------------------------------------------------- chain-rule partials

def test_identity_chart_parabola():
    g = ws.ParamGrid("rectangle", 31, 31, (-1.0, 1.0, -1.0, 1.0))
    r = g.nodes()
    s = ws.surface_from_components(g, r.real, r.imag, r.real ** 2)
    p = ws.chain_rule_partials(s, accuracy=2)
    assert np.max(np.abs(p.phi_x - 2.0 * s.x)[p.valid_mask]) < 1e-6
    assert np.max(np.abs(p.phi_xx - 2.0)[p.valid_mask]) < 1e-6
    assert np.max(np.abs(p.phi_tt)[p.valid_mask]) < 1e-6


def test_helicoid_gradient_matches_closed_form(annulus_grid):
    s = ws.helicoid_closed(annulus_grid)
    p = ws.chain_rule_partials(s, first_source="analytic")
    q = s.x ** 2 + s.t ** 2
    assert np.max(np.abs(p.phi_x + s.t / q)[p.valid_mask]) < 1e-6
    assert np.max(np.abs(p.phi_t - s.x / q)[p.valid_mask]) < 1e-6


def test_catenoid_gradient_matches_closed_form(annulus_grid):
    s = ws.catenoid_closed(annulus_grid)
    p = ws.chain_rule_partials(s, first_source="analytic")
    q = (s.x ** 2 + s.t ** 2).real
    expected = s.x.real / (np.sqrt(q - 1.0) * np.sqrt(q))
    # phi = -ln|r| is negative inside the disk: the graph is -arccosh branch
    sign = np.sign(s.phi.real[0, 0])
    assert np.max(np.abs(p.phi_x - sign * expected)[p.valid_mask]) < 1e-6


def test_degenerate_chart_nodes_are_dropped_and_counted():
    # the (x, t) chart of any W-E surface degenerates on |r| = 1
    g = ws.ParamGrid("annulus", 41, 41, (0.9, 1.1, 0.2, 0.8),
                     allow_unit_circle=True)
    s = ws.helicoid_closed(g)
    p = ws.chain_rule_partials(s, first_source="analytic", cond_cutoff=1e6)
    assert p.dropped_count > 0
    rep = ws.minimal_surface_residual(p)
    assert rep.node_count == p.valid_mask.sum()


# ------------------------------------------------------------------ residuals

def test_plane_solves_both_equations():
    g = ws.ParamGrid("rectangle", 21, 21, (-1.0, 1.0, -1.0, 1.0))
    r = g.nodes()
    s = ws.surface_from_components(g, r.real, r.imag, 0.7 * r.real - 0.2 * r.imag)
    p = ws.chain_rule_partials(s)
    assert ws.minimal_surface_residual(p).max_abs < 1e-10
    assert ws.born_infeld_residual(p).max_abs < 1e-10


def test_helicoid_minimal_residual(annulus_grid):
    s = ws.helicoid_closed(annulus_grid)
    p = ws.chain_rule_partials(s, first_source="analytic", second_source="analytic")
    assert ws.minimal_surface_residual(p).max_abs < 1e-5


def test_traveling_wave_solves_born_infeld():
    xs, ts = xt_mesh(-1.0, 1.0, -1.0, 1.0)
    f = lambda u: u ** 3 - 2.0 * u
    fp = lambda u: 3.0 * u ** 2 - 2.0
    fpp = lambda u: 6.0 * u
    fns = {
        "phi": lambda x, t: f(x - t),
        "phi_x": lambda x, t: fp(x - t),
        "phi_t": lambda x, t: -fp(x - t),
        "phi_xx": lambda x, t: fpp(x - t),
        "phi_xt": lambda x, t: -fpp(x - t),
        "phi_tt": lambda x, t: fpp(x - t),
    }
    p = ws.graph_patch(xs, ts, fns)
    assert ws.born_infeld_residual(p).max_abs < 1e-10


def test_wick_catenoid_patch_solves_born_infeld():
    xs, ts = xt_mesh(2.0, 3.0, -0.45, 0.45)
    p = ws.graph_patch(xs, ts, ws.wick_catenoid_graph_fns())
    assert ws.born_infeld_residual(p).max_abs < 1e-5


def test_family_grids_solve_born_infeld(hc_family):
    for theta in (0.0, 0.5, math.pi / 2):
        p = ws.chain_rule_partials(hc_family.at(theta), first_source="analytic",
                                   second_source="analytic")
        assert ws.born_infeld_residual(p).max_abs < 1e-4


def test_sympy_oracle_wick_catenoid_is_exact_solution():
    sympy = pytest.importorskip("sympy")
    x, t = sympy.symbols("x t", positive=True)
    phi = sympy.acosh(sympy.sqrt(x ** 2 - t ** 2))
    res = ((1 - phi.diff(t) ** 2) * phi.diff(x, 2)
           + 2 * phi.diff(x) * phi.diff(t) * phi.diff(x, t)
           - (1 + phi.diff(x) ** 2) * phi.diff(t, 2))
    assert sympy.simplify(res) == 0


def test_sympy_oracle_helicoid_is_minimal():
    sympy = pytest.importorskip("sympy")
    x, t = sympy.symbols("x t", positive=True)
    phi = sympy.atan(t / x)
    res = ((1 + phi.diff(t) ** 2) * phi.diff(x, 2)
           - 2 * phi.diff(x) * phi.diff(t) * phi.diff(x, t)
           + (1 + phi.diff(x) ** 2) * phi.diff(t, 2))
    assert sympy.simplify(res) == 0


# -------------------------------------------------------------------- boosts

def test_rapidity_zero_is_identity():
    xs, ts = xt_mesh(2.0, 3.0, -0.4, 0.4, 11)
    p = ws.graph_patch(xs, ts, ws.wick_catenoid_graph_fns())
    b = ws.boost(p, ws.LorentzBoost(0.0))
    assert np.array_equal(b.x, p.x)
    assert np.array_equal(b.phi_xx, p.phi_xx)


def test_boost_preserves_born_infeld_residual():
    xs, ts = xt_mesh(2.0, 3.0, -0.45, 0.45)
    p = ws.graph_patch(xs, ts, ws.wick_catenoid_graph_fns())
    before = ws.born_infeld_residual(p)
    after = ws.born_infeld_residual(ws.boost(p, ws.LorentzBoost(0.8)))
    assert abs(before.max_abs - after.max_abs) < 1e-5


@settings(max_examples=25, deadline=None)
@given(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
def test_boost_composition_law(a, b):
    xs, ts = xt_mesh(2.0, 3.0, -0.3, 0.3, 7)
    p = ws.graph_patch(xs, ts, ws.wick_catenoid_graph_fns())
    once = ws.boost(p, ws.LorentzBoost(a + b))
    twice = ws.boost(ws.boost(p, ws.LorentzBoost(a)), ws.LorentzBoost(b))
    assert np.max(np.abs(once.x - twice.x)) < 1e-12
    assert np.max(np.abs(once.t - twice.t)) < 1e-12


def test_boost_graph_fns_match_patch_boost():
    xs, ts = xt_mesh(2.2, 2.8, -0.2, 0.2, 9)
    lb = ws.LorentzBoost(0.6)
    fns = ws.wick_catenoid_graph_fns()
    boosted_fns = ws.boost_graph_fns(fns, lb)
    # pull the boosted callables back at the boosted coordinates
    p = ws.graph_patch(xs, ts, fns)
    pb = ws.boost(p, lb)
    direct = boosted_fns["phi_x"](pb.x, pb.t)
    assert np.max(np.abs(direct - pb.phi_x)) < 1e-10


def test_boost_hyperbolic_identity_invariant():
    lb = ws.LorentzBoost(1.5)
    assert abs(lb.a ** 2 - lb.b ** 2 - 1.0) < 1e-12


# ---------------------------------------------------------- wick equivalence

def test_wick_equivalence_helicoid_and_catenoid(annulus_grid):
    for make in (ws.helicoid_closed, ws.catenoid_closed):
        s = make(annulus_grid)
        p = ws.chain_rule_partials(s, first_source="analytic", second_source="analytic")
        assert ws.wick_equivalence_check(p).max_abs < 1e-5


def test_wick_equivalence_plane_is_zero():
    g = ws.ParamGrid("rectangle", 11, 11, (-1.0, 1.0, -1.0, 1.0))
    r = g.nodes()
    s = ws.surface_from_components(g, r.real, r.imag, 0.3 * r.real + 0.1 * r.imag)
    p = ws.chain_rule_partials(s)
    assert ws.wick_equivalence_check(p).max_abs < 1e-10


def test_non_minimal_graph_fails_both_residuals():
    xs, ts = xt_mesh(2.0, 3.0, -0.5, 0.5, 21)
    fns = {
        "phi": lambda x, t: x ** 2 + t ** 2,
        "phi_x": lambda x, t: 2 * x,
        "phi_t": lambda x, t: 2 * t,
        "phi_xx": lambda x, t: 2.0 + 0 * x,
        "phi_xt": lambda x, t: 0.0 * x,
        "phi_tt": lambda x, t: 2.0 + 0 * x,
    }
    p = ws.graph_patch(xs, ts, fns)
    assert ws.minimal_surface_residual(p).max_abs > 1e-1
    assert ws.born_infeld_residual(p).max_abs > 1e-1


def test_wick_substitution_transforms_derivative_data():
    xs, ts = xt_mesh(2.0, 3.0, -0.3, 0.3, 9)
    p = ws.graph_patch(xs, ts, ws.catenoid_graph_fns())
    w = wick_substitute(p)
    assert np.array_equal(w.phi_t, -1j * p.phi_t)
    assert np.array_equal(w.phi_tt, -p.phi_tt)
    assert np.array_equal(w.phi_xx, p.phi_xx)


def test_t_reflection_preserves_born_infeld():
    xs, ts = xt_mesh(2.0, 3.0, -0.45, 0.45)
    p = ws.graph_patch(xs, ts, ws.wick_catenoid_graph_fns())
    before = ws.born_infeld_residual(p)
    after = ws.born_infeld_residual(ws.t_reflect(p))
    assert abs(before.max_abs - after.max_abs) < 1e-14


def test_patch_rejects_nonfinite_retained_data():
    xs, ts = xt_mesh(2.0, 3.0, -0.3, 0.3, 5)
    p = ws.graph_patch(xs, ts, ws.wick_catenoid_graph_fns())
    with pytest.raises(PDEError):
        ws.NonparametricPatch(x=p.x, t=p.t, phi=p.phi,
                              phi_x=np.full_like(p.phi_x, np.nan),
                              phi_t=p.phi_t, phi_xx=p.phi_xx,
                              phi_xt=p.phi_xt, phi_tt=p.phi_tt,
                              valid_mask=p.valid_mask)


def test_residual_report_relative_statistic():
    xs, ts = xt_mesh(2.0, 3.0, -0.45, 0.45, 15)
    p = ws.graph_patch(xs, ts, ws.wick_catenoid_graph_fns())
    rep = ws.born_infeld_residual(p)
    assert rep.max_rel is not None
    assert rep.max_rel <= rep.max_abs + 1e-30
    assert rep.max_abs >= rep.rms >= 0.0

def test_minimal_residual_second_order_rate():
    # the default stencils converge at O(h^2): halving h gains >= 3.5x
    errs = []
    for refine in (1, 2):
        g = ws.verification_grid("scherk", refine=refine)
        X = ws.generate(ws.we_data("scherk"), g)
        p = ws.chain_rule_partials(X, first_source="analytic", accuracy=2,
                                   second_source="fd")
        errs.append(ws.minimal_surface_residual(p).max_abs)
    assert errs[0] / errs[1] > 3.5
