"""Minimal surfaces from Weierstrass-Enneper data, their harmonic conjugates,
and the one-parameter family of Born-Infeld solitons obtained by Wick
rotation, with numerical verification of the family's invariants."""

from .catalog import (BranchRegionError, CATALOG_IDS, CatalogError,
                      SingularEvaluation, WEFunction, catalog_function,
                      conjugate, default_base, default_flip_t, eval_R,
                      singularities, singularity_points, verification_grid)
from .family import (FamilyError, SolitonFamily, SolitonRelationsReport,
                     family_at, family_fg, theta_derivative,
                     verify_soliton_relations, wick_rotate)
from .generate import (GenerateError, RigidAlignment, WEData, align_rigid,
                       conjugacy_violation, gamma_chart_sector, generate,
                       generate_conjugate_pair, nearest_node, we_data)
from .geometry import (FundamentalForm, GeometryError, ThetaInvarianceReport,
                       action, change_of_variables_action, fundamental_form,
                       theta_sweep_invariance)
from .grids import (GridError, ParamGrid, SurfaceGrid, array_derivative,
                    central_diff, default_annulus, default_rectangle,
                    laplacian, surface_from_components, surface_jacobian)
from .hodograph import (FGPair, HodographError, catenoid_closed, catenoid_fg,
                        enneper_conjugate_fg, enneper_fg, helicoid_closed,
                        helicoid_fg, hodograph_uv, r_from_uv, surface_from_fg,
                        umbilic_diagnostic)
from .io_export import (ExportError, export_mesh, write_report_csv,
                        write_surface_csv, write_surface_table)
from .pde import (LorentzBoost, NonparametricPatch, PDEError, boost,
                  boost_graph_fns, born_infeld_residual, catenoid_graph_fns,
                  chain_rule_partials, graph_patch, helicoid_graph_fns,
                  minimal_surface_residual, t_reflect, wick_catenoid_graph_fns,
                  wick_equivalence_check, wick_substitute)
from .quadrature import (PathNearSingularity, PathSpec, QuadratureError,
                         antiderivative_on_grid, integrate_path,
                         integrate_path_with_error)
from .reports import ResidualReport, residual_report

__version__ = "0.1.0"
