"""Maslov-type indices of symplectic paths and the stability of the
Lagrangian circular orbit of the planar three-body problem."""
from .engine import (CallablePath, Crossing, DegenerateCrossing, DiamondPath, IndexReport,
                     IteratedPath, NonConvergence, PathBase, SymplecticPath, clm_index,
                     crossing_form, crossing_instants, fundamental_solution, nullity,
                     omega_index)
from .grid import GridSpec, run_grid
from .iteration import (NormalForm, SplittingPair, bott_long_sum, iterate_path,
                        krein_closed_index, omega_index_via_splitting, splitting_numbers,
                        splitting_table)
from .linalg import (diamond, eig, is_symplectic, krein_signature, mat_exp, n1, rotation,
                     standard_j)
from .model import (Masses, ModelParams, StabilityClass, central_configuration_check,
                    classify_stability, closed_morse, degenerate_curve, essential_path,
                    full_path, iterate_closed_e2, jump_curve, kepler_closed_solution,
                    kepler_path, meyer_schmidt_check, omega_table_e2, omega_table_e3,
                    stability_curve)
from .render import render_svg
from .sp2 import CylCoords, d_omega, from_cylindrical, stratum, to_cylindrical, trace_path
from .verify import VerifyOutcome, run_suite

__version__ = "0.1.0"
