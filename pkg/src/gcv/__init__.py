"""Exact critical values, infima and bifurcation supersets of real polynomials."""

__version__ = "0.1.0"

from .acv import MonteCarloFailure, asymptotic_critical_values
from .bounds import attained_degree_bound, attained_value_log_bound
from .constrained import constrained_infimum_toy
from .elimination import DegenerateSystemError, resultant_gcp
from .newton import bifurcation_superset_newton, make_poly_tuple
from .optimize import infimum
from .polyring import MPoly, PolyError, UPoly, parse_poly
from .realroots import AlgebraicNumber, isolate_real_roots

__all__ = [
    "AlgebraicNumber", "DegenerateSystemError", "MPoly", "MonteCarloFailure", "PolyError", "UPoly",
    "asymptotic_critical_values", "attained_degree_bound", "attained_value_log_bound",
    "bifurcation_superset_newton", "constrained_infimum_toy", "infimum", "isolate_real_roots",
    "make_poly_tuple", "parse_poly", "resultant_gcp",
]
