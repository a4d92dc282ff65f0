"""Trisymplectic area machinery on flat hyperkahler tori."""

from .cycle_geom import (
    LinearCycle,
    ParametrizedCycle,
    calibrate_normalization,
    is_complex_analytic,
    is_trianalytic_pointwise,
    mixed_integrals,
    pfaffian,
    riemannian_area,
    symplectic_area,
    wirtinger_gap,
)
from .genericity import Tolerances, classify_structure, nongeneric_set, trianalyticity_verdict
from .hk_core import induced_structure, kahler_form, rotate_frame, standard_frame, verify_frame
from .sphere_opt import critical_points, global_maxima
from .trisym_poly import TrisymPolynomial, compute_polynomial, evaluate, is_constant, sphere_stats

__version__ = "0.1.0"
