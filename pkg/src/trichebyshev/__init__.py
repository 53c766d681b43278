"""Bivariate Chebyshev-I weighted orthogonal polynomials on the triangle."""

from .approx import ProjectionResult, evaluate_projection, project
from .bernstein import BaryPoint, BBPoly, TriIndex, degree_elevate, eval_bbpoly
from .chebyshev import M_coeffs, cheb_eval
from .exactnum import PiRational
from .simplex_basis import (
    basis_poly,
    coeffs_closed_form,
    coeffs_recursive,
    eval_factored,
    q_poly,
)
from .weighted_ip import gram_matrix, weighted_inner_exact, weighted_inner_quadrature

__all__ = [
    "BBPoly",
    "BaryPoint",
    "M_coeffs",
    "PiRational",
    "ProjectionResult",
    "TriIndex",
    "basis_poly",
    "cheb_eval",
    "coeffs_closed_form",
    "coeffs_recursive",
    "degree_elevate",
    "eval_bbpoly",
    "eval_factored",
    "evaluate_projection",
    "gram_matrix",
    "project",
    "q_poly",
    "weighted_inner_exact",
    "weighted_inner_quadrature",
]
