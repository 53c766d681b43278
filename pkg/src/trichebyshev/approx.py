"""Weighted least-squares projection onto span{T_{m,r}: r <= m <= n}."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bernstein import BaryPoint, eval_bbpoly
from .simplex_basis import basis_indices, basis_poly
from .weighted_ip import Evaluable, gram_matrix, sample, triangle_rule


@dataclass(frozen=True)
class ProjectionResult:
    coefficients: dict[tuple[int, int], float]
    degree: int
    gamma: float
    residual_norm: float

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "gamma": self.gamma,
            "coefficients": [
                {"m": m, "r": r, "value": value} for (m, r), value in self.coefficients.items()
            ],
            "residual_norm": self.residual_norm,
        }

    @classmethod
    def from_json(cls, obj: dict) -> ProjectionResult:
        coeffs = {(int(e["m"]), int(e["r"])): float(e["value"]) for e in obj["coefficients"]}
        return cls(coeffs, int(obj["degree"]), float(obj["gamma"]), float(obj["residual_norm"]))


def _is_integer(gamma: float) -> bool:
    return float(gamma).is_integer()


def project(f: Evaluable, n: int, gamma: float = 1, nodes: int = 20) -> ProjectionResult:
    """Project ``f`` onto the degree-n basis in the weighted L2 sense.

    At gamma = 1 the basis is fully orthogonal and every coefficient is
    ``<f, T> / <T, T>``. For gamma > 1 the cross-degree inner products do not
    vanish, so the normal equations are solved with the full Gram matrix.
    Gram entries come from the exact oracle whenever gamma is an integer.
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    if not gamma >= 1:
        raise ValueError(f"projection needs gamma >= 1, got {gamma}")
    labels = basis_indices(n)
    rule = triangle_rule(float(gamma), nodes)
    fvals = sample(f, rule)
    basis_vals = np.stack([sample(basis_poly(*lab), rule) for lab in labels])
    rhs = basis_vals @ (rule.weights * fvals)

    if _is_integer(gamma):
        gram = gram_matrix(n, Fraction(int(gamma)), "exact").to_array()
    else:
        gram = gram_matrix(n, float(gamma), "quadrature", nodes).to_array()

    if gamma == 1:
        coeffs = rhs / np.diag(gram)
    else:
        coeffs = np.linalg.solve(gram, rhs)

    residual = fvals - coeffs @ basis_vals
    residual_norm = math.sqrt(max(rule.integrate(residual * residual), 0.0))
    return ProjectionResult(
        {lab: float(c) for lab, c in zip(labels, coeffs)}, n, float(gamma), residual_norm
    )


def evaluate_projection(pr: ProjectionResult, pt: BaryPoint) -> float:
    if pt.is_exact:
        pt = BaryPoint(float(pt.u), float(pt.v), float(pt.w))
    return math.fsum(c * eval_bbpoly(basis_poly(m, r), pt) for (m, r), c in pr.coefficients.items())
