"""Inner products under the weight u^(-1/2) v^(-1/2) (1-w)^gamma.

Two independent routes:

* :func:`weighted_inner_exact` expands the product into monomials and
  integrates each one in closed form (integer gamma only). Results are exact
  rational multiples of pi.
* :func:`weighted_inner_quadrature` uses the substitution u = t(1-w),
  v = (1-t)(1-w), under which the weight factors into
  t^(-1/2)(1-t)^(-1/2) (Chebyshev-Gauss in t) and (1-w)^gamma (Gauss-Jacobi
  in w).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

import numpy as np
from scipy.special import roots_jacobi

from .bernstein import BaryPoint, BBPoly, eval_bbpoly_many, integrate_monomial, multiply_monomials
from .exactnum import PiRational, rational_to_str
from .simplex_basis import SimplexOrthoPoly, basis_indices, basis_poly, g_test_bb, q_poly

HALF = Fraction(1, 2)
QUAD_ZERO_TOL = 1e-10

Evaluable = Union[BBPoly, SimplexOrthoPoly, Callable[[BaryPoint], float]]


def _exact_gamma(gamma) -> int:
    if isinstance(gamma, float):
        if not gamma.is_integer():
            raise ValueError(
                f"exact oracle needs an integer gamma >= 0, got {gamma}; use the quadrature path"
            )
        gamma = int(gamma)
    g = Fraction(gamma)
    if g.denominator != 1 or g < 0:
        raise ValueError(
            f"exact oracle needs an integer gamma >= 0, got {gamma}; use the quadrature path"
        )
    return int(g)


def _as_bb(p: BBPoly | SimplexOrthoPoly) -> BBPoly:
    return p.bb if isinstance(p, SimplexOrthoPoly) else p


def weighted_inner_exact(
    p: BBPoly | SimplexOrthoPoly, q: BBPoly | SimplexOrthoPoly, gamma: int
) -> PiRational:
    g = _exact_gamma(gamma)
    prod = multiply_monomials(_as_bb(p).to_monomials(), _as_bb(q).to_monomials())
    total = PiRational()
    for (a, b, c), coef in prod.items():
        total = total + integrate_monomial(a, b, c, -HALF, -HALF, g) * coef
    return total


@dataclass(frozen=True)
class TriangleRule:
    """Tensor rule on T: points (u, v, w) and weights, for a fixed gamma."""

    gamma: float
    nodes: int
    u: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


def chebyshev_gauss_01(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1] for the weight t^(-1/2) (1-t)^(-1/2)."""
    idx = np.arange(1, nodes + 1)
    t = (1.0 + np.cos((2 * idx - 1) * np.pi / (2 * nodes))) / 2.0
    return t, np.full(nodes, np.pi / nodes)


def gauss_jacobi_01(nodes: int, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1] for the weight (1-w)^gamma."""
    x, wts = roots_jacobi(nodes, gamma, 0.0)
    # w = (1+x)/2, so (1-w)^gamma dw = 2^(-gamma-1) (1-x)^gamma dx
    return (1.0 + x) / 2.0, wts * 2.0 ** (-gamma - 1.0)


@lru_cache(maxsize=64)
def triangle_rule(gamma: float, nodes: int) -> TriangleRule:
    """Rule exact for integrands polynomial of degree <= 2*nodes-1 in t and in w."""
    gamma = float(gamma)
    if not gamma > -1:
        raise ValueError(f"weight (1-w)^gamma needs gamma > -1, got {gamma}")
    if nodes < 1:
        raise ValueError(f"nodes must be >= 1, got {nodes}")
    t, wt = chebyshev_gauss_01(nodes)
    s, ws = gauss_jacobi_01(nodes, gamma)
    tt, ss = np.meshgrid(t, s, indexing="ij")
    weights = np.outer(wt, ws).ravel()
    tt, ss = tt.ravel(), ss.ravel()
    u = tt * (1.0 - ss)
    v = (1.0 - tt) * (1.0 - ss)
    return TriangleRule(gamma, nodes, u, v, ss, weights)


def sample(f: Evaluable, rule: TriangleRule) -> np.ndarray:
    """Values of ``f`` at the rule's points."""
    if isinstance(f, (BBPoly, SimplexOrthoPoly)):
        return eval_bbpoly_many(_as_bb(f), rule.u, rule.v, rule.w)
    return np.array(
        [float(f(BaryPoint(float(a), float(b), float(c)))) for a, b, c in zip(rule.u, rule.v, rule.w)]
    )


def weighted_inner_quadrature(p: Evaluable, q: Evaluable, gamma: float, nodes: int) -> float:
    rule = triangle_rule(float(gamma), nodes)
    return rule.integrate(sample(p, rule) * sample(q, rule))


@dataclass(frozen=True)
class GramMatrix:
    """Pairwise inner products of {T_{m,r}: r <= m <= max_degree}.

    ``entries`` hold PiRational values in exact mode and floats in quadrature mode.
    """

    max_degree: int
    gamma: Fraction | float
    mode: str
    labels: tuple[tuple[int, int], ...]
    entries: dict

    def __getitem__(self, key):
        a, b = key
        return self.entries[(a, b)]

    def _scaled(self, a, b) -> float:
        na = math.sqrt(self.entries[(a, a)])
        nb = math.sqrt(self.entries[(b, b)])
        return self.entries[(a, b)] / (na * nb)

    def off_diagonal_nonzero(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        """Upper-triangle pairs whose inner product is not zero.

        Exact mode: exact zero test. Quadrature mode: |<a,b>| / (|a| |b|) <= 1e-10.
        """
        out = []
        for x, a in enumerate(self.labels):
            for b in self.labels[x + 1:]:
                if self.mode == "exact":
                    nonzero = not self.entries[(a, b)].is_zero()
                else:
                    nonzero = abs(self._scaled(a, b)) > QUAD_ZERO_TOL
                if nonzero:
                    out.append((a, b))
        return out

    def is_diagonal(self) -> bool:
        return not self.off_diagonal_nonzero()

    def is_symmetric(self) -> bool:
        return all(self.entries[(a, b)] == self.entries[(b, a)] for a in self.labels for b in self.labels)

    def to_array(self) -> np.ndarray:
        return np.array([[float(self.entries[(a, b)]) for b in self.labels] for a in self.labels])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["m", "r", "m2", "s", "rat_part", "pi_part", "float_value"])
        for a in self.labels:
            for b in self.labels:
                val = self.entries[(a, b)]
                if self.mode == "exact":
                    row = [rational_to_str(val.rat), rational_to_str(val.pi_coeff), repr(float(val))]
                else:
                    row = ["", "", repr(float(val))]
                writer.writerow([a[0], a[1], b[0], b[1], *row])
        return buf.getvalue()

    def to_json(self) -> dict:
        rows = []
        for a in self.labels:
            for b in self.labels:
                val = self.entries[(a, b)]
                row = {"m": a[0], "r": a[1], "m2": b[0], "s": b[1], "float_value": float(val)}
                if self.mode == "exact":
                    row.update(val.to_json())
                rows.append(row)
        gamma = rational_to_str(self.gamma) if self.mode == "exact" else float(self.gamma)
        return {"max_degree": self.max_degree, "gamma": gamma, "mode": self.mode, "entries": rows}


def gram_matrix(n: int, gamma, mode: str = "exact", nodes: int | None = None) -> GramMatrix:
    """Gram matrix of the basis up to degree ``n``.

    Quadrature mode defaults to ``n + 2`` nodes, enough for every product
    of two degree-n members.
    """
    labels = tuple(basis_indices(n))
    polys = {lab: basis_poly(*lab) for lab in labels}
    entries: dict = {}
    if mode == "exact":
        g = _exact_gamma(gamma)
        for x, a in enumerate(labels):
            for b in labels[x:]:
                val = weighted_inner_exact(polys[a], polys[b], g)
                entries[(a, b)] = entries[(b, a)] = val
        gamma_out: Fraction | float = Fraction(g)
    elif mode == "quadrature":
        rule = triangle_rule(float(gamma), nodes if nodes is not None else n + 2)
        samples = {lab: sample(p, rule) for lab, p in polys.items()}
        for x, a in enumerate(labels):
            for b in labels[x:]:
                val = rule.integrate(samples[a] * samples[b])
                entries[(a, b)] = entries[(b, a)] = val
        gamma_out = float(gamma)
    else:
        raise ValueError(f"mode must be 'exact' or 'quadrature', got {mode!r}")
    return GramMatrix(n, gamma_out, mode, labels, entries)


def lower_degree_failures(n: int, r: int, gamma: int) -> list[tuple[int, int, PiRational]]:
    """(s, m, value) for every test function g_{s,m} not orthogonal to T_{n,r}."""
    p = basis_poly(n, r)
    out = []
    for m in range(n):
        for s in range(m + 1):
            val = weighted_inner_exact(p, g_test_bb(s, m, n), gamma)
            if not val.is_zero():
                out.append((s, m, val))
    return out


def verify_thm21(n: int, r: int, gamma: int) -> bool:
    """Exact check that T_{n,r} is W-orthogonal to every polynomial of degree < n."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    return not lower_degree_failures(n, r, gamma)


def verify_same_degree(n: int, gamma: int) -> bool:
    """Exact check that same-degree members are pairwise W-orthogonal."""
    polys = [basis_poly(n, r) for r in range(n + 1)]
    return all(
        weighted_inner_exact(polys[r], polys[s], gamma).is_zero()
        for r in range(n + 1)
        for s in range(r + 1, n + 1)
    )


def q_moment(n: int, r: int, i: int) -> Fraction:
    """Exact integral of Q_{n,r}(w) w^i (1-w)^(2r+1) over [0, 1]."""
    # integral w^a (1-w)^b = a! b! / (a+b+1)!
    b = 2 * r + 1
    return sum(
        (
            c * Fraction(math.factorial(l + i) * math.factorial(b), math.factorial(l + i + b + 1))
            for l, c in enumerate(q_poly(n, r).power_coeffs())
        ),
        Fraction(0),
    )


def verify_lemma21(n: int, r: int) -> bool:
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    return all(q_moment(n, r, i) == 0 for i in range(n - r))
