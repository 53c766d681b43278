"""The triangular Chebyshev-I system T_{n,r}(u, v, w), 0 <= r <= n.

T_{n,r} = T_r(u / (1 - w)) * (1 - w)^r * Q_{n,r}(w). Its Bernstein-Bezier
coefficients come either from the closed form (:func:`coeffs_closed_form`,
the canonical definition) or from the layer-by-layer recursion
(:func:`coeffs_recursive`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

from .bernstein import BaryPoint, BBPoly, TriIndex, tri_indices
from .chebyshev import M_coeffs, cheb_eval
from .combinatorics import binom

Provenance = Literal["closed_form", "recursion"]


def _check_nr(n: int, r: int) -> None:
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")


@dataclass(frozen=True)
class QPoly:
    """Q_{n,r}(w) in the degree n-r Bernstein basis in w."""

    n: int
    r: int
    bern_coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.n - self.r

    def __call__(self, w):
        d = self.degree
        return sum(
            (c * binom(d, j) * w**j * (1 - w) ** (d - j) for j, c in enumerate(self.bern_coeffs)),
            0 * w,
        )

    def power_coeffs(self) -> list[Fraction]:
        """Coefficients of 1, w, w^2, ... (exact)."""
        d = self.degree
        out = [Fraction(0)] * (d + 1)
        for j, c in enumerate(self.bern_coeffs):
            # binom(d,j) w^j (1-w)^(d-j) = sum_l binom(d,j) binom(d-j,l) (-1)^l w^(j+l)
            for l in range(d - j + 1):
                out[j + l] += c * binom(d, j) * binom(d - j, l) * (-1) ** l
        return out


@lru_cache(maxsize=None)
def q_poly(n: int, r: int) -> QPoly:
    _check_nr(n, r)
    return QPoly(n, r, tuple((-1) ** j * binom(n + r + 1, j) for j in range(n - r + 1)))


def c_coeff(i: int, r: int) -> Fraction:
    """Weights of the degree-r Bernstein expansion used in the original definition."""
    if not 0 <= i <= r:
        raise ValueError(f"need 0 <= i <= r, got i={i}, r={r}")
    return (-1) ** (r - i) * Fraction(binom(2 * r, r) * binom(2 * r, 2 * i), 2 ** (2 * r) * binom(r, i))


def scale_relation(r: int) -> Fraction:
    """lambda_r with c(i) = lambda_r * M_{i,r}^r for every i (checked)."""
    if r < 0:
        raise ValueError(f"r must be non-negative, got {r}")
    lam = Fraction(binom(2 * r, r), 2 ** (2 * r))
    m = M_coeffs(r, r).values
    if any(c_coeff(i, r) != lam * m[i] for i in range(r + 1)):
        raise ArithmeticError(f"c(i) is not a multiple of M for r={r}")
    return lam


@dataclass(frozen=True)
class SimplexOrthoPoly:
    n: int
    r: int
    bb: BBPoly
    provenance: Provenance

    def __call__(self, pt: BaryPoint):
        return self.bb(pt)

    def coefficient_rows(self) -> list[tuple[int, int, int, Fraction]]:
        return [(idx.i, idx.j, idx.k, c) for idx, c in self.bb.items()]


@lru_cache(maxsize=None)
def coeffs_closed_form(n: int, r: int) -> SimplexOrthoPoly:
    """Closed-form Bernstein-Bezier coefficients a_{ijk}^{n,r}."""
    _check_nr(n, r)
    coeffs = {}
    for idx in tri_indices(n):
        i, j, k = idx
        if k > n - r:
            coeffs[idx] = Fraction(0)
            continue
        scale = Fraction((-1) ** k * binom(n + r + 1, k) * binom(n - r, k), binom(n, k))
        coeffs[idx] = scale * M_coeffs(n - k, r).values[i]
    return SimplexOrthoPoly(n, r, BBPoly.from_mapping(n, coeffs), "closed_form")


def coeffs_recursive(n: int, r: int) -> SimplexOrthoPoly:
    """Coefficients generated from the w = 0 edge by the published recursion.

    Seed a_{i,n-i,0} = M_{i,r}^n, then for each layer k solve
    ``(i+1) a_{i+1,j,k} + (j+1) a_{i,j+1,k} + (k+1) a_{i,j,k+1} = 0``
    for the k+1 entry.
    """
    _check_nr(n, r)
    a: dict[TriIndex, Fraction] = {}
    for i, m in enumerate(M_coeffs(n, r).values):
        a[TriIndex(i, n - i, 0)] = m
    for k in range(n):
        for i in range(n - k):
            j = n - 1 - k - i
            a[TriIndex(i, j, k + 1)] = -(
                (i + 1) * a[TriIndex(i + 1, j, k)] + (j + 1) * a[TriIndex(i, j + 1, k)]
            ) / (k + 1)
    return SimplexOrthoPoly(n, r, BBPoly.from_mapping(n, a), "recursion")


def basis_poly(n: int, r: int) -> BBPoly:
    """Canonical BB form of T_{n,r}."""
    return coeffs_closed_form(n, r).bb


def basis_indices(n_max: int) -> list[tuple[int, int]]:
    """(m, r) for every basis member of degree <= n_max, degree-ordered."""
    return [(m, r) for m in range(n_max + 1) for r in range(m + 1)]


def eval_factored(n: int, r: int, pt: BaryPoint):
    """T_r(u/(1-w)) (1-w)^r Q_{n,r}(w), with the removable w = 1 case by limit."""
    _check_nr(n, r)
    u, w = pt.u, pt.w
    one_minus_w = 1 - w
    q = q_poly(n, r)
    if one_minus_w == 0:
        return q(w) if r == 0 else 0 * w
    return cheb_eval(r, u / one_minus_w) * one_minus_w**r * q(w)


def g_test_function(s: int, m: int, n: int, pt: BaryPoint):
    """T_s(u/(1-w)) (1-w)^m w^(n-m-1), for 0 <= s <= m <= n-1."""
    if not 0 <= s <= m <= n - 1:
        raise ValueError(f"need 0 <= s <= m <= n-1, got s={s}, m={m}, n={n}")
    u, w = pt.u, pt.w
    one_minus_w = 1 - w
    if one_minus_w == 0:
        head = 1 + 0 * w if m == 0 else 0 * w
    else:
        head = cheb_eval(s, u / one_minus_w) * one_minus_w**m
    return head * w ** (n - m - 1)


@lru_cache(maxsize=None)
def g_test_bb(s: int, m: int, n: int) -> BBPoly:
    """Exact BB form (degree n-1) of the test function g_{s,m}."""
    if not 0 <= s <= m <= n - 1:
        raise ValueError(f"need 0 <= s <= m <= n-1, got s={s}, m={m}, n={n}")
    # T_s(t) (1-w)^m = sum_i M_{i,s}^m C(m,i) u^i v^(m-i); then multiply by w^(n-m-1)
    c = n - m - 1
    mono = {
        (i, m - i, c): val * binom(m, i) for i, val in enumerate(M_coeffs(m, s).values) if val
    }
    return BBPoly.from_monomials(mono, n - 1)
