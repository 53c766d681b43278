"""Bernstein-Bezier polynomials over the reference triangle.

The reference triangle is ``{(u, v): u, v >= 0, u + v <= 1}`` with
``w = 1 - u - v``. Its double area is 1, so the normalised inner product
``(1/Delta) * integral(p q dA)`` is just ``integral(p q du dv)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .combinatorics import binom, gamma_half_integer
from .exactnum import PiRational, as_rational, rational_to_str

FLOAT_SUM_TOL = 1e-12


class TriIndex(NamedTuple):
    i: int
    j: int
    k: int

    @property
    def degree(self) -> int:
        return self.i + self.j + self.k


@lru_cache(maxsize=None)
def tri_indices(n: int) -> tuple[TriIndex, ...]:
    """All indices with i+j+k = n, i descending then j descending."""
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    return tuple(
        TriIndex(i, j, n - i - j) for i in range(n, -1, -1) for j in range(n - i, -1, -1)
    )


@lru_cache(maxsize=None)
def _index_position(n: int) -> dict[TriIndex, int]:
    return {idx: pos for pos, idx in enumerate(tri_indices(n))}


def multinomial(n: int, i: int, j: int, k: int) -> int:
    return math.factorial(n) // (math.factorial(i) * math.factorial(j) * math.factorial(k))


def _is_exact(x: object) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class BaryPoint:
    """Barycentric coordinates of a point of the triangle.

    Exact (int/Fraction) coordinates must sum to exactly 1; float coordinates
    to within ``FLOAT_SUM_TOL``.
    """

    u: float | Fraction
    v: float | Fraction
    w: float | Fraction

    def __post_init__(self) -> None:
        coords = (self.u, self.v, self.w)
        if any(c < 0 for c in coords):
            raise ValueError(f"barycentric coordinates must be non-negative: {coords}")
        if self.is_exact:
            for name in ("u", "v", "w"):
                object.__setattr__(self, name, Fraction(getattr(self, name)))
            if self.u + self.v + self.w != 1:
                raise ValueError(f"barycentric coordinates must sum to 1: {coords}")
        elif abs(float(self.u) + float(self.v) + float(self.w) - 1.0) > FLOAT_SUM_TOL:
            raise ValueError(f"barycentric coordinates must sum to 1: {coords}")

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in (self.u, self.v, self.w))

    @classmethod
    def from_uv(cls, u: float | Fraction, v: float | Fraction) -> BaryPoint:
        return cls(u, v, 1 - u - v)

    def __iter__(self) -> Iterator[float | Fraction]:
        return iter((self.u, self.v, self.w))


def barycentric_from_cartesian(
    point: Sequence[float], vertices: Sequence[Sequence[float]]
) -> BaryPoint:
    """Barycentric coordinates of ``point`` w.r.t. a non-degenerate triangle."""
    (x1, y1), (x2, y2), (x3, y3) = vertices
    x, y = point
    det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)
    if det == 0:
        raise ValueError("degenerate triangle")
    v = ((x - x1) * (y3 - y1) - (x3 - x1) * (y - y1)) / det
    w = ((x2 - x1) * (y - y1) - (x - x1) * (y2 - y1)) / det
    return BaryPoint(1 - v - w, v, w)


@dataclass(frozen=True)
class BBPoly:
    """A polynomial in degree-n Bernstein-Bezier form.

    ``coeffs`` is dense and follows :func:`tri_indices` order.
    """

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        expected = (self.degree + 1) * (self.degree + 2) // 2
        if len(self.coeffs) != expected:
            raise ValueError(
                f"degree {self.degree} needs {expected} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))

    @classmethod
    def from_mapping(cls, degree: int, coeffs: Mapping[tuple[int, int, int], object]) -> BBPoly:
        """Build from a sparse ``{(i, j, k): value}`` mapping; missing entries are 0."""
        pos = _index_position(degree)
        dense = [Fraction(0)] * len(pos)
        for key, value in coeffs.items():
            idx = TriIndex(*key)
            if idx not in pos:
                raise ValueError(f"index {tuple(idx)} does not have degree {degree}")
            dense[pos[idx]] = as_rational(value)
        return cls(degree, tuple(dense))

    @classmethod
    def constant(cls, value: object = 1, degree: int = 0) -> BBPoly:
        c = as_rational(value)
        return cls(degree, (c,) * ((degree + 1) * (degree + 2) // 2))

    @classmethod
    def basis(cls, idx: tuple[int, int, int]) -> BBPoly:
        n = sum(idx)
        return cls.from_mapping(n, {tuple(idx): 1})

    @classmethod
    def zero(cls, degree: int = 0) -> BBPoly:
        return cls.constant(0, degree)

    @classmethod
    def from_monomials(
        cls, monomials: Mapping[tuple[int, int, int], object], degree: int | None = None
    ) -> BBPoly:
        """Convert ``{(a, b, c): coef}`` meaning sum coef u^a v^b w^c to BB form.

        Terms of lower total degree are homogenised with powers of u+v+w.
        """
        top = max((sum(k) for k, c in monomials.items() if c != 0), default=0)
        n = top if degree is None else degree
        if n < top:
            raise ValueError(f"monomials of degree {top} do not fit degree {n}")
        homog: dict[tuple[int, int, int], Fraction] = {}
        for (a, b, c), coef in monomials.items():
            coef = as_rational(coef)
            if coef == 0:
                continue
            d = n - (a + b + c)
            # (u+v+w)^d = sum over p+q+r=d of multinomial u^p v^q w^r
            for p, q, r in tri_indices(d):
                key = (a + p, b + q, c + r)
                homog[key] = homog.get(key, Fraction(0)) + coef * multinomial(d, p, q, r)
        return cls.from_mapping(
            n, {key: val / multinomial(n, *key) for key, val in homog.items()}
        )

    def __getitem__(self, idx: tuple[int, int, int]) -> Fraction:
        return self.coeffs[_index_position(self.degree)[TriIndex(*idx)]]

    def get(self, i: int, j: int, k: int) -> Fraction:
        """Coefficient at (i, j, k), zero for indices outside the net."""
        if min(i, j, k) < 0 or i + j + k != self.degree:
            return Fraction(0)
        return self[(i, j, k)]

    def items(self) -> Iterator[tuple[TriIndex, Fraction]]:
        return zip(tri_indices(self.degree), self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_monomials(self) -> dict[tuple[int, int, int], Fraction]:
        n = self.degree
        return {tuple(idx): c * multinomial(n, *idx) for idx, c in self.items() if c != 0}

    def elevate_to(self, degree: int) -> BBPoly:
        if degree < self.degree:
            raise ValueError(f"cannot lower degree {self.degree} to {degree}")
        p = self
        while p.degree < degree:
            p = degree_elevate(p)
        return p

    def __add__(self, other: BBPoly) -> BBPoly:
        n = max(self.degree, other.degree)
        a, b = self.elevate_to(n), other.elevate_to(n)
        return BBPoly(n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __neg__(self) -> BBPoly:
        return BBPoly(self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other: BBPoly) -> BBPoly:
        return self + (-other)

    def scale(self, factor: object) -> BBPoly:
        f = as_rational(factor)
        return BBPoly(self.degree, tuple(f * c for c in self.coeffs))

    def __mul__(self, other: BBPoly) -> BBPoly:
        return BBPoly.from_monomials(
            multiply_monomials(self.to_monomials(), other.to_monomials()),
            self.degree + other.degree,
        )

    def __call__(self, pt: BaryPoint):
        return eval_bbpoly(self, pt)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [
                {"i": idx.i, "j": idx.j, "k": idx.k, "value": rational_to_str(c)}
                for idx, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> BBPoly:
        n = int(obj["degree"])
        entries = {(e["i"], e["j"], e["k"]): Fraction(e["value"]) for e in obj["coeffs"]}
        if len(entries) != len(obj["coeffs"]) or set(entries) != set(tri_indices(n)):
            raise ValueError("BBPoly JSON must list every index of the degree exactly once")
        return cls.from_mapping(n, entries)


def multiply_monomials(
    p: Mapping[tuple[int, int, int], Fraction], q: Mapping[tuple[int, int, int], Fraction]
) -> dict[tuple[int, int, int], Fraction]:
    out: dict[tuple[int, int, int], Fraction] = {}
    for (a1, b1, c1), x in p.items():
        for (a2, b2, c2), y in q.items():
            key = (a1 + a2, b1 + b2, c1 + c2)
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v != 0}


def bernstein_eval_uni(i: int, n: int, x):
    """B_i^n(x) = C(n, i) x^i (1-x)^(n-i)."""
    if not 0 <= i <= n:
        raise ValueError(f"Bernstein index {i} outside [0, {n}]")
    return binom(n, i) * x**i * (1 - x) ** (n - i)


def bernstein_eval_tri(idx: tuple[int, int, int], pt: BaryPoint):
    i, j, k = idx
    if min(idx) < 0:
        raise ValueError(f"negative index {idx}")
    return multinomial(i + j + k, i, j, k) * pt.u**i * pt.v**j * pt.w**k


def de_casteljau(coeffs: Sequence, degree: int, u, v, w):
    """Triangular de Casteljau on scalars or equally shaped numpy arrays."""
    layer = {(idx.i, idx.j): c for idx, c in zip(tri_indices(degree), coeffs)}
    for m in range(degree - 1, -1, -1):
        layer = {
            (i, j): u * layer[(i + 1, j)] + v * layer[(i, j + 1)] + w * layer[(i, j)]
            for i in range(m, -1, -1)
            for j in range(m - i, -1, -1)
        }
    return layer[(0, 0)]


def eval_bbpoly(p: BBPoly, pt: BaryPoint):
    """Value of ``p`` at ``pt``: exact for rational points, de Casteljau otherwise."""
    if pt.is_exact:
        u, v, w = pt.u, pt.v, pt.w
        n = p.degree
        return sum(
            (c * multinomial(n, *idx) * u**idx.i * v**idx.j * w**idx.k for idx, c in p.items() if c),
            Fraction(0),
        )
    return float(de_casteljau([float(c) for c in p.coeffs], p.degree, float(pt.u), float(pt.v), float(pt.w)))


def eval_bbpoly_many(p: BBPoly, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Vectorised float evaluation at arrays of barycentric coordinates."""
    u, v, w = (np.asarray(a, dtype=float) for a in (u, v, w))
    return np.broadcast_to(de_casteljau([float(c) for c in p.coeffs], p.degree, u, v, w), u.shape).copy()


def degree_elevate(p: BBPoly) -> BBPoly:
    """Rewrite ``p`` exactly in the degree n+1 Bernstein basis."""
    n = p.degree
    m = n + 1
    new = [
        (idx.i * p.get(idx.i - 1, idx.j, idx.k)
         + idx.j * p.get(idx.i, idx.j - 1, idx.k)
         + idx.k * p.get(idx.i, idx.j, idx.k - 1)) / m
        for idx in tri_indices(m)
    ]
    return BBPoly(m, tuple(new))


def bernstein_integral(n: int) -> Fraction:
    """Share of the triangle's area carried by each B_zeta^n: 1 / C(n+2, 2).

    Every degree-n basis polynomial integrates to area(T) / C(n+2, 2); on the
    reference triangle (area 1/2) the integral itself is half this value.
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    return Fraction(1, binom(n + 2, 2))


_HALF = Fraction(1, 2)


def _beta(x: Fraction, y: Fraction):
    return gamma_half_integer(x) * gamma_half_integer(y) / gamma_half_integer(x + y)


@lru_cache(maxsize=None)
def integrate_monomial(
    a: int, b: int, c: int, alpha: Fraction = Fraction(0), beta: Fraction = Fraction(0),
    gamma_exp: int = 0,
) -> PiRational:
    """Exact ``integral u^(a+alpha) v^(b+beta) (1-w)^gamma_exp w^c du dv`` over T.

    With u = t(1-w), v = (1-t)(1-w) this splits into
    ``B(a+alpha+1, b+beta+1) * B(c+1, a+b+alpha+beta+gamma_exp+2)``.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha not in (0, -_HALF) or beta not in (0, -_HALF):
        raise ValueError(f"unsupported exponent shifts alpha={alpha}, beta={beta}")
    if Fraction(gamma_exp).denominator != 1 or gamma_exp < 0:
        raise ValueError(f"gamma_exp must be a non-negative integer, got {gamma_exp}")
    if min(a, b, c) < 0:
        raise ValueError(f"monomial exponents must be non-negative: {(a, b, c)}")
    x, y = a + alpha + 1, b + beta + 1
    z = a + b + alpha + beta + int(gamma_exp) + 2
    value = _beta(x, y) * _beta(Fraction(c + 1), z)
    if value.sqrt_pi_power == 0:
        return PiRational(value.coeff, 0)
    if value.sqrt_pi_power == 2:
        return PiRational(0, value.coeff)
    raise ArithmeticError(f"integral carries pi**({value.sqrt_pi_power}/2)")


def inner_product_unweighted(p: BBPoly, q: BBPoly) -> Fraction:
    """``(1/Delta) * integral(p q dA)``, exact."""
    prod = multiply_monomials(p.to_monomials(), q.to_monomials())
    return sum((coef * integrate_monomial(*key).rat for key, coef in prod.items()), Fraction(0))


def bb_dot(p: BBPoly, q: BBPoly) -> Fraction:
    if p.degree != q.degree:
        raise ValueError("coefficient dot product needs equal degrees")
    return sum((x * y for x, y in zip(p.coeffs, q.coeffs)), Fraction(0))


def bb_inner_product_closed(p: BBPoly, q: BBPoly, m: int) -> Fraction:
    """Closed-form ``<p, q>`` for p orthogonal to all polynomials of degree < m.

    Both operands are lifted to a common degree n >= m first.
    """
    n = max(p.degree, q.degree, m)
    p, q = p.elevate_to(n), q.elevate_to(n)
    factor = Fraction(
        math.factorial(n) ** 2, math.factorial(n + m + 2) * math.factorial(n - m)
    )
    return factor * bb_dot(p, q)


def lemma13_orthogonality_test(p: BBPoly) -> bool:
    """Finite certificate that ``p`` (degree n) is unweighted-orthogonal to Pi_{n-1}.

    For every degree n-1 basis polynomial, elevate it to degree n and check
    that its coefficient vector is orthogonal to that of ``p``.
    """
    n = p.degree
    if n == 0:
        return True
    return all(bb_dot(p, degree_elevate(BBPoly.basis(eta))) == 0 for eta in tri_indices(n - 1))


def lattice_points(divisions: int) -> list[BaryPoint]:
    """Rational lattice (a/d, b/d, c/d) with a+b+c = d; d+1 points per edge."""
    if divisions < 1:
        raise ValueError("divisions must be positive")
    d = divisions
    return [BaryPoint(Fraction(i, d), Fraction(j, d), Fraction(k, d)) for i, j, k in tri_indices(d)]

