"""Shifted Chebyshev polynomials of the first kind on [0, 1] in Bernstein form.

``T_r`` here always means the classical polynomial composed with
``x -> 2x - 1``, so ``T_r(1) = 1``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinatorics import binom, double_factorial
from .exactnum import rational_to_str


def cheb_eval(r: int, x):
    """T_r(2x - 1) by the three-term recurrence.

    Works for ints, Fractions (exactly), floats and numpy arrays.
    """
    if r < 0:
        raise ValueError(f"degree must be non-negative, got {r}")
    s = 2 * x - 1
    prev, cur = 1 + 0 * s, s
    if r == 0:
        return prev
    for _ in range(r - 1):
        prev, cur = cur, 2 * s * cur - prev
    return cur


@dataclass(frozen=True)
class ChebBernCoeffs:
    """Degree-n Bernstein coefficients M_{0,r}^n .. M_{n,r}^n of T_r."""

    r: int
    n: int
    values: tuple[Fraction, ...]

    def __call__(self, x):
        return sum(
            (m * binom(self.n, i) * x**i * (1 - x) ** (self.n - i) for i, m in enumerate(self.values)),
            0 * x,
        )


@lru_cache(maxsize=None)
def _m_values(n: int, r: int) -> tuple[Fraction, ...]:
    values = []
    for i in range(n + 1):
        # binom() vanishes outside range, so the sum needs no max/min limits
        total = sum((-1) ** (r - k) * binom(n - r, i - k) * binom(2 * r, 2 * k) for k in range(r + 1))
        values.append(Fraction(total, binom(n, i)))
    return tuple(values)


def M_coeffs(n: int, r: int) -> ChebBernCoeffs:
    """Bernstein coefficients of T_r in the degree-n basis, n >= r."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    return ChebBernCoeffs(r, n, _m_values(n, r))


def elevate_univariate(values: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """Degree elevation of univariate Bernstein coefficients."""
    n = len(values) - 1
    m = n + 1
    return tuple(
        Fraction(i, m) * (values[i - 1] if i > 0 else 0)
        + Fraction(m - i, m) * (values[i] if i <= n else 0)
        for i in range(m + 1)
    )


def cheb_bern_literal(r: int) -> tuple[Fraction, ...]:
    """Degree-r Bernstein coefficients from the published closed form, taken verbatim.

    The published prefactor does not give T_r(1) = 1; see :func:`cheb_bern_deg_r`.
    """
    if r < 0:
        raise ValueError(f"degree must be non-negative, got {r}")
    prefactor = Fraction(
        math.factorial(r) * double_factorial(2 * r - 1) * binom(2 * r, r) ** 2,
        2 ** (2 * r) * double_factorial(2 * r),
    )
    return tuple(
        prefactor
        * (-1) ** (r - i)
        * Fraction(math.factorial(i) * math.factorial(r - i), math.factorial(2 * i) * math.factorial(2 * r - 2 * i))
        for i in range(r + 1)
    )


def cheb_bern_deg_r(r: int) -> tuple[tuple[Fraction, ...], Fraction]:
    """Literal closed-form coefficients and the scalar sigma_r relating them to M.

    Returns ``(coeffs, sigma)`` with ``coeffs == sigma * M_coeffs(r, r).values``.
    Raises if the two vectors are not proportional.
    """
    literal = cheb_bern_literal(r)
    reference = M_coeffs(r, r).values
    # M_{r,r}^r = 1 for every r, so the last entry fixes the scale
    sigma = literal[-1] / reference[-1]
    if any(a != sigma * b for a, b in zip(literal, reference)):
        raise ArithmeticError(f"closed form is not a multiple of M for r={r}")
    return literal, sigma


def m_table_rows(n_max: int) -> list[tuple[int, int, int, Fraction]]:
    """Rows (n, r, i, M_{i,r}^n) for all 0 <= r <= n <= n_max."""
    return [
        (n, r, i, m)
        for n in range(n_max + 1)
        for r in range(n + 1)
        for i, m in enumerate(M_coeffs(n, r).values)
    ]


def m_table_csv(n_max: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "r", "i", "value"])
    for n, r, i, m in m_table_rows(n_max):
        writer.writerow([n, r, i, rational_to_str(m)])
    return buf.getvalue()
