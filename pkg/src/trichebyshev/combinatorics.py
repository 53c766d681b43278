"""Exact factorial-type quantities.

Half-integer factorials carry their sqrt(pi) factor symbolically, so that
products and quotients of them (half-integer binomials, Beta functions) stay
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class HalfFactorialValue:
    """The number ``coeff * pi**(sqrt_pi_power / 2)``."""

    coeff: Fraction
    sqrt_pi_power: int = 0

    def __mul__(self, other: HalfFactorialValue) -> HalfFactorialValue:
        return HalfFactorialValue(
            self.coeff * other.coeff, self.sqrt_pi_power + other.sqrt_pi_power
        )

    def __truediv__(self, other: HalfFactorialValue) -> HalfFactorialValue:
        return HalfFactorialValue(
            self.coeff / other.coeff, self.sqrt_pi_power - other.sqrt_pi_power
        )

    def as_rational(self) -> Fraction:
        if self.sqrt_pi_power != 0:
            raise ArithmeticError(f"value carries pi**({self.sqrt_pi_power}/2)")
        return self.coeff

    def __float__(self) -> float:
        return float(self.coeff) * math.pi ** (self.sqrt_pi_power / 2)


def double_factorial(n: int) -> int:
    """n!! with the convention 0!! = (-1)!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for n={n}")
    if n <= 0:
        return 1
    if n % 2 == 0:
        h = n // 2
        return 2**h * math.factorial(h)
    h = (n - 1) // 2
    return math.factorial(n) // (2**h * math.factorial(h))


def half_factorial(n: int) -> HalfFactorialValue:
    """(n - 1/2)! = n! (2n-1)!! sqrt(pi) / (2n)!!."""
    if n < 0:
        raise ValueError(f"half_factorial needs n >= 0, got {n}")
    coeff = Fraction(math.factorial(n) * double_factorial(2 * n - 1), double_factorial(2 * n))
    return HalfFactorialValue(coeff, 1)


def gamma_half_integer(x: Fraction) -> HalfFactorialValue:
    """Gamma(x) for a positive integer or half-integer ``x``."""
    x = Fraction(x)
    if x <= 0 or (2 * x).denominator != 1:
        raise ValueError(f"gamma_half_integer needs a positive multiple of 1/2, got {x}")
    if x.denominator == 1:
        return HalfFactorialValue(Fraction(math.factorial(int(x) - 1)), 0)
    # Gamma(m + 1/2) = (m - 1/2)!
    return half_factorial(int(x - Fraction(1, 2)))


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero when k lies outside [0, n]."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def half_binom(n: int, m: int) -> Fraction:
    """C(n - 1/2, m) for integers 0 <= m <= n, as an exact rational."""
    if not 0 <= m <= n:
        raise ValueError(f"half_binom needs 0 <= m <= n, got n={n}, m={m}")
    top = half_factorial(n)
    bottom = HalfFactorialValue(Fraction(math.factorial(m)), 0) * half_factorial(n - m)
    return (top / bottom).as_rational()


def check_half_binomial_identity(n: int, k: int) -> bool:
    """Check C(n-1/2, n-k) C(n-1/2, k) == 4**-n C(2n, n) C(2n, 2k) exactly."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    lhs = half_binom(n, n - k) * half_binom(n, k)
    rhs = Fraction(binom(2 * n, n) * binom(2 * n, 2 * k), 4**n)
    return lhs == rhs
