"""Exact rationals and the field extension Q + Q*pi.

Rationals are :class:`fractions.Fraction` (always in lowest terms, positive
denominator, arbitrary precision). :class:`PiRational` holds values
``rat + pi_coeff * pi`` and is what every weighted inner product lands in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]


def as_rational(x: RationalLike | str) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: silently converting them would defeat exactness.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


def rational_arith(a: RationalLike, b: RationalLike, op: str) -> Fraction:
    a, b = as_rational(a), as_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def rational_to_str(x: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_PI_50 = Fraction("3.14159265358979323846264338327950288419716939937510")


def _to_float(x: Fraction) -> float:
    try:
        return float(x)
    except OverflowError as exc:
        raise OverflowError(f"rational {x} does not fit in a float64") from exc


@dataclass(frozen=True)
class PiRational:
    """Exact number ``rat + pi_coeff * pi`` with rational parts."""

    rat: Fraction = Fraction(0)
    pi_coeff: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rat", as_rational(self.rat))
        object.__setattr__(self, "pi_coeff", as_rational(self.pi_coeff))

    @classmethod
    def of_pi(cls, coeff: RationalLike) -> PiRational:
        return cls(Fraction(0), as_rational(coeff))

    def is_zero(self) -> bool:
        # 1 and pi are linearly independent over Q
        return self.rat == 0 and self.pi_coeff == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: PiRational | RationalLike) -> PiRational:
        if isinstance(other, PiRational):
            return PiRational(self.rat + other.rat, self.pi_coeff + other.pi_coeff)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PiRational(self.rat + other, self.pi_coeff)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> PiRational:
        return PiRational(-self.rat, -self.pi_coeff)

    def __sub__(self, other: PiRational | RationalLike) -> PiRational:
        if isinstance(other, (PiRational, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: RationalLike) -> PiRational:
        return (-self) + other

    def __mul__(self, other: PiRational | RationalLike) -> PiRational:
        if isinstance(other, PiRational):
            if self.pi_coeff and other.pi_coeff:
                raise ArithmeticError("product would contain pi**2, outside Q + Q*pi")
            return PiRational(
                self.rat * other.rat,
                self.rat * other.pi_coeff + self.pi_coeff * other.rat,
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PiRational(self.rat * other, self.pi_coeff * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PiRational):
            return self.rat == other.rat and self.pi_coeff == other.pi_coeff
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.pi_coeff == 0 and self.rat == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.pi_coeff == 0:
            return hash(self.rat)
        return hash((self.rat, self.pi_coeff))

    def __float__(self) -> float:
        return pi_rational_to_float(self)

    def __repr__(self) -> str:
        return f"PiRational({rational_to_str(self.rat)} + {rational_to_str(self.pi_coeff)}*pi)"

    def to_json(self) -> dict[str, str]:
        return {"rat": rational_to_str(self.rat), "pi": rational_to_str(self.pi_coeff)}

    @classmethod
    def from_json(cls, obj: dict[str, str]) -> PiRational:
        return cls(Fraction(obj["rat"]), Fraction(obj["pi"]))


def pi_rational_to_float(x: PiRational) -> float:
    """Evaluate ``rat + pi_coeff*pi`` in double precision."""
    if x.rat == 0:
        return _to_float(x.pi_coeff) * math.pi
    # a 50-digit pi keeps the result correctly rounded even under cancellation
    return _to_float(x.rat + x.pi_coeff * _PI_50)
