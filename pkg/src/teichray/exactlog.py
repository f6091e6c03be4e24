"""Real numbers of the form ``c * log(r)`` with rational ``c`` and ``r``.

Flow times, ray shifts and limiting distances all live in this family.
Keeping ``c`` and ``r`` exact makes zero tests and comparisons decidable:
``c1 log r1 <= c2 log r2`` iff ``r1**(c1 L) <= r2**(c2 L)`` for any common
denominator ``L`` of the coefficients.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

INF = math.inf

Rational = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing floats and bools.

    Strings are parsed as ``"p/q"`` (or plain integers / decimals).
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise ValueError(f"rational {value!r} has denominator 0") from None
        except ValueError:
            raise ValueError(f"cannot parse {value!r} as a rational") from None
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def log_fraction(x: Fraction) -> float:
    """Natural log of a positive Fraction without float overflow."""
    if x <= 0:
        raise ValueError("log of a nonpositive number")
    return math.log(x.numerator) - math.log(x.denominator)


def compare_logs(c1: Fraction, r1, c2: Fraction, r2) -> int:
    """Exact sign of ``c1*log(r1) - c2*log(r2)``; ``r`` may be ``INF`` when ``c > 0``."""
    inf1 = r1 == INF
    inf2 = r2 == INF
    if inf1 or inf2:
        return int(inf1) - int(inf2)
    lcm = c1.denominator * c2.denominator // math.gcd(c1.denominator, c2.denominator)
    e1 = int(c1 * lcm)
    e2 = int(c2 * lcm)
    lhs = Fraction(r1) ** e1
    rhs = Fraction(r2) ** e2
    return (lhs > rhs) - (lhs < rhs)


@dataclass(frozen=True)
class ExactLog:
    """The real number ``coefficient * log(argument)``."""

    argument: Fraction
    coefficient: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "argument", as_fraction(self.argument))
        object.__setattr__(self, "coefficient", as_fraction(self.coefficient))
        if self.argument <= 0:
            raise ValueError("log argument must be positive")

    @classmethod
    def from_float(cls, t: float) -> "ExactLog":
        """Represent a real ``t`` as ``log(r)`` with ``r`` the binary64 value of ``e**t``."""
        return cls(Fraction(math.exp(t)))

    @classmethod
    def coerce(cls, t) -> "ExactLog":
        if isinstance(t, ExactLog):
            return t
        if isinstance(t, numbers.Real) and not isinstance(t, bool):
            if isinstance(t, (int, Fraction)) and t == 0:
                return cls(Fraction(1))
            return cls.from_float(float(t))
        raise TypeError(f"cannot interpret {t!r} as a real parameter")

    def exp(self, k: Rational = 1) -> Optional[Fraction]:
        """``e**(k*self)`` as an exact Fraction, or None when it is irrational-looking.

        Exactness requires ``k * coefficient`` to be an integer.
        """
        power = as_fraction(k) * self.coefficient
        if power.denominator != 1:
            return None
        return self.argument ** int(power)

    def __float__(self) -> float:
        if self.coefficient == 0:
            return 0.0
        return float(self.coefficient) * log_fraction(self.argument)

    def __neg__(self) -> "ExactLog":
        return ExactLog(self.argument, -self.coefficient)

    def is_zero(self) -> bool:
        return self.coefficient == 0 or self.argument == 1
