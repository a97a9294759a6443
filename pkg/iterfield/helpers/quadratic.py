"""This module contains exact arithmetic in quadratic fields Q(√D), used to track irrational critical orbits."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from iterfield.helpers.utils import height, rat_to_str


@dataclass(frozen=True)
class QuadraticNumber:
    """
    The number a + b·√D with a, b rational and D a squarefree integer different from 0 and 1.

    Values with b = 0 still carry D so that mixed arithmetic stays in one field.
    """

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        assert self.D not in (0, 1), "The radicand must be squarefree and different from 0 and 1."

    def _coerce(self, other: Any) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            assert other.D == self.D, f"Cannot mix Q(√{self.D}) and Q(√{other.D})."
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(Fraction(other), Fraction(0), self.D)
        return NotImplemented

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __neg__(self) -> "QuadraticNumber":
        return QuadraticNumber(-self.a, -self.b, self.D)

    def __add__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadraticNumber(self.a + other.a, self.b + other.b, self.D)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadraticNumber(self.a - other.a, self.b - other.b, self.D)

    def __rsub__(self, other: Any) -> "QuadraticNumber":
        return -(self - other)

    def __mul__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadraticNumber(
            self.a * other.a + self.D * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.D,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Division by zero in a quadratic field.")
        return QuadraticNumber(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "QuadraticNumber":
        return self._coerce(other) * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticNumber):
            return self.D == other.D and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def height(self) -> int:
        return max(height(self.a), height(self.b))

    def __complex__(self) -> complex:
        return complex(self.a) + complex(self.b) * cmath.sqrt(self.D)

    def __str__(self) -> str:
        if self.b == 0:
            return rat_to_str(self.a)
        return f"{rat_to_str(self.a)}+{rat_to_str(self.b)}*sqrt({self.D})"

    def to_dict(self) -> dict:
        return {"a": rat_to_str(self.a), "b": rat_to_str(self.b), "D": self.D}


def as_field_element(value: Union[int, Fraction, QuadraticNumber]) -> Union[Fraction, QuadraticNumber]:
    """Collapse a quadratic number with vanishing irrational part to a Rat."""
    if isinstance(value, QuadraticNumber) and value.is_rational:
        return value.a
    if isinstance(value, int):
        return Fraction(value)
    return value
