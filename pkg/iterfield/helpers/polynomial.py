"""This module contains the polynomial and rational map value types shared by the exact and p-adic code paths."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, List, Optional, Tuple, Union

from iterfield.helpers.utils import rat_to_str


class _Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "∞"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinity(point: Any) -> bool:
    return point is INFINITY


def _strip(coeffs: Iterable[Any]) -> Tuple[Any, ...]:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


class Poly:
    """
    Dense univariate polynomial, index = exponent.

    Coefficients may be any ring elements supporting +, -, * with each other and
    with int (Fraction, complex, PAdicValue, TowerElement, QuadraticNumber).
    Zero coefficients are recognised by truthiness; trailing zeros are dropped
    so the last stored coefficient is the leading one.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, key, value):
        raise AttributeError("Poly is immutable.")

    @classmethod
    def monomial(cls, degree: int, coefficient: Any = 1) -> "Poly":
        return cls([0] * degree + [coefficient])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Any:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Any:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def exponents(self) -> List[int]:
        """Exponents carrying a nonzero coefficient."""
        return [i for i, c in enumerate(self.coeffs) if c]

    def map(self, func: Callable[[Any], Any]) -> "Poly":
        return Poly(func(c) for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            other = Poly([other])
        return not (self - other).coeffs

    __hash__ = None  # type: ignore

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other: Any) -> "Poly":
        return Poly([other]) - self

    def __mul__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out: List[Any] = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return Poly(out)

    def __rmul__(self, other: Any) -> "Poly":
        return Poly(other * c for c in self.coeffs)

    def __pow__(self, n: int) -> "Poly":
        assert n >= 0, "Only non-negative powers of polynomials are defined."
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, x: Any) -> Any:
        """Horner evaluation; a Poly argument yields the composition."""
        if not self.coeffs:
            return Poly() if isinstance(x, Poly) else 0
        acc: Any = Poly([self.coeffs[-1]]) if isinstance(x, Poly) else self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(c * i for i, c in enumerate(self.coeffs) if i > 0)

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else Poly()

    def padded(self, length: int) -> List[Any]:
        return list(self.coeffs) + [0] * (length - len(self.coeffs))

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        """Euclidean division over a field (the leading coefficient of 'other' must be invertible)."""
        if other.is_zero:
            raise ZeroDivisionError("Polynomial division by the zero polynomial.")
        rem = list(self.coeffs)
        quot: List[Any] = [0] * max(len(rem) - len(other.coeffs) + 1, 1)
        lead = other.leading
        n = other.degree
        for k in range(len(rem) - 1, n - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c / lead
            quot[k - n] = q
            for i, oc in enumerate(other.coeffs):
                rem[k - n + i] = rem[k - n + i] - q * oc
        return Poly(quot), Poly(rem[:n] if n > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        lead = self.leading
        return Poly(c / lead for c in self.coeffs)

    def reciprocal(self, degree: Optional[int] = None) -> "Poly":
        """Return x^degree * p(1/x)."""
        degree = self.degree if degree is None else degree
        return Poly(reversed(self.padded(degree + 1)))

    def to_strings(self) -> List[str]:
        return [rat_to_str(c) if isinstance(c, (int, Fraction)) else str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = rat_to_str(c) if isinstance(c, (int, Fraction)) else f"({c})"
            terms.append(cs if i == 0 else f"{cs}*x^{i}" if i > 1 else f"{cs}*x")
        return "Poly(" + " + ".join(terms) + ")"


@dataclass(frozen=True, eq=False)
class RationalMap:
    """
    A map num/den of the projective line.

    Construct exact maps through 'iterfield.functions.algebra_func.normalize_map' so that
    num and den are coprime; the p-adic pipeline builds maps directly.
    """

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero:
            from iterfield.helpers.exceptions import ZeroMap

            raise ZeroMap("The denominator of a rational map cannot be the zero polynomial.")

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def map_coeffs(self, func: Callable[[Any], Any]) -> "RationalMap":
        return RationalMap(self.num.map(func), self.den.map(func))

    def evaluate(self, point: Any) -> Any:
        """Exact evaluation on the projective line, 'INFINITY' included."""
        if is_infinity(point):
            if self.num.degree > self.den.degree:
                return INFINITY
            if self.num.degree < self.den.degree:
                return Fraction(0)
            return self.num.leading / self.den.leading
        den = self.den(point)
        if not den:
            if not self.num(point):
                from iterfield.helpers.exceptions import IndeterminateValue

                raise IndeterminateValue(f"Both num and den vanish at {point}.")
            return INFINITY
        return self.num(point) / den

    def evaluate_complex(self, z: Union[complex, "_Infinity"]) -> Union[complex, "_Infinity"]:
        """Numeric evaluation on the Riemann sphere."""
        if is_infinity(z):
            if self.num.degree > self.den.degree:
                return INFINITY
            if self.num.degree < self.den.degree:
                return 0j
            return complex(self.num.leading) / complex(self.den.leading)
        num = complex(self.num.map(complex)(z)) if self.num else 0j
        den = complex(self.den.map(complex)(z))
        if den == 0:
            return INFINITY
        return num / den

    def to_literal(self) -> dict:
        return {"num": self.num.to_strings() or ["0"], "den": self.den.to_strings()}

    def __repr__(self) -> str:
        return f"RationalMap(num={self.num!r}, den={self.den!r})"


@dataclass(frozen=True)
class Mobius:
    """The degree one map (a*x + b) / (c*x + d)."""

    a: Any
    b: Any
    c: Any
    d: Any

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    @property
    def determinant(self) -> Any:
        return self.a * self.d - self.b * self.c

    def as_map(self) -> RationalMap:
        return RationalMap(Poly([self.b, self.a]), Poly([self.d, self.c]))

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def __call__(self, point: Any) -> Any:
        if is_infinity(point):
            return INFINITY if not self.c else self.a / self.c
        den = self.c * point + self.d
        if not den:
            return INFINITY
        return (self.a * point + self.b) / den
