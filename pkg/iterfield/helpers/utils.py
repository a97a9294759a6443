"""This module contains the utils functions of the library."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import math
import re
from fractions import Fraction
from typing import Any, Tuple, Union

Rat = Fraction


def get_name(name: str):
    """
    Get the name of the Check class object.

    Parameters
    ----------
    name: string
        A check name.

    Returns
    -------
    name: string
        A cleaned version of the Check name.
    """

    if name.isupper():
        return name
    return re.sub(r"(?<=[a-z])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])", " ", name)


def to_rat(value: Union[int, str, Fraction]) -> Fraction:
    """
    Parse an integer, a Fraction or a string of the form "p/q" into a Rat.

    Parameters
    ----------
    value: int, str, Fraction
        The value to convert.

    Returns
    -------
    Fraction
        The exact rational.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Refusing inexact or boolean coefficient {value!r}; pass a string 'p/q'.")
    return Fraction(value)


def rat_to_str(value: Fraction) -> str:
    """Render a Rat as "p" or "p/q"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def multiplicity(p: int, n: int) -> int:
    """Return the exponent of the prime p in the nonzero integer n."""
    n = abs(n)
    assert n != 0, "The multiplicity of a prime in 0 is undefined."
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def rational_valuation(x: Union[int, Fraction], p: int) -> int:
    """
    Compute the p-adic valuation of a nonzero rational.

    Parameters
    ----------
    x: int, Fraction
        A nonzero rational.
    p: integer
        The prime.

    Returns
    -------
    integer
        v_p(x).
    """
    x = Fraction(x)
    assert x != 0, "The valuation of 0 is infinite."
    return multiplicity(p, x.numerator) - multiplicity(p, x.denominator)


def height(x: Fraction) -> int:
    """Return the naive height max(|numerator|, denominator) of a rational."""
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator)


def decimal_digits(x: Fraction) -> int:
    """Return an upper estimate of the number of decimal digits of the height of x."""
    bits = max(abs(Fraction(x).numerator).bit_length(), Fraction(x).denominator.bit_length())
    return int(bits * math.log10(2)) + 1


def lex_key(z: complex) -> Tuple[float, float]:
    """Key that orders complex approximations lexicographically on (real, imaginary)."""
    return (round(z.real, 12), round(z.imag, 12))


def complex_to_list(z: complex) -> Tuple[float, float]:
    return (float(z.real), float(z.imag))


def jsonable(value: Any) -> Any:
    """
    Convert nested report values into JSON-serialisable objects.

    Rationals become "p/q" strings, complex numbers become [re, im] pairs and objects
    that provide 'to_dict' are expanded.
    """
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return rat_to_str(value)
    if isinstance(value, complex):
        return list(complex_to_list(value))
    if isinstance(value, float):
        return value
    if hasattr(value, "value"):
        return value.value
    return str(value)
