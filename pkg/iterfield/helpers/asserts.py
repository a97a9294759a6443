"""This module holds a collection of asserts functionality that is used across the Iterfield library to avoid undefined behaviour."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from typing import Any

import sympy


def assert_prime(p: int) -> None:
    """
    Assert that p is a rational prime.

    Parameters
    ----------
    p: integer
        The candidate prime.

    Returns
    -------
    None
    """
    assert isinstance(p, int) and sympy.isprime(p), f"Expected a prime, got {p!r}."


def assert_positive(value: int, name: str) -> None:
    """Assert that an integer parameter is at least one."""
    assert isinstance(value, int) and value >= 1, f"'{name}' must be a positive integer, got {value!r}."


def assert_min_degree(degree: int, minimum: int = 2) -> None:
    """
    Assert that a map has at least the given degree.

    Parameters
    ----------
    degree: integer
        The degree of the map.
    minimum: integer
        The smallest admissible degree.

    Returns
    -------
    None
    """
    assert degree >= minimum, f"The map must have degree at least {minimum} (got degree {degree})."


def assert_same_prime(x: Any, y: Any) -> None:
    """Assert that two p-adic operands are taken over the same prime."""
    assert x.p == y.p, f"Operands live over different primes ({x.p} and {y.p})."


def assert_same_tower(x: Any, y: Any) -> None:
    """Assert that two tower elements belong to one tower."""
    assert x.tower is y.tower or x.tower.levels[: min(x.level, y.level)] == y.tower.levels[
        : min(x.level, y.level)
    ], "Tower elements belong to different towers."


def assert_tolerance_scale(scale: float) -> None:
    """Assert that the tolerance scale lies in (0, 1]."""
    assert 0 < scale <= 1, f"The tolerance scale must lie in (0, 1], got {scale}."
