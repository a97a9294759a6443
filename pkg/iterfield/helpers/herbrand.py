"""This module contains the piecewise-linear Herbrand transition functions of finite local extensions."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

from iterfield.helpers.exceptions import InvalidBreaks
from iterfield.helpers.utils import rat_to_str

Number = Union[int, Fraction]


@dataclass(frozen=True)
class HerbrandFn:
    """
    A concave piecewise-linear map phi of [0, ∞) with phi(0) = 0.

    The initial slope is 1 for totally wildly ramified extensions and 1/e_0 when a tame
    part of degree e_0 is present.

    Attributes
    ----------
    breakpoints: tuple of Fraction
        Strictly increasing positive abscissae where the slope changes.
    slopes: tuple of Fraction
        slopes[0] on [0, breakpoints[0]], ..., slopes[-1] beyond the last breakpoint.
    """

    breakpoints: Tuple[Fraction, ...]
    slopes: Tuple[Fraction, ...]

    def __post_init__(self):
        points = [Fraction(b) for b in self.breakpoints]
        slopes = [Fraction(s) for s in self.slopes]
        if len(slopes) != len(points) + 1:
            raise InvalidBreaks("A Herbrand function needs exactly one more slope than breakpoints.")
        if any(s <= 0 for s in slopes):
            raise InvalidBreaks("Slopes of a Herbrand function are positive.")
        if any(b <= a for a, b in zip([Fraction(0)] + points, points)):
            raise InvalidBreaks("Breakpoints must be positive and strictly increasing.")
        if slopes[0] > 1:
            raise InvalidBreaks(f"The initial slope is at most 1, got {rat_to_str(slopes[0])}.")
        if any(b > a for a, b in zip(slopes, slopes[1:])):
            raise InvalidBreaks("Slopes must be nonincreasing (the function is concave).")
        merged_points: List[Fraction] = []
        merged_slopes = [slopes[0]]
        for b, s in zip(points, slopes[1:]):
            if s != merged_slopes[-1]:
                merged_points.append(b)
                merged_slopes.append(s)
        object.__setattr__(self, "breakpoints", tuple(merged_points))
        object.__setattr__(self, "slopes", tuple(merged_slopes))

    @classmethod
    def identity(cls) -> "HerbrandFn":
        return cls((), (Fraction(1),))

    @classmethod
    def from_lower_breaks(cls, breaks: Sequence[Tuple[Number, int]], degree: int) -> "HerbrandFn":
        """
        Integrate dt / [G_0 : G_t] for a filtration given by its lower breaks.

        Parameters
        ----------
        breaks: sequence of (break, count)
            Lower breaks with the number of non-identity elements whose break it is.
        degree: integer
            The order of G_0.

        Returns
        -------
        HerbrandFn
            The transition function.
        """
        breaks = sorted((Fraction(b), c) for b, c in breaks)
        if sum(c for _, c in breaks) != degree - 1:
            raise InvalidBreaks(
                f"Break counts sum to {sum(c for _, c in breaks)}, expected {degree - 1} for degree {degree}."
            )
        if breaks and breaks[0][0] < 0:
            raise InvalidBreaks("Lower breaks are nonnegative.")
        # Breaks at 0 only lower the initial slope.
        wild = [(b, c) for b, c in breaks if b > 0]
        points = [b for b, _ in wild]
        slopes = [Fraction(1 + sum(c for _, c in wild[i:]), degree) for i in range(len(points) + 1)]
        return cls(tuple(points), tuple(slopes))

    def _values_at_breakpoints(self) -> List[Fraction]:
        values = [Fraction(0)]
        previous = Fraction(0)
        for b, s in zip(self.breakpoints, self.slopes):
            values.append(values[-1] + s * (b - previous))
            previous = b
        return values

    def slope_at(self, x: Number) -> Fraction:
        """Right derivative at x."""
        return self.slopes[bisect_right(self.breakpoints, Fraction(x))]

    def evaluate(self, x: Number) -> Fraction:
        x = Fraction(x)
        assert x >= 0, "Herbrand functions are evaluated on [0, ∞)."
        i = bisect_right(self.breakpoints, x)
        start = self.breakpoints[i - 1] if i else Fraction(0)
        return self._values_at_breakpoints()[i] + self.slopes[i] * (x - start)

    __call__ = evaluate

    def psi(self, y: Number) -> Fraction:
        """The inverse function."""
        y = Fraction(y)
        assert y >= 0, "Herbrand functions are inverted on [0, ∞)."
        values = self._values_at_breakpoints()
        i = bisect_right(values[1:], y)
        start = self.breakpoints[i - 1] if i else Fraction(0)
        return start + (y - values[i]) / self.slopes[i]

    def upper_breaks(self) -> List[Fraction]:
        return [self.evaluate(b) for b in self.breakpoints]

    def compose(self, inner: "HerbrandFn") -> "HerbrandFn":
        """Return self ∘ inner."""
        points = sorted(set(inner.breakpoints) | {inner.psi(b) for b in self.breakpoints})
        slopes = []
        for left in [Fraction(0)] + points:
            slopes.append(self.slope_at(inner.evaluate(left)) * inner.slope_at(left))
        return HerbrandFn(tuple(points), tuple(slopes))

    def is_dominated_by(self, other: "HerbrandFn") -> bool:
        """True iff self(x) <= other(x) for every x >= 0."""
        points = sorted(set(self.breakpoints) | set(other.breakpoints))
        if any(self.evaluate(x) > other.evaluate(x) for x in points):
            return False
        return self.slopes[-1] <= other.slopes[-1]

    def sample(self, xs: Iterable[Number]) -> List[Fraction]:
        return [self.evaluate(x) for x in xs]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "breakpoints": [rat_to_str(b) for b in self.breakpoints],
            "slopes": [rat_to_str(s) for s in self.slopes],
            "upper_breaks": [rat_to_str(b) for b in self.upper_breaks()],
        }
