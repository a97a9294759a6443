"""This module contains the dynamical classification of rational maps and the Chebyshev and Lattès families."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import logging
import math
import operator
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import sympy
from cachetools import LRUCache, cached, cachedmethod
from sympy.ntheory.factor_ import core

from iterfield.functions.algebra_func import (
    compose,
    conjugate,
    critical_polynomial,
    maps_equal,
    normalize_map,
)
from iterfield.helpers.asserts import assert_min_degree, assert_positive
from iterfield.helpers.constants import DEFAULT_HEIGHT_BOUND, DEFAULT_ORBIT_BOUND, DEFAULT_OVERFLOW_DIGITS
from iterfield.helpers.enums import PCFVerdict
from iterfield.helpers.exceptions import SingularCurve, UnsupportedCriticalDegree
from iterfield.helpers.polynomial import INFINITY, Mobius, Poly, RationalMap, is_infinity
from iterfield.helpers.quadratic import QuadraticNumber, as_field_element
from iterfield.helpers.reports import OrbitReport, PCFReport
from iterfield.helpers.utils import height, to_rat
from iterfield.helpers.warn import warn_semi_decidable

log = logging.getLogger(__name__)

_X = sympy.Symbol("x")
_Y = sympy.Symbol("y")

Point = Union[Fraction, QuadraticNumber, Any]


def _sympy_poly(poly: Poly) -> sympy.Poly:
    coeffs = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(poly.coeffs)]
    return sympy.Poly(coeffs or [0], _X, domain=sympy.QQ)


def _point_height(point: Point) -> int:
    if is_infinity(point):
        return 1
    if isinstance(point, QuadraticNumber):
        return point.height()
    return height(point)


def _map_height(phi: RationalMap) -> int:
    return max((height(c) for c in list(phi.num) + list(phi.den)), default=1)


def _height_bound(phi: RationalMap, points: List[Point], height_bound: Optional[int]) -> int:
    if height_bound is not None:
        return height_bound
    input_height = max([_map_height(phi)] + [_point_height(x) for x in points])
    return max(DEFAULT_HEIGHT_BOUND, 10 * input_height)


def detect_period(
    phi: RationalMap,
    point: Point,
    n: int = DEFAULT_ORBIT_BOUND,
    height_bound: Optional[int] = None,
) -> OrbitReport:
    """
    Follow the exact forward orbit of a point until it repeats or leaves the search bounds.

    Parameters
    ----------
    phi: RationalMap
        A normalised map.
    point: Fraction, QuadraticNumber or INFINITY
        The starting point.
    n: integer
        Largest number of iterations.
    height_bound: integer, optional
        Orbit points of larger height count as escaped. Defaults to
        max(10^6, 10 * height of the input).

    Returns
    -------
    OrbitReport
        preperiod and period of the orbit, or the step at which it escaped.
    """
    assert_positive(n, "n")
    if isinstance(point, int):
        point = Fraction(point)
    bound = _height_bound(phi, [point], height_bound)

    x = as_field_element(point) if not is_infinity(point) else point
    seen: Dict[Any, int] = {x: 0}
    for step in range(1, n + 1):
        x = phi.evaluate(x)
        if not is_infinity(x):
            x = as_field_element(x)
        if x in seen:
            return OrbitReport(point=point, preperiod=seen[x], period=step - seen[x])
        if _point_height(x) > bound:
            log.debug("Orbit of %s left the height bound %s at step %d.", point, bound, step)
            return OrbitReport(point=point, preperiod=0, period=None, escaped_at=step, reason="height")
        seen[x] = step
    return OrbitReport(point=point, preperiod=0, period=None, escaped_at=n, reason="bound")


def _quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> Tuple[QuadraticNumber, QuadraticNumber]:
    """Roots of the irreducible a*x^2 + b*x + c in Q(√D)."""
    disc = b * b - 4 * a * c
    radicand = disc.numerator * disc.denominator
    sign = -1 if radicand < 0 else 1
    free = int(core(abs(radicand)))
    scale = math.isqrt(abs(radicand) // free)
    D = sign * free
    root = Fraction(scale, disc.denominator)
    return (
        QuadraticNumber(-b / (2 * a), root / (2 * a), D),
        QuadraticNumber(-b / (2 * a), -root / (2 * a), D),
    )


def critical_points(phi: RationalMap) -> List[Tuple[Point, int]]:
    """
    List the critical points of a map over Q with their multiplicities.

    Irrational critical points are returned in Q(√D). ∞ is listed first when it is critical.

    Parameters
    ----------
    phi: RationalMap
        A normalised map of degree at least 2.

    Returns
    -------
    list
        (point, multiplicity) pairs; multiplicities add up to 2d - 2.
    """
    data = critical_polynomial(phi)
    out: List[Tuple[Point, int]] = []
    if data.infinity_is_critical:
        out.append((INFINITY, data.infinity_multiplicity))
    if data.poly.degree < 1:
        return out
    _, factors = _sympy_poly(data.poly).factor_list()
    for factor, mult in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in factor.all_coeffs()]
        if factor.degree() == 1:
            out.append((-coeffs[1] / coeffs[0], mult))
        elif factor.degree() == 2:
            for root in _quadratic_roots(*coeffs):
                out.append((root, mult))
        else:
            raise UnsupportedCriticalDegree(
                f"The critical factor {factor.as_expr()} has degree {factor.degree()}; only degree <= 2 is supported."
            )
    return out


def classify_pcf(
    phi: RationalMap,
    n: int = DEFAULT_ORBIT_BOUND,
    height_bound: Optional[int] = None,
) -> PCFReport:
    """
    Decide within bounds whether every critical orbit of a map over Q is finite.

    Parameters
    ----------
    phi: RationalMap
        A normalised map of degree at least 2 whose critical points have degree <= 2 over Q.
    n: integer
        Iteration bound per critical orbit.
    height_bound: integer, optional
        Height bound of the orbit search, see 'detect_period'.

    Returns
    -------
    PCFReport
        Verdict PCF when every orbit closes, NotPCFWithin(n) otherwise.
    """
    assert_min_degree(phi.degree)
    points = critical_points(phi)
    bound = _height_bound(phi, [x for x, _ in points], height_bound)
    orbits = tuple(detect_period(phi, x, n=n, height_bound=bound) for x, _ in points)
    verdict = PCFVerdict.PCF if all(o.is_finite for o in orbits) else PCFVerdict.NOT_PCF_WITHIN
    if verdict == PCFVerdict.NOT_PCF_WITHIN:
        warn_semi_decidable("finite critical orbit", n)
    log.info("Critical orbit search finished with verdict %s (N=%d, H=%s).", verdict.value, n, bound)
    return PCFReport(
        orbits=orbits,
        verdict=verdict,
        bound_n=n,
        height_bound=bound,
        multiplicities=tuple(m for _, m in points),
    )


def _preimages(phi: RationalMap, point: Any) -> Optional[List[Any]]:
    """
    Distinct preimages of a rational point or ∞, or None when some preimage is irrational.
    """
    d = phi.degree
    if is_infinity(point):
        fiber = phi.den
        at_infinity = phi.num.degree > phi.den.degree
    else:
        fiber = phi.num - phi.den * point
        at_infinity = fiber.degree < d
    out: List[Any] = [INFINITY] if at_infinity else []
    if fiber.degree < 1:
        return out
    _, factors = _sympy_poly(fiber).sqf_part().factor_list()
    for factor, _ in factors:
        if factor.degree() > 1:
            return None
        c1, c0 = (Fraction(int(c.p), int(c.q)) for c in factor.all_coeffs())
        out.append(-c0 / c1)
    return out


def is_exceptional(phi: RationalMap, b: Any) -> bool:
    """
    Test whether a point has a finite backward orbit.

    The set S = {b} is closed under taking preimages until it stabilises or holds more
    than two points; exceptional sets in characteristic 0 have at most two elements.

    Parameters
    ----------
    phi: RationalMap
        A normalised map of degree at least 2.
    b: Fraction or INFINITY
        The point.

    Returns
    -------
    boolean
        True if the closure of b is finite and fully invariant.
    """
    assert_min_degree(phi.degree)
    if not is_infinity(b):
        b = to_rat(b)
    closure = [b]
    frontier = [b]
    while frontier:
        new = []
        for point in frontier:
            pre = _preimages(phi, point)
            if pre is None:
                return False
            new += [x for x in pre if x not in closure and x not in new]
        closure += new
        if len(closure) > 2:
            return False
        frontier = new
    return all(phi.evaluate(x) in closure for x in closure)


@cached(cache=LRUCache(maxsize=256))
def chebyshev(d: int) -> Poly:
    """
    Return the Chebyshev polynomial T_d with T_d(x + 1/x) = x^d + x^-d.

    Built by T_0 = 2, T_1 = x and T_{n+1} = x*T_n - T_{n-1}.
    """
    assert_positive(d, "d")
    previous, current = Poly([Fraction(2)]), Poly([Fraction(0), Fraction(1)])
    for _ in range(d - 1):
        previous, current = current, current.shift(1) - previous
    return current


def chebyshev_map(d: int) -> RationalMap:
    return RationalMap(chebyshev(d), Poly([Fraction(1)]))


def v_map() -> RationalMap:
    """The map v(x) = x + 1/x = (x^2 + 1) / x."""
    return normalize_map([1, 0, 1], [0, 1])


def power_map(d: int) -> RationalMap:
    return normalize_map([0] * d + [1], [1])


def verify_v_identity() -> bool:
    """Check v(x)v(y) = v(xy) + v(x/y) as a bivariate identity after clearing denominators."""

    def v(t):
        return t + 1 / t

    numerator, _ = sympy.fraction(sympy.together(v(_X) * v(_Y) - v(_X * _Y) - v(_X / _Y)))
    return sympy.expand(numerator) == 0


def verify_chebyshev_composition(d1: int, d2: int) -> bool:
    """T_{d1} ∘ T_{d2} = T_{d1 d2} exactly."""
    return chebyshev(d1)(chebyshev(d2)) == chebyshev(d1 * d2)


def verify_chebyshev_semiconjugacy(d: int) -> bool:
    """T_d ∘ v = v ∘ x^d exactly."""
    return verify_semiconjugacy(chebyshev_map(d), v_map(), power_map(d))


class DivisionPolynomials:
    """
    Division polynomials of the curve y^2 = x^3 + a*x + b, extended lazily.

    Entry n is ψ_n for odd n and g_n with ψ_n = y*g_n for even n, so every entry is a
    polynomial in x.
    """

    def __init__(self, a: Fraction, b: Fraction):
        self.a = to_rat(a)
        self.b = to_rat(b)
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise SingularCurve(f"The curve y^2 = x^3 + {self.a}x + {self.b} has vanishing discriminant.")
        self.curve = Poly([self.b, self.a, Fraction(0), Fraction(1)])
        self.cache = LRUCache(512)

    @property
    def discriminant(self) -> Fraction:
        return 4 * self.a**3 + 27 * self.b**2

    def __getitem__(self, n: int) -> Poly:
        return self.poly(n)

    @cachedmethod(operator.attrgetter("cache"))
    def poly(self, n: int) -> Poly:
        assert n >= 0, "Division polynomials are indexed by non-negative integers."
        a, b = self.a, self.b
        if n <= 2:
            return Poly([Fraction(n)])
        if n == 3:
            return Poly([-(a**2), 12 * b, 6 * a, Fraction(0), Fraction(3)])
        if n == 4:
            return 4 * Poly([-8 * b**2 - a**3, -4 * a * b, -5 * a**2, 20 * b, 5 * a, Fraction(0), Fraction(1)])
        m = n // 2
        if n % 2:
            square = self.curve * self.curve
            if m % 2 == 0:
                return square * self.poly(m + 2) * self.poly(m) ** 3 - self.poly(m - 1) * self.poly(m + 1) ** 3
            return self.poly(m + 2) * self.poly(m) ** 3 - square * self.poly(m - 1) * self.poly(m + 1) ** 3
        inner = self.poly(m + 2) * self.poly(m - 1) ** 2 - self.poly(m - 2) * self.poly(m + 1) ** 2
        return self.poly(m) * inner * Fraction(1, 2)

    def psi_squared(self, n: int) -> Poly:
        """ψ_n^2 as a polynomial in x, with y^2 = x^3 + a*x + b substituted."""
        square = self.poly(n) ** 2
        return square * self.curve if n % 2 == 0 else square

    def __repr__(self) -> str:
        return f"DivisionPolynomials<a={self.a}, b={self.b}, {self.cache.currsize} cached>"


@cached(cache=LRUCache(maxsize=32))
def division_polynomials(a: Fraction, b: Fraction) -> DivisionPolynomials:
    """Return the shared division polynomial table of y^2 = x^3 + a*x + b."""
    return DivisionPolynomials(to_rat(a), to_rat(b))


def lattes_multiplication_map(
    a: Union[int, Fraction],
    b: Union[int, Fraction],
    d: int,
    overflow_digits: int = DEFAULT_OVERFLOW_DIGITS,
) -> RationalMap:
    """
    Return the Lattès map x(P) -> x([d]P) on y^2 = x^3 + a*x + b.

    Computed as x - ψ_{d-1} ψ_{d+1} / ψ_d^2 with y^2 substituted.

    Parameters
    ----------
    a, b: Fraction
        Short Weierstrass coefficients with 4a^3 + 27b^2 != 0.
    d: integer
        The multiplier, at least 1.
    overflow_digits: integer
        Coefficient size bound passed to normalisation.

    Returns
    -------
    RationalMap
        A normalised map of degree d^2.
    """
    assert_positive(d, "d")
    table = division_polynomials(to_rat(a), to_rat(b))
    x = Poly.x()
    if d % 2:
        den = table[d] ** 2
        num = x * den - table.curve * table[d - 1] * table[d + 1]
    else:
        den = table.curve * table[d] ** 2
        num = x * den - table[d - 1] * table[d + 1]
    phi = normalize_map(num.coeffs, den.coeffs, overflow_digits=overflow_digits)
    log.debug("Lattès map of multiplier %d on (%s, %s) has degree %d.", d, table.a, table.b, phi.degree)
    return phi


def doubling_x_map(a: Union[int, Fraction], b: Union[int, Fraction]) -> RationalMap:
    """
    Return x(2P) from the tangent-line duplication formula.

    x(2P) = ((3x^2 + a)^2 - 8x(x^3 + a*x + b)) / (4(x^3 + a*x + b)).
    """
    a, b = to_rat(a), to_rat(b)
    if 4 * a**3 + 27 * b**2 == 0:
        raise SingularCurve(f"The curve y^2 = x^3 + {a}x + {b} has vanishing discriminant.")
    curve = Poly([b, a, 0, 1])
    slope_num = Poly([a, 0, 3])
    num = slope_num * slope_num - 8 * Poly.x() * curve
    den = 4 * curve
    return normalize_map(num.coeffs, den.coeffs)


def verify_semiconjugacy(phi: RationalMap, pi: RationalMap, psi: RationalMap) -> bool:
    """
    Check the commutative square φ ∘ π = π ∘ ψ as an exact identity.

    Parameters
    ----------
    phi: RationalMap
        The map downstairs.
    pi: RationalMap
        The semiconjugacy.
    psi: RationalMap
        The map upstairs.

    Returns
    -------
    boolean
        True if both composites are the same rational function.
    """
    if phi.degree * pi.degree != pi.degree * psi.degree:
        log.debug("Degrees %d, %d, %d cannot form a commutative square.", phi.degree, pi.degree, psi.degree)
        return False
    return maps_equal(compose(phi, pi), compose(pi, psi))


def is_bicritical(phi: RationalMap) -> bool:
    """True if the map has exactly two distinct critical points in P^1."""
    assert_min_degree(phi.degree)
    data = critical_polynomial(phi)
    distinct = _sympy_poly(data.poly).sqf_part().degree() if data.poly.degree >= 1 else 0
    return distinct + (1 if data.infinity_is_critical else 0) == 2


def bicritical_normal_form(phi: RationalMap) -> Tuple[Mobius, RationalMap]:
    """
    Conjugate a bicritical map so that its critical points become 0 and ∞.

    Parameters
    ----------
    phi: RationalMap
        A bicritical map whose critical points are rational or ∞.

    Returns
    -------
    tuple
        (μ, ψ) with ψ = μ ∘ φ ∘ μ^-1 in K(x^d).
    """
    assert is_bicritical(phi), "The map must have exactly two critical points."
    points = [x for x, _ in critical_points(phi)]
    if any(isinstance(x, QuadraticNumber) for x in points):
        raise UnsupportedCriticalDegree("The critical points are conjugate over a quadratic field, not rational.")
    if is_infinity(points[0]):
        mu = Mobius(Fraction(1), -points[1], Fraction(0), Fraction(1))
    else:
        mu = Mobius(Fraction(1), -points[0], Fraction(1), -points[1])
    return mu, conjugate(phi, mu)
