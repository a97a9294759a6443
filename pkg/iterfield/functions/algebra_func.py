"""This module contains exact rational map algebra: normalisation, composition, conjugation and structural predicates."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import logging
import math
from fractions import Fraction
from functools import reduce
from typing import Any, Dict, List, Sequence, Tuple, Union

import sympy

from iterfield.helpers.asserts import assert_min_degree, assert_positive, assert_prime
from iterfield.helpers.constants import DEFAULT_OVERFLOW_DIGITS
from iterfield.helpers.exceptions import (
    CoefficientOverflow,
    ConstantMap,
    SingularMobius,
    ZeroMap,
)
from iterfield.helpers.polynomial import Mobius, Poly, RationalMap
from iterfield.helpers.reports import CriticalData
from iterfield.helpers.utils import decimal_digits, to_rat

log = logging.getLogger(__name__)

_X = sympy.Symbol("x")


def _to_sympy(poly: Poly, **options) -> sympy.Poly:
    coeffs = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(poly.coeffs)]
    return sympy.Poly(coeffs or [0], _X, **options)


def _from_sympy(poly: sympy.Poly) -> Poly:
    return Poly(Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs()))


def _check_overflow(poly: Poly, bound: int) -> None:
    digits = max((decimal_digits(c) for c in poly.coeffs), default=0)
    if digits > bound:
        raise CoefficientOverflow(digits, bound)


def normalize_map(
    num_coeffs: Sequence[Union[int, str, Fraction]],
    den_coeffs: Sequence[Union[int, str, Fraction]],
    allow_constant: bool = False,
    overflow_digits: int = DEFAULT_OVERFLOW_DIGITS,
) -> RationalMap:
    """
    Bring num/den to the canonical coprime form.

    The result has integer coefficients without common content, coprime numerator and
    denominator, and a denominator with positive leading coefficient.

    Parameters
    ----------
    num_coeffs: sequence
        Numerator coefficients, index = exponent.
    den_coeffs: sequence
        Denominator coefficients, index = exponent.
    allow_constant: boolean
        Accept degree 0 maps instead of raising ConstantMap.
    overflow_digits: integer
        Largest admissible number of decimal digits of a coefficient.

    Returns
    -------
    RationalMap
        The normalised map.
    """
    num = Poly(to_rat(c) for c in num_coeffs)
    den = Poly(to_rat(c) for c in den_coeffs)
    if num.is_zero and den.is_zero:
        raise ZeroMap("Both numerator and denominator are the zero polynomial.")
    if den.is_zero:
        raise ZeroMap("The denominator is the zero polynomial.")
    if num.is_zero:
        if not allow_constant:
            raise ConstantMap("The zero map is constant.")
        return RationalMap(Poly(), Poly([Fraction(1)]))

    if num.degree > 0 and den.degree > 0:
        g = _to_sympy(num, domain=sympy.QQ).gcd(_to_sympy(den, domain=sympy.QQ))
        if g.degree() > 0:
            num = _from_sympy(_to_sympy(num, domain=sympy.QQ).quo(g))
            den = _from_sympy(_to_sympy(den, domain=sympy.QQ).quo(g))

    coeffs = list(num.coeffs) + list(den.coeffs)
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (Fraction(c).denominator for c in coeffs), 1)
    content = reduce(math.gcd, (int(Fraction(c) * lcm) for c in coeffs), 0)
    scale = Fraction(lcm, content)
    if den.leading < 0:
        scale = -scale
    num = num.map(lambda c: Fraction(c) * scale)
    den = den.map(lambda c: Fraction(c) * scale)

    phi = RationalMap(num, den)
    if phi.degree == 0 and not allow_constant:
        raise ConstantMap(f"The map {phi!r} is constant.")
    _check_overflow(num, overflow_digits)
    _check_overflow(den, overflow_digits)
    return phi


def homogeneous_compose(outer: Tuple[Poly, Poly], inner: Tuple[Poly, Poly]) -> Tuple[Poly, Poly]:
    """
    Return the pair (Σ a_i F^i G^(d-i), Σ b_i F^i G^(d-i)) for outer = A/B and inner = F/G.

    Works over any coefficient ring; no cancellation is attempted.
    """
    a, b = outer
    f, g = inner
    d = max(a.degree, b.degree, 0)
    f_powers = [Poly([1])]
    g_powers = [Poly([1])]
    for _ in range(d):
        f_powers.append(f_powers[-1] * f)
        g_powers.append(g_powers[-1] * g)
    num, den = Poly(), Poly()
    for i in range(d + 1):
        if not a[i] and not b[i]:
            continue
        term = f_powers[i] * g_powers[d - i]
        if a[i]:
            num = num + term * a[i]
        if b[i]:
            den = den + term * b[i]
    return num, den


def compose(outer: RationalMap, inner: RationalMap, overflow_digits: int = DEFAULT_OVERFLOW_DIGITS) -> RationalMap:
    """
    Compose two exact rational maps.

    Parameters
    ----------
    outer: RationalMap
        The map applied last.
    inner: RationalMap
        The map applied first.
    overflow_digits: integer
        Coefficient size bound passed to 'normalize_map'.

    Returns
    -------
    RationalMap
        outer ∘ inner in canonical form, of degree deg outer * deg inner.
    """
    num, den = homogeneous_compose((outer.num, outer.den), (inner.num, inner.den))
    return normalize_map(num.coeffs, den.coeffs, allow_constant=True, overflow_digits=overflow_digits)


def iterate(phi: RationalMap, n: int, overflow_digits: int = DEFAULT_OVERFLOW_DIGITS) -> RationalMap:
    """Return the n-th iterate φ^n."""
    assert_positive(n, "n")
    result = phi
    for step in range(1, n):
        result = compose(phi, result, overflow_digits=overflow_digits)
        log.debug("Iterate %d has degree %d.", step + 1, result.degree)
    return result


def compose_iterate(
    outer: RationalMap, inner: RationalMap, n: int, overflow_digits: int = DEFAULT_OVERFLOW_DIGITS
) -> RationalMap:
    """
    Return φ^n when outer equals inner, and outer ∘ inner^n otherwise.

    Parameters
    ----------
    outer: RationalMap
        The map applied last.
    inner: RationalMap
        The map that is iterated.
    n: integer
        The number of iterations of 'inner', at least 1.
    overflow_digits: integer
        Largest admissible number of decimal digits of a coefficient; CoefficientOverflow beyond it.

    Returns
    -------
    RationalMap
        The composite in canonical form.
    """
    assert_positive(n, "n")
    if maps_equal(outer, inner):
        return iterate(outer, n, overflow_digits=overflow_digits)
    return compose(outer, iterate(inner, n, overflow_digits=overflow_digits), overflow_digits=overflow_digits)


def mobius_inverse(mu: Mobius) -> Mobius:
    if not mu.determinant:
        raise SingularMobius(f"{mu!r} has vanishing determinant.")
    return mu.inverse()


def conjugate_coefficients(num: Poly, den: Poly, mu: Mobius) -> Tuple[Poly, Poly]:
    """
    Return (numerator, denominator) of μ ∘ (num/den) ∘ μ^-1 over any coefficient ring.

    No cancellation or scaling is performed.
    """
    if not mu.determinant:
        raise SingularMobius(f"{mu!r} has vanishing determinant.")
    inv = mu.inverse()
    inner = homogeneous_compose((num, den), (Poly([inv.b, inv.a]), Poly([inv.d, inv.c])))
    return homogeneous_compose((Poly([mu.b, mu.a]), Poly([mu.d, mu.c])), inner)


def conjugate(phi: RationalMap, mu: Mobius) -> RationalMap:
    """
    Conjugate φ by the Möbius transformation μ.

    Parameters
    ----------
    phi: RationalMap
        The map.
    mu: Mobius
        An invertible Möbius transformation with rational entries.

    Returns
    -------
    RationalMap
        μ ∘ φ ∘ μ^-1, normalised, of the same degree as φ.
    """
    num, den = conjugate_coefficients(phi.num, phi.den, mu)
    return normalize_map(num.coeffs, den.coeffs)


def critical_polynomial(phi: RationalMap) -> CriticalData:
    """
    Compute c = f'g - fg' and the critical multiplicity of ∞.

    Parameters
    ----------
    phi: RationalMap
        A normalised map f/g of degree at least 2.

    Returns
    -------
    CriticalData
        The finite critical points are the roots of c; ∞ has multiplicity 2d - 2 - deg c.
    """
    assert_min_degree(phi.degree)
    f, g = phi.num, phi.den
    c = f.derivative() * g - f * g.derivative()
    d = phi.degree
    return CriticalData(poly=c, infinity_multiplicity=2 * d - 2 - c.degree, degree=d)


def power_composite_order(phi: RationalMap) -> int:
    """
    Return the largest m with num and den both in K[x^m].

    Parameters
    ----------
    phi: RationalMap
        A map of degree at least 2.

    Returns
    -------
    integer
        The gcd of all exponents carrying a nonzero coefficient; 1 means no power structure.
    """
    assert_min_degree(phi.degree)
    exponents = phi.num.exponents() + phi.den.exponents()
    return reduce(math.gcd, exponents, 0) or 1


def evaluate_point(phi: RationalMap, point: Any) -> Any:
    """Exact evaluation on the projective line; ∞ is 'iterfield.helpers.polynomial.INFINITY'."""
    if isinstance(point, int):
        point = Fraction(point)
    return phi.evaluate(point)


def maps_equal(phi: RationalMap, psi: RationalMap) -> bool:
    """Exact identity of rational functions by cross-multiplication."""
    return phi.num * psi.den == psi.num * phi.den


def _reduce_poly(poly: Poly, p: int) -> Poly:
    out = []
    for c in poly.coeffs:
        c = Fraction(c)
        assert c.denominator % p != 0, f"The coefficient {c} is not {p}-integral."
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return Poly(out)


def _gf_cancel(num: Poly, den: Poly, p: int) -> Tuple[Poly, Poly]:
    if num.degree <= 0 or den.degree <= 0:
        return num, den
    snum = sympy.Poly([int(c) for c in reversed(num.coeffs)], _X, modulus=p)
    sden = sympy.Poly([int(c) for c in reversed(den.coeffs)], _X, modulus=p)
    g = snum.gcd(sden)
    if g.degree() <= 0:
        return num, den
    reduced = []
    for part in (snum.quo(g), sden.quo(g)):
        reduced.append(Poly(int(c) % p for c in reversed(part.all_coeffs())))
    return reduced[0], reduced[1]


def reduce_map(phi: RationalMap, p: int) -> RationalMap:
    """
    Reduce a normalised map coefficient-wise modulo p and cancel common factors over F_p.

    Parameters
    ----------
    phi: RationalMap
        A map with p-integral coefficients.
    p: integer
        The prime.

    Returns
    -------
    RationalMap
        The reduction, with integer coefficients in [0, p).
    """
    assert_prime(p)
    num = _reduce_poly(phi.num, p)
    den = _reduce_poly(phi.den, p)
    if den.is_zero:
        raise ZeroMap(f"The denominator vanishes modulo {p}.")
    num, den = _gf_cancel(num, den, p)
    return RationalMap(num, den)


def compose_mod_p(outer: RationalMap, inner: RationalMap, p: int) -> RationalMap:
    """Compose two maps over F_p, given by integer coefficients in [0, p)."""
    num, den = homogeneous_compose((outer.num, outer.den), (inner.num, inner.den))
    num = num.map(lambda c: int(c) % p)
    den = den.map(lambda c: int(c) % p)
    if den.is_zero:
        raise ZeroMap(f"The composite denominator vanishes modulo {p}.")
    num, den = _gf_cancel(num, den, p)
    return RationalMap(num, den)


def parse_map_literal(literal: Dict[str, Any], **kwargs) -> RationalMap:
    """
    Parse the JSON map literal {"num": [...], "den": [...]}.

    Coefficients are integers or strings "p" / "p/q", index 0 the constant term; "den"
    defaults to ["1"].
    """
    if not isinstance(literal, dict) or "num" not in literal:
        raise ValueError("A map literal is an object with a 'num' list and an optional 'den' list.")
    num = literal["num"]
    den = literal.get("den", ["1"])
    if not isinstance(num, list) or not isinstance(den, list):
        raise ValueError("'num' and 'den' must be lists of coefficient strings.")
    try:
        num_coeffs = [to_rat(c.strip() if isinstance(c, str) else c) for c in num]
        den_coeffs = [to_rat(c.strip() if isinstance(c, str) else c) for c in den]
    except (TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"Invalid coefficient in map literal: {exc}") from exc
    return normalize_map(num_coeffs, den_coeffs, **kwargs)


def map_to_literal(phi: RationalMap) -> Dict[str, List[str]]:
    return phi.to_literal()
