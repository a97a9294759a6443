"""This module contains p-adic operations: arithmetic dispatch, Newton polygons, Hensel lifting, tower extension and norms."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import logging
import math
import operator
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import sympy

from iterfield.helpers.asserts import assert_prime
from iterfield.helpers.constants import DEFAULT_PRECISION
from iterfield.helpers.enums import LevelKind
from iterfield.helpers.exceptions import (
    HenselConditionFailed,
    NotEisenstein,
    PAdicError,
    PrecisionExhausted,
)
from iterfield.helpers.padic import LocalTower, PAdicValue, TowerElement, level_of
from iterfield.helpers.polynomial import Poly
from iterfield.helpers.reports import NewtonHenselReport, NewtonPolygon
from iterfield.helpers.utils import rational_valuation

log = logging.getLogger(__name__)

_BINARY_OPS: Dict[str, Callable[[Any, Any], Any]] = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def padic_arith(op: str, x: Any, y: Any = None, tower: Optional[LocalTower] = None) -> Any:
    """
    Apply one p-adic operation with precision tracking.

    Parameters
    ----------
    op: string
        One of "add", "sub", "mul", "div", "val" and "sqrt".
    x: PAdicValue, TowerElement
        The first operand.
    y: PAdicValue, TowerElement, int, Fraction, optional
        The second operand of the binary operations.
    tower: LocalTower, optional
        Needed for "val" on tower elements.

    Returns
    -------
    PAdicValue, TowerElement or integer
        The result; "val" returns the exact valuation.
    """
    if op in _BINARY_OPS:
        assert y is not None, f"Operation '{op}' takes two operands."
        return _BINARY_OPS[op](x, y)
    if op == "val":
        if isinstance(x, TowerElement):
            return x.valuation()
        if tower is not None:
            return tower.valuation(x)
        return x.val()
    if op == "sqrt":
        assert isinstance(x, PAdicValue), "Square roots are taken of Q_p values."
        return x.sqrt()
    raise ValueError(f"Unknown p-adic operation '{op}', choose from {sorted(_BINARY_OPS) + ['sqrt', 'val']}.")


def _base_tower(coeffs: List[Any], p: Optional[int], tower: Optional[LocalTower]) -> LocalTower:
    if tower is not None:
        return tower
    for c in coeffs:
        if isinstance(c, PAdicValue):
            return LocalTower(c.p, c.precision)
    assert p is not None, "A prime is needed for polynomials with rational coefficients."
    return LocalTower(p, DEFAULT_PRECISION)


def newton_polygon(
    f: Poly, p: Optional[int] = None, tower: Optional[LocalTower] = None, level: Optional[int] = None
) -> NewtonPolygon:
    """
    Compute the lower convex hull of the points (i, v(c_i)).

    Parameters
    ----------
    f: Poly
        A nonzero polynomial with rational, PAdicValue or TowerElement coefficients.
    p: integer, optional
        The prime, needed when every coefficient is rational and no tower is given.
    tower: LocalTower, optional
        The tower the coefficients live in.
    level: integer, optional
        Valuations are measured in units of v_{E_level}; defaults to the highest coefficient level.

    Returns
    -------
    NewtonPolygon
        Vertices and (slope, length) segments, slopes increasing.
    """
    assert not f.is_zero, "The Newton polygon of the zero polynomial is undefined."
    tower = _base_tower(list(f.coeffs), p, tower)
    level = max(level_of(c) for c in f.coeffs) if level is None else level

    exact: List[Tuple[int, Fraction]] = []
    unknown: List[Tuple[int, Any]] = []
    for i, c in enumerate(f.coeffs):
        if isinstance(c, (int, Fraction)) and c == 0:
            continue
        status, value = tower.val_status(c, level)
        if status == "exact":
            exact.append((i, Fraction(value)))
        elif value != math.inf:
            unknown.append((i, value))

    if not exact:
        raise PrecisionExhausted("No coefficient has a known valuation at the current precision.")

    vertices = [exact[0]]
    segments: List[Tuple[Fraction, int]] = []
    current = 0
    while current < len(exact) - 1:
        i0, v0 = exact[current]
        best: Optional[Tuple[Fraction, int]] = None
        for idx in range(current + 1, len(exact)):
            i1, v1 = exact[idx]
            slope = (v1 - v0) / (i1 - i0)
            if best is None or slope <= best[0]:
                best = (slope, idx)
        slope, current = best
        segments.append((slope, exact[current][0] - i0))
        vertices.append(exact[current])

    first, last = exact[0][0], exact[-1][0]
    for i, bound in unknown:
        if i < first or i > last:
            raise PrecisionExhausted(f"Coefficient {i} is zero to precision outside the known hull.")
        for (a, va), (b, _), (slope, _) in zip(vertices, vertices[1:], segments):
            if a <= i <= b and bound < va + slope * (i - a):
                raise PrecisionExhausted(
                    f"Coefficient {i} is only known to have valuation >= {bound}, below the hull."
                )
    return NewtonPolygon(vertices=tuple(vertices), segments=tuple(segments))


def _extend(x: Any, precision: int) -> Any:
    """Treat the representative of x as exact up to the given precision."""
    if isinstance(x, PAdicValue):
        return x.with_precision(precision) if x else PAdicValue.zero(x.p, precision)
    if isinstance(x, TowerElement):
        return TowerElement(x.tower, x.level, [_extend(c, precision) for c in x.slots])
    return x


def _status(tower: LocalTower, x: Any, level: int) -> Tuple[str, Any]:
    if isinstance(x, (int, Fraction)):
        if x == 0:
            return "zero", math.inf
        return "exact", rational_valuation(x, tower.p) * tower.ramification_index(level)
    return tower.val_status(x, level)


def hensel_root(
    f: Poly,
    seed: Any,
    tower: Optional[LocalTower] = None,
    p: Optional[int] = None,
    precision: Optional[int] = None,
    max_iterations: Optional[int] = None,
) -> Any:
    """
    Lift an approximate simple root by Newton iteration.

    Parameters
    ----------
    f: Poly
        The polynomial, with coefficients in the tower (rationals allowed).
    seed: int, Fraction, PAdicValue, TowerElement
        The starting approximation, with v(f(seed)) > 2 v(f'(seed)).
    tower: LocalTower, optional
        The tower of the seed; a bare Q_p tower is used otherwise.
    p: integer, optional
        The prime, when neither tower nor a PAdicValue seed determines it.
    precision: integer, optional
        Working precision in digits of p.
    max_iterations: integer, optional
        Newton step budget, by default enough for quadratic convergence to the precision.

    Returns
    -------
    PAdicValue or TowerElement
        The root; for Q_p roots the precision is certified as v(f(x)) - v(f'(x)).
    """
    if tower is None:
        if isinstance(seed, (PAdicValue, TowerElement)):
            tower = seed.tower if isinstance(seed, TowerElement) else LocalTower(seed.p, seed.precision)
        else:
            assert p is not None, "Pass 'p' or a tower to lift a rational seed."
            tower = LocalTower(p, precision or DEFAULT_PRECISION)
    precision = precision or tower.precision
    df = f.derivative()

    if f.degree == 1:
        return -tower.coerce(f[0]) / tower.coerce(f[1])

    x = _extend(tower.coerce(seed), precision)
    level = level_of(x)
    fx, dfx = f(x), df(x)
    status_f, v_f = _status(tower, fx, level)
    status_d, v_d = _status(tower, dfx, level)
    if status_d != "exact":
        raise HenselConditionFailed(f"The derivative vanishes at the seed {seed!r} to precision.")
    if status_f == "exact" and v_f <= 2 * v_d:
        raise HenselConditionFailed(
            f"v(f(seed)) = {v_f} is not larger than 2 v(f'(seed)) = {2 * v_d}; the seed is too coarse."
        )

    budget = max_iterations or (precision * tower.ramification_index(level)).bit_length() + 4
    for step in range(budget):
        if status_f != "exact":
            break
        x = _extend(x - fx / dfx, precision)
        fx, dfx = f(x), df(x)
        status_f, v_f = _status(tower, fx, level)
        status_d, v_d = _status(tower, dfx, level)
        log.debug("Hensel step %d: v(f(x)) = %s (%s).", step + 1, v_f, status_f)
    else:
        if status_f == "exact":
            raise HenselConditionFailed(f"Newton iteration did not reach precision {precision} in {budget} steps.")

    if isinstance(x, PAdicValue):
        certified = min(precision, int(v_f) - int(v_d)) if v_f != math.inf else precision
        return x.with_precision(max(certified, 0))
    return x


def _coerce_poly(tower: LocalTower, g: Poly) -> Poly:
    return Poly(c if isinstance(c, (PAdicValue, TowerElement)) else tower.scalar(c) for c in g.coeffs)


def is_eisenstein(g: Poly, tower: LocalTower) -> bool:
    """True iff g is monic with a single Newton segment of slope -1/deg over the top level."""
    if g.degree < 1 or g.leading != 1:
        return False
    polygon = newton_polygon(g, tower=tower, level=tower.height)
    return polygon.segments == ((Fraction(-1, g.degree), g.degree),) and polygon.vertices[0] == (0, 1)


def push_eisenstein(tower: LocalTower, g: Poly) -> LocalTower:
    """
    Adjoin a root of an Eisenstein polynomial over the top level of the tower.

    Parameters
    ----------
    tower: LocalTower
        The tower to extend.
    g: Poly
        Monic, with coefficients in the tower and a single polygon segment of slope -1/deg g.

    Returns
    -------
    LocalTower
        The extended tower; its ramification index is multiplied by deg g.
    """
    g = _coerce_poly(tower, g)
    if not is_eisenstein(g, tower):
        raise NotEisenstein(f"{g!r} is not Eisenstein over level {tower.height} of the tower.")
    extended = tower.push(g, LevelKind.EISENSTEIN)
    log.debug("Pushed an Eisenstein level of degree %d, e = %d.", g.degree, extended.ramification_index())
    return extended


def push_inert(tower: LocalTower, g: Poly) -> LocalTower:
    """
    Adjoin the unramified level defined by g, monic over Z and irreducible modulo p.

    Parameters
    ----------
    tower: LocalTower
        The tower to extend; it may hold at most one inert level.
    g: Poly
        A monic polynomial with p-integral rational coefficients.

    Returns
    -------
    LocalTower
        The extended tower; its residue degree is multiplied by deg g.
    """
    assert all(lvl.kind != LevelKind.INERT for lvl in tower.levels), "A tower holds a single inert level."
    assert all(isinstance(c, (int, Fraction)) for c in g.coeffs), "Inert levels are defined over Q."
    if g.leading != 1:
        raise PAdicError("Inert level polynomials must be monic.")
    residues = [int(Fraction(c).numerator * pow(Fraction(c).denominator, -1, tower.p)) % tower.p for c in g.coeffs]
    if not sympy.Poly(list(reversed(residues)), sympy.Symbol("x"), modulus=tower.p).is_irreducible:
        raise PAdicError(f"{g!r} is not irreducible modulo {tower.p}.")
    return tower.push(_coerce_poly(tower, g), LevelKind.INERT)


def norm_step(x: TowerElement) -> Any:
    """
    Compute N_{E_k / E_{k-1}}(x).

    Parameters
    ----------
    x: TowerElement
        An element of level k >= 1.

    Returns
    -------
    PAdicValue or TowerElement
        The norm, an element of level k - 1; for the adjoined root it is (-1)^deg g · g(0).
    """
    assert isinstance(x, TowerElement) and x.level >= 1, "Norms are taken from a level k >= 1."
    return x.norm()


def rational_reconstruction(a: int, p: int, k: int) -> Optional[Fraction]:
    """
    Find the rational n/d with |n|, |d| <= sqrt(p^k / 2) and n ≡ a·d modulo p^k.

    Parameters
    ----------
    a: integer
        The residue.
    p: integer
        The prime.
    k: integer
        The exponent of the modulus.

    Returns
    -------
    Fraction or None
        The reconstruction, None when no small rational exists.
    """
    assert_prime(p)
    modulus = p**k
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, a % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, s1) != 1 or s1 % p == 0:
        return None
    return Fraction(r1, s1)


def reconstruct(x: PAdicValue) -> Optional[Fraction]:
    """Rational reconstruction of a Q_p value, valuation included."""
    if not x:
        return Fraction(0)
    k = x.relative_precision
    unit = rational_reconstruction(x.unit, x.p, k)
    if unit is None:
        return None
    return unit * Fraction(x.p) ** x.valuation



def _rescale(f: Poly, p: int, v: int) -> Poly:
    """Return p^(-m) f(p^v y) with m chosen so that the coefficients are primitive in Z_p."""
    scaled = [Fraction(c) * Fraction(p) ** (v * i) for i, c in enumerate(f.coeffs)]
    m = min(rational_valuation(c, p) for c in scaled if c != 0)
    return Poly([c / Fraction(p) ** m for c in scaled])


def _dominant_slope(f: Poly, p: int, polygon: NewtonPolygon, v: Fraction) -> Optional[Fraction]:
    """
    Return the slope of the polygon segment spanned by the terms c_i x^i of least valuation when v(x) = v.

    None when a single term dominates, or when the dominant terms do not lie on one segment.
    """
    terms = {i: rational_valuation(c, p) + i * v for i, c in enumerate(f.coeffs) if c != 0}
    least = min(terms.values())
    dominant = [i for i, t in terms.items() if t == least]
    lo, hi = min(dominant), max(dominant)
    if lo == hi:
        return None
    for (a, _), (b, _), (slope, _) in zip(polygon.vertices, polygon.vertices[1:], polygon.segments):
        if a <= lo and hi <= b:
            return slope
    return None


def newton_hensel_consistency(
    f: Poly, p: int, precision: int = DEFAULT_PRECISION, seed_digits: int = 2
) -> NewtonHenselReport:
    """
    Lift the roots of f in Q_p segment by segment and compare their valuations with the slopes
    of the Newton polygon.

    For every segment of integral slope -v, f is rescaled to g(y) = p^(-m) f(p^v y) and the units
    modulo p^seed_digits are lifted as roots of g; x = p^v y is then a root of f. Segments of
    non-integral slope carry no roots in Q_p and are not seeded. Each lifted root is then located
    on the polygon independently of its seed: the terms of f of least valuation at v(x) must
    cancel, so they must span a segment, and its negated slope is recorded next to v(x). No
    segment may carry more roots than its length.

    Parameters
    ----------
    f: Poly
        A nonzero polynomial with rational coefficients.
    p: integer
        The prime.
    precision: integer
        Working precision in digits of p.
    seed_digits: integer
        Seeds run over the units modulo p^seed_digits of every rescaled polynomial.

    Returns
    -------
    NewtonHenselReport
        The polygon, the (valuation, negated slope) pairs and any disagreement.
    """
    assert_prime(p)
    polygon = newton_polygon(f, p=p)
    lifted: List[PAdicValue] = []
    for slope, _ in polygon.segments:
        if slope.denominator != 1:
            continue
        v = -int(slope)
        g = _rescale(f, p, v)
        dg = g.derivative()
        for seed in range(1, p**seed_digits):
            if seed % p == 0:
                continue
            gy, dgy = g(seed), dg(seed)
            if gy == 0:
                y = PAdicValue.from_rational(seed, p, precision)
            elif dgy == 0 or rational_valuation(gy, p) <= 2 * rational_valuation(dgy, p):
                continue
            else:
                y = hensel_root(g, seed, p=p, precision=precision)
            root = y * Fraction(p) ** v
            if not root or any(not (root - other) for other in lifted):
                continue
            lifted.append(root)

    pairs: List[Tuple[Fraction, Fraction]] = []
    failures: List[str] = []
    counts: Dict[Fraction, int] = {}
    for root in lifted:
        v = Fraction(root.val())
        slope = _dominant_slope(f, p, polygon, v)
        if slope is None:
            failures.append(f"root of valuation {v} does not lie on any segment")
            continue
        pairs.append((v, -slope))
        counts[slope] = counts.get(slope, 0) + 1
    for slope, length in polygon.segments:
        if counts.get(slope, 0) > length:
            failures.append(f"{counts[slope]} roots on the segment of slope {slope} and length {length}")
    log.debug("Lifted %d roots in Q_%d; %d disagreements with the polygon.", len(lifted), p, len(failures))
    return NewtonHenselReport(p=p, polygon=polygon, roots=tuple(sorted(pairs)), failures=tuple(failures))
