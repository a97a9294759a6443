"""This module contains the certified complex numerics: root finding, preimage trees and the root-of-unity, trace and fiber witnesses."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import cmath
import logging
import math
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from iterfield.functions.algebra_func import _to_sympy, conjugate, iterate, power_composite_order
from iterfield.functions.dynamics_func import (
    chebyshev_map,
    detect_period,
    division_polynomials,
    is_exceptional,
    lattes_multiplication_map,
)
from iterfield.helpers.asserts import assert_min_degree, assert_positive
from iterfield.helpers.constants import (
    DEFAULT_CHECK_TOLERANCE,
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_ORBIT_BOUND,
    DEFAULT_ROOT_TOLERANCE,
    DEFAULT_TRACE_TOLERANCE,
    DEFAULT_WITNESS_TOLERANCE,
)
from iterfield.helpers.exceptions import (
    DegenerateFiber,
    DegenerateLift,
    HypothesisFailure,
    NonConvergence,
    NotPowerComposite,
    ToleranceExceeded,
)
from iterfield.helpers.polynomial import INFINITY, Mobius, Poly, RationalMap, is_infinity
from iterfield.helpers.reports import (
    CertifiedRoot,
    Expression,
    LattesFiberReport,
    NodeRef,
    PowerStructureReport,
    PreimageNode,
    PreimageTree,
    Product,
    Quotient,
    Sum,
    UnityWitness,
    relative_error,
)
from iterfield.helpers.utils import lex_key, to_rat

log = logging.getLogger(__name__)

# Relative radius under which root approximations of an inexact polynomial are merged.
CLUSTER_RADIUS = 1e-5

Point = Union[complex, Any]
EllipticPoint = Union[Tuple[complex, complex], Any]


def _is_exact(poly: Poly) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in poly.coeffs)


def _to_numpy(poly: Poly) -> np.ndarray:
    """Coefficients highest degree first, the order of np.polyval."""
    return np.array([complex(c) for c in reversed(poly.coeffs)], dtype=complex)


def _residual_bounds(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """|p(z)| plus the rounding error of Horner evaluation."""
    scale = np.polyval(np.abs(coeffs), np.abs(z))
    rounding = 2 * len(coeffs) * np.finfo(float).eps * scale
    return np.abs(np.polyval(coeffs, z)) + rounding


def _aberth(
    coeffs: np.ndarray,
    seeds: np.ndarray,
    multiplicities: np.ndarray,
    tolerance: float,
    max_iterations: int,
) -> np.ndarray:
    """
    Refine all roots at once with the Aberth-Ehrlich correction.

    Parameters
    ----------
    coeffs: np.ndarray
        Polynomial coefficients, highest degree first.
    seeds: np.ndarray
        Initial approximations of the distinct roots.
    multiplicities: np.ndarray
        The multiplicity attached to each seed.
    tolerance: float
        Target relative residual |p(z)| <= tolerance * sum |c_k| |z|^k.
    max_iterations: integer
        Iteration budget.

    Returns
    -------
    np.ndarray
        The refined approximations.
    """
    derivative = np.polyder(coeffs)
    abs_coeffs = np.abs(coeffs)
    z = np.array(seeds, dtype=complex)
    for iteration in range(max_iterations):
        values = np.polyval(coeffs, z)
        done = np.abs(values) <= tolerance * np.polyval(abs_coeffs, np.abs(z))
        if np.all(done):
            log.debug("Aberth iteration converged after %d steps for degree %d.", iteration, len(coeffs) - 1)
            return z
        with np.errstate(divide="ignore", invalid="ignore"):
            differences = z[:, None] - z[None, :]
            np.fill_diagonal(differences, np.inf)
            repulsion = (multiplicities[None, :] / differences).sum(axis=1)
            step = multiplicities * values / (np.polyval(derivative, z) - values * repulsion)
        step = np.where(np.isfinite(step), step, 0)
        z = np.where(done, z, z - step)
    raise NonConvergence(
        f"Root refinement of a degree {len(coeffs) - 1} polynomial did not reach the relative residual "
        f"{tolerance:.1e} within {max_iterations} iterations."
    )


def _cluster(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Merge approximations closer than CLUSTER_RADIUS into centres with multiplicities."""
    remaining = sorted(range(len(z)), key=lambda i: lex_key(z[i]))
    centres, counts = [], []
    while remaining:
        i = remaining.pop(0)
        group = [i] + [j for j in remaining if abs(z[j] - z[i]) <= CLUSTER_RADIUS * max(1.0, abs(z[i]))]
        remaining = [j for j in remaining if j not in group]
        centres.append(np.mean(z[group]))
        counts.append(len(group))
    return np.array(centres, dtype=complex), np.array(counts, dtype=float)


def _numeric_roots(
    coeffs: np.ndarray, tolerance: float, max_iterations: int, cluster: bool
) -> Tuple[np.ndarray, np.ndarray]:
    if len(coeffs) == 2:
        return np.array([-coeffs[1] / coeffs[0]]), np.array([1.0])
    seeds = np.roots(coeffs)
    if cluster:
        centres, counts = _cluster(seeds)
        try:
            return _aberth(coeffs, centres, counts, tolerance, max_iterations), counts
        except NonConvergence:
            log.debug("Clustered refinement failed; retrying with every root simple.")
    ones = np.ones(len(seeds))
    return _aberth(coeffs, seeds, ones, tolerance, max_iterations), ones


def roots_certified(
    poly: Poly,
    tolerance: float = DEFAULT_ROOT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> List[CertifiedRoot]:
    """
    Find every complex root of a polynomial with a residual certificate.

    Rational polynomials are split exactly first: square-free decomposition and rational
    factorisation give multiplicities and exact rational roots, the remaining irreducible
    factors are solved numerically. Polynomials with complex coefficients are solved on the
    whole, with nearby approximations clustered into multiple roots.

    Parameters
    ----------
    poly: Poly
        A polynomial of degree at least 1 over Q or C.
    tolerance: float
        Relative residual each root must reach.
    max_iterations: integer
        Iteration budget of the refinement.

    Returns
    -------
    list
        CertifiedRoot values in lexicographic order; multiplicities add up to the degree.
    """
    assert poly.degree >= 1, "Root finding needs a polynomial of degree at least 1."
    original = _to_numpy(poly)
    found: List[Tuple[complex, int, Optional[Fraction]]] = []

    if _is_exact(poly):
        _, square_free = _to_sympy(poly, domain=sympy.QQ).sqf_list()
        for part, multiplicity in square_free:
            _, factors = part.factor_list()
            for factor, _ in factors:
                fcoeffs = [Fraction(int(c.p), int(c.q)) for c in factor.all_coeffs()]
                if factor.degree() == 1:
                    root = -fcoeffs[1] / fcoeffs[0]
                    found.append((complex(root), multiplicity, root))
                    continue
                numeric = np.array([complex(c) for c in fcoeffs], dtype=complex)
                z, _ = _numeric_roots(numeric, tolerance, max_iterations, cluster=False)
                found += [(complex(value), multiplicity, None) for value in z]
    else:
        z, counts = _numeric_roots(original, tolerance, max_iterations, cluster=True)
        found += [(complex(value), int(count), None) for value, count in zip(z, counts)]

    bounds = _residual_bounds(original, np.array([value for value, _, _ in found], dtype=complex))
    roots = [
        CertifiedRoot(
            approximation=value,
            residual_bound=0.0 if exact is not None else float(bound),
            multiplicity=multiplicity,
            exact=exact,
        )
        for (value, multiplicity, exact), bound in zip(found, bounds)
    ]
    assert sum(r.multiplicity for r in roots) == poly.degree, "Root multiplicities must add up to the degree."
    return sorted(roots, key=lambda r: lex_key(r.approximation))


def _fiber(phi: RationalMap, alpha: Any, exact: Any, tolerance: float) -> Tuple[Optional[Poly], int]:
    """
    The polynomial whose roots are the finite preimages of alpha, and the multiplicity of ∞.
    """
    d = phi.degree
    if is_infinity(alpha):
        h = phi.den
    elif exact is not None:
        h = phi.num - phi.den * exact
    else:
        h = phi.num.map(complex) - phi.den.map(complex) * alpha
        top = h.padded(d + 1)[d]
        scale = max(abs(complex(c)) for c in h.coeffs)
        if h.degree == d and abs(top) <= tolerance * scale:
            raise DegenerateFiber(
                f"The fiber polynomial over {alpha} drops in degree only up to rounding; "
                "the preimage at ∞ cannot be decided numerically."
            )
    return (h if h.degree >= 1 else None), d - max(h.degree, 0)


def preimage_tree(
    phi: RationalMap,
    b: Any,
    depth: int,
    tolerance: float = DEFAULT_ROOT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> PreimageTree:
    """
    Build the iterated preimages φ^-k(b) for k <= depth as a tree.

    Children of a node α are the certified roots of f - α·g, in lexicographic order, with
    an explicit ∞ node when the fiber polynomial drops in degree. Node multiplicities are
    multiplicities as roots of φ^k(x) = b, so every level counts d^k nodes with multiplicity.

    Parameters
    ----------
    phi: RationalMap
        A normalised map of degree at least 2.
    b: Fraction, complex or INFINITY
        The basepoint.
    depth: integer
        Number of levels below the basepoint.
    tolerance: float
        Relative residual of the root finder.
    max_iterations: integer
        Iteration budget of the root finder.

    Returns
    -------
    PreimageTree
        Levels 0..depth with node ids "level:index".
    """
    assert_min_degree(phi.degree)
    assert isinstance(depth, int) and depth >= 0, f"'depth' must be a non-negative integer, got {depth!r}."
    if isinstance(b, int):
        b = Fraction(b)
    exact = b if (isinstance(b, Fraction) or is_infinity(b)) else None
    value = b if is_infinity(b) else complex(b)
    levels: List[Tuple[PreimageNode, ...]] = [(PreimageNode("0:0", 0, value, None, 1, 0.0, exact),)]
    tolerances = [0.0]

    for k in range(1, depth + 1):
        nodes: List[PreimageNode] = []
        for parent in levels[-1]:
            exact_parent = parent.exact if not is_infinity(parent.value) else None
            h, at_infinity = _fiber(phi, parent.value, exact_parent, tolerance)
            children: List[Tuple[Any, int, float, Any]] = []
            if h is not None:
                for root in roots_certified(h, tolerance=tolerance, max_iterations=max_iterations):
                    children.append((root.approximation, root.multiplicity, root.residual_bound, root.exact))
            if at_infinity:
                children.append((INFINITY, at_infinity, 0.0, INFINITY))
            for child, multiplicity, bound, child_exact in children:
                node_id = f"{k}:{len(nodes)}"
                nodes.append(
                    PreimageNode(node_id, k, child, parent.id, parent.multiplicity * multiplicity, bound, child_exact)
                )
                log.debug("Node %s over %s has multiplicity %d.", node_id, parent.id, multiplicity)
        levels.append(tuple(nodes))
        tolerances.append(max((n.residual_bound for n in nodes), default=0.0))
        log.info("Preimage level %d holds %d distinct nodes.", k, len(nodes))

    return PreimageTree(basepoint=b, depth=depth, levels=tuple(levels), tolerances=tuple(tolerances))


def _expanded(values: Sequence[Any], multiplicities: Sequence[int]) -> List[Any]:
    return [v for v, m in zip(values, multiplicities) for _ in range(m)]


def _match(values: Sequence[Point], targets: Sequence[Point]) -> Tuple[int, float]:
    """
    Greedy nearest matching of two multisets of points of P^1.

    Returns the number of matched values and the worst relative distance.
    """
    unused = list(targets)
    worst, matched = 0.0, 0
    for value in sorted(values, key=lambda v: (1, 0.0, 0.0) if is_infinity(v) else (0,) + lex_key(v)):
        if not unused:
            return matched, float("inf")
        if is_infinity(value):
            candidates = [i for i, t in enumerate(unused) if is_infinity(t)]
            if not candidates:
                return matched, float("inf")
            unused.pop(candidates[0])
            matched += 1
            continue
        finite = [i for i, t in enumerate(unused) if not is_infinity(t)]
        if not finite:
            return matched, float("inf")
        best = min(finite, key=lambda i: abs(unused[i] - value))
        worst = max(worst, relative_error(value, unused.pop(best)))
        matched += 1
    return matched, worst


def _zeta_orbits(values: Sequence[complex], m: int) -> Tuple[List[List[int]], float]:
    """
    Partition value indices into orbits under multiplication by ζ_m = exp(2πi/m).

    The first index of each orbit is its lexicographically smallest member, the float is
    the worst relative mismatch met while closing the orbits.
    """
    zeta = cmath.exp(2j * math.pi / m)
    remaining = sorted(range(len(values)), key=lambda i: lex_key(values[i]))
    orbits: List[List[int]] = []
    worst = 0.0
    while remaining:
        first = remaining.pop(0)
        orbit = [first]
        for k in range(1, m):
            if not remaining:
                return orbits + [orbit], float("inf")
            target = values[first] * zeta**k
            nearest = min(remaining, key=lambda i: abs(values[i] - target))
            worst = max(worst, relative_error(values[nearest], target))
            remaining.remove(nearest)
            orbit.append(nearest)
        orbits.append(orbit)
    return orbits, worst


def verify_power_structure(
    phi: RationalMap,
    alpha: Union[Fraction, complex],
    m: int,
    tolerance: float = DEFAULT_CHECK_TOLERANCE,
    root_tolerance: float = DEFAULT_ROOT_TOLERANCE,
    strict: bool = True,
) -> PowerStructureReport:
    """
    Check the ζ_m-orbit structure and the product formulas of the fiber over α.

    For φ = f/g in K(x^m) with φ(0) = 0 and φ(∞) = ∞ of degree d, and c = g(0) / lead(f):
    the roots of h = f - α·g split into ζ_m-orbits of size m, their product is
    (-1)^(d+1)·c·α and the m-th power of the product of orbit representatives is
    (-1)^((m+d)/m)·c·α.

    Parameters
    ----------
    phi: RationalMap
        The map.
    alpha: Fraction or complex
        A point other than 0 and ∞.
    m: integer
        The power structure, at least 2.
    tolerance: float
        Relative tolerance of the three comparisons.
    root_tolerance: float
        Relative residual of the root finder.
    strict: boolean
        Raise ToleranceExceeded on failure instead of returning a failing report.

    Returns
    -------
    PowerStructureReport
        Orbits, products and the relative error of each check.
    """
    assert_min_degree(phi.degree)
    if m < 2 or power_composite_order(phi) % m:
        raise NotPowerComposite(f"The map is not in K(x^{m}) (power composite order {power_composite_order(phi)}).")
    if phi.evaluate(Fraction(0)) != 0 or not is_infinity(phi.evaluate(INFINITY)):
        raise NotPowerComposite("The map must fix 0 and ∞.")
    if isinstance(alpha, int):
        alpha = Fraction(alpha)
    assert alpha != 0, "The fiber over 0 contains 0; choose α different from 0 and ∞."

    d = phi.degree
    if isinstance(alpha, Fraction):
        h = phi.num - phi.den * alpha
    else:
        h = phi.num.map(complex) - phi.den.map(complex) * alpha
    roots = roots_certified(h, tolerance=root_tolerance)
    values = _expanded([r.approximation for r in roots], [r.multiplicity for r in roots])

    alpha_c = complex(alpha)
    c = complex(phi.den[0]) / complex(phi.num.leading)
    product = complex(np.prod(np.array(values, dtype=complex)))
    expected_product = (-1) ** (d + 1) * c * alpha_c
    orbits, orbit_error = _zeta_orbits(values, m)
    representatives = complex(np.prod(np.array([values[o[0]] for o in orbits], dtype=complex)))
    expected_power = (-1) ** ((m + d) // m) * c * alpha_c

    report = PowerStructureReport(
        m=m,
        degree=d,
        alpha=alpha_c,
        orbits=tuple(tuple(values[i] for i in o) for o in orbits),
        product=product,
        expected_product=expected_product,
        representative_power=representatives**m,
        expected_power=expected_power,
        errors={
            "orbit": orbit_error,
            "product": relative_error(product, expected_product),
            "power": relative_error(representatives**m, expected_power),
        },
        tolerance=tolerance,
    )
    if strict and not report.passed:
        check, error = max(report.errors.items(), key=lambda item: item[1])
        raise ToleranceExceeded(check, error, tolerance)
    return report


def periodic_lcm(phi: RationalMap, n: int = DEFAULT_ORBIT_BOUND) -> int:
    """
    Return the lcm r of the periods of 0 and ∞, so that φ^r fixes both.

    Raises HypothesisFailure when 0 or ∞ is not periodic within n steps.
    """
    r = 1
    for point in (Fraction(0), INFINITY):
        report = detect_period(phi, point, n=n)
        if not report.is_periodic:
            raise HypothesisFailure(f"{'∞' if is_infinity(point) else point} is periodic under φ")
        r = r * report.period // math.gcd(r, report.period)
    return r


def _nearest_primitive_root(value: complex, order: int) -> complex:
    ks = np.array([k for k in range(order) if math.gcd(k, order) == 1])
    candidates = np.exp(2j * np.pi * ks / order)
    return complex(candidates[int(np.argmin(np.abs(candidates - value)))])


def _product_expression(nodes: Sequence[PreimageNode]) -> Expression:
    if len(nodes) == 1:
        return NodeRef(nodes[0].id)
    return Product(tuple(NodeRef(n.id) for n in nodes))


def _orbit_representatives(tree: PreimageTree, node: PreimageNode, m: int, tolerance: float) -> List[PreimageNode]:
    children = tree.children(node)
    expanded = _expanded(children, [c.multiplicity // node.multiplicity for c in children])
    orbits, error = _zeta_orbits([c.value for c in expanded], m)
    if error > tolerance:
        raise ToleranceExceeded("orbit partition", error, tolerance)
    return [expanded[o[0]] for o in orbits]


def witness_root_of_unity(
    phi: RationalMap,
    b: Union[int, Fraction],
    m: int,
    j: int,
    tolerance: float = DEFAULT_WITNESS_TOLERANCE,
    root_tolerance: float = DEFAULT_ROOT_TOLERANCE,
    mobius: Optional[Mobius] = None,
    strict: bool = True,
) -> UnityWitness:
    """
    Build a replayable expression over preimage nodes whose value is a primitive m^j-th root of unity.

    With r the lcm of the periods of 0 and ∞, ψ = φ^r lies in K(x^m) and fixes 0 and ∞.
    Two level-one nodes β, β' = ζ_m·β give ζ_m = β'/β. If A'/A is a primitive m^k-th root
    of unity for node products A, A', replacing each node by the product of its orbit
    representatives one level down gives a primitive m^(k+1)-th root, since the m-th power
    of a representative product is ±c times the node.

    Parameters
    ----------
    phi: RationalMap
        The map, in K(x^m) after the optional conjugation.
    b: Fraction
        A rational basepoint, not exceptional and different from 0 and ∞.
    m: integer
        The power structure, at least 2.
    j: integer
        The exponent of the target order m^j.
    tolerance: float
        Allowed distance to the nearest primitive m^j-th root of unity.
    root_tolerance: float
        Relative residual of the root finder.
    mobius: Mobius, optional
        Conjugation applied to φ and b first.
    strict: boolean
        Raise ToleranceExceeded on failure instead of returning a failing witness.

    Returns
    -------
    UnityWitness
        The witness; its level is r·j in terms of φ.
    """
    assert_min_degree(phi.degree)
    assert_positive(j, "j")
    if m < 2:
        raise HypothesisFailure("m is at least 2")
    b = to_rat(b)
    if mobius is not None:
        phi = conjugate(phi, mobius)
        b = mobius(b)
    if is_infinity(b) or b == 0:
        raise HypothesisFailure("b is different from 0 and ∞")
    if is_exceptional(phi, b):
        raise HypothesisFailure("b is not exceptional")
    r = periodic_lcm(phi)
    psi = iterate(phi, r) if r > 1 else phi
    if power_composite_order(psi) % m:
        raise HypothesisFailure(f"φ^{r} lies in K(x^{m})")

    tree = preimage_tree(psi, b, j, tolerance=root_tolerance)
    level_one = [n for n in tree.level(1) if not n.is_infinity]
    beta = level_one[0]
    target = beta.value * cmath.exp(2j * math.pi / m)
    partner = min(level_one, key=lambda n: abs(n.value - target))
    if relative_error(partner.value, target) > tolerance:
        raise ToleranceExceeded("orbit partition", relative_error(partner.value, target), tolerance)

    numerator, denominator = [partner], [beta]
    for _ in range(2, j + 1):
        numerator = [rep for n in numerator for rep in _orbit_representatives(tree, n, m, tolerance)]
        denominator = [rep for n in denominator for rep in _orbit_representatives(tree, n, m, tolerance)]

    expression = Quotient(_product_expression(numerator), _product_expression(denominator))
    nodes = {n.id: n.value for n in numerator + denominator}
    value = expression.evaluate(nodes)
    expected = _nearest_primitive_root(value, m**j)
    witness = UnityWitness(
        target=(m, j),
        expression=expression,
        level=r * j,
        numeric_error=abs(value - expected),
        value=value,
        expected=expected,
        nodes=nodes,
        kind="root",
        tolerance=tolerance,
    )
    log.info(
        "Witness of a primitive %d-th root of unity at level %d with error %.2e.", m**j, r * j, witness.numeric_error
    )
    if strict and not witness.passed:
        raise ToleranceExceeded("witness", witness.numeric_error, tolerance)
    return witness


def _v(z: complex) -> complex:
    return z + 1 / z


def _nearest_node(nodes: Sequence[PreimageNode], value: complex, tolerance: float) -> PreimageNode:
    best = min(nodes, key=lambda n: abs(n.value - value))
    error = relative_error(best.value, value)
    if error > tolerance:
        raise ToleranceExceeded("fiber membership", error, tolerance)
    return best


def chebyshev_trace_witness(
    d: int,
    b: Union[int, Fraction, complex],
    n: int,
    tolerance: float = DEFAULT_TRACE_TOLERANCE,
    root_tolerance: float = DEFAULT_ROOT_TOLERANCE,
    strict: bool = True,
) -> UnityWitness:
    """
    Express ζ + 1/ζ for ζ = exp(2πi/d^n) through three points of T_d^-n(b).

    With b = v(b') and γ a d^n-th root of b', the points v(γ), v(ζγ) and v(γ/ζ) lie in
    T_d^-n(b) and v(ζ) = (v(ζγ) + v(γ/ζ)) / v(γ).

    Parameters
    ----------
    d: integer
        The Chebyshev degree, at least 2.
    b: Fraction or complex
        The basepoint.
    n: integer
        The preimage level.
    tolerance: float
        Allowed distance to 2cos(2π/d^n) and of the three points to the tree nodes.
    root_tolerance: float
        Relative residual of the root finder.
    strict: boolean
        Raise ToleranceExceeded on failure instead of returning a failing witness.

    Returns
    -------
    UnityWitness
        A witness of kind "trace" over nodes of the preimage tree of T_d.
    """
    assert d >= 2, "The Chebyshev degree must be at least 2."
    assert_positive(n, "n")
    order = d**n
    b_c = complex(b)
    b_prime = (b_c + cmath.sqrt(b_c * b_c - 4)) / 2
    if abs(b_prime) < 1:
        b_prime = 1 / b_prime
    zeta = cmath.exp(2j * math.pi / order)
    gamma0 = cmath.exp(cmath.log(b_prime) / order)
    lifts = [gamma0 * zeta**k for k in range(order)]
    sizes = [abs(_v(g)) for g in lifts]
    if max(sizes) <= math.sqrt(tolerance):
        raise DegenerateLift(f"Every lift γ of b' = {b_prime} has v(γ) = 0.")
    gamma = lifts[int(np.argmax(sizes))]

    tree = preimage_tree(chebyshev_map(d), Fraction(b) if isinstance(b, (int, Fraction)) else b_c, n, tolerance=root_tolerance)
    level = tree.level(n)
    centre = _nearest_node(level, _v(gamma), tolerance)
    plus = _nearest_node(level, _v(zeta * gamma), tolerance)
    minus = _nearest_node(level, _v(gamma / zeta), tolerance)

    expression = Quotient(Sum((NodeRef(plus.id), NodeRef(minus.id))), NodeRef(centre.id))
    nodes = {node.id: node.value for node in (centre, plus, minus)}
    value = expression.evaluate(nodes)
    expected = _v(zeta)
    witness = UnityWitness(
        target=(d, n),
        expression=expression,
        level=n,
        numeric_error=abs(value - expected),
        value=value,
        expected=expected,
        nodes=nodes,
        kind="trace",
        tolerance=tolerance,
    )
    log.info("Trace witness of ζ_%d + 1/ζ_%d with error %.2e.", order, order, witness.numeric_error)
    if strict and not witness.passed:
        raise ToleranceExceeded("trace witness", witness.numeric_error, tolerance)
    return witness


def elliptic_add(p: EllipticPoint, q: EllipticPoint, a: Union[int, Fraction], tolerance: float = 1e-9) -> EllipticPoint:
    """
    Add two points of y^2 = x^3 + a*x + b numerically by the chord-tangent law.

    Points are (x, y) pairs of complex numbers and INFINITY is the neutral element.
    """
    if is_infinity(p):
        return q
    if is_infinity(q):
        return p
    (x1, y1), (x2, y2) = p, q
    if abs(x1 - x2) <= tolerance * max(1.0, abs(x1)):
        if abs(y1 + y2) <= tolerance * max(1.0, abs(y1)):
            return INFINITY
        slope = (3 * x1 * x1 + complex(a)) / (2 * y1)
    else:
        slope = (y2 - y1) / (x2 - x1)
    x3 = slope * slope - x1 - x2
    return (x3, slope * (x1 - x3) - y1)


def torsion_points(
    a: Union[int, Fraction], b: Union[int, Fraction], N: int, tolerance: float = DEFAULT_ROOT_TOLERANCE
) -> List[EllipticPoint]:
    """
    Enumerate the N^2 points of E[N] numerically.

    x-coordinates are the roots of the division polynomial ψ_N, and of x^3 + a*x + b for
    the 2-torsion when N is even; each x with y != 0 gives the two points (x, ±y).
    """
    assert_positive(N, "N")
    table = division_polynomials(to_rat(a), to_rat(b))
    points: List[EllipticPoint] = [INFINITY]
    sources = [table[N]] if N % 2 else [table.curve, table[N]]
    for source in sources:
        if source.degree < 1:
            continue
        for root in roots_certified(source, tolerance=tolerance):
            x = root.approximation
            if source is table.curve:
                points.append((x, 0j))
                continue
            y = cmath.sqrt(complex(table.curve.map(complex)(x)))
            points.extend([(x, y), (x, -y)])
    assert len(points) == N * N, f"Expected {N * N} torsion points, found {len(points)}."
    return points


def lattes_fiber_check(
    a: Union[int, Fraction],
    b: Union[int, Fraction],
    d: int,
    x0: Union[int, Fraction],
    n: int,
    tolerance: float = DEFAULT_CHECK_TOLERANCE,
    root_tolerance: float = DEFAULT_ROOT_TOLERANCE,
    strict: bool = True,
) -> LattesFiberReport:
    """
    Compare φ^-n(x0) for the Lattès map φ of [d] with the torsion translates of one lift.

    For a point P0 with x(P0) in the fiber, φ^-n(x0) = {x(P0 + T) : T in E[d^n]}.

    Parameters
    ----------
    a, b: Fraction
        The curve y^2 = x^3 + a*x + b.
    d: integer
        The multiplier.
    x0: Fraction
        The basepoint on the x-line.
    n: integer
        The preimage level; 0 gives the fiber {x0}.
    tolerance: float
        Relative matching tolerance.
    root_tolerance: float
        Relative residual of the root finder.
    strict: boolean
        Raise ToleranceExceeded on failure instead of returning a failing report.

    Returns
    -------
    LattesFiberReport
        Fiber, translates and the matching statistics.
    """
    assert_positive(d, "d")
    assert n >= 0, "The level n must be non-negative."
    x0 = to_rat(x0)
    phi = lattes_multiplication_map(a, b, d)
    if n == 0:
        return LattesFiberReport(d, n, x0, (complex(x0),), (complex(x0),), 0.0, tolerance, 1)

    if d == 1:
        fiber = [complex(x0)]
    else:
        tree = preimage_tree(phi, x0, n, tolerance=root_tolerance)
        nodes = tree.level(n)
        fiber = _expanded([node.value for node in nodes], [node.multiplicity for node in nodes])
        assert tree.count_with_multiplicity(n) == d ** (2 * n), "The fiber must hold d^(2n) points with multiplicity."

    x1 = min(fiber, key=lex_key)
    y1 = cmath.sqrt(complex(x1**3 + complex(a) * x1 + complex(b)))
    translates = []
    for torsion in torsion_points(a, b, d**n, tolerance=root_tolerance):
        image = elliptic_add((x1, y1), torsion, a)
        translates.append(INFINITY if is_infinity(image) else image[0])

    matched, error = _match(fiber, translates)
    distinct = len({lex_key(t) for t in translates if not is_infinity(t)})
    report = LattesFiberReport(
        d=d,
        n=n,
        x0=x0,
        fiber=tuple(fiber),
        translates=tuple(translates),
        max_error=error,
        tolerance=tolerance,
        matched=matched,
    )
    log.info(
        "Lattès fiber of size %d matched %d translates (%d distinct), error %.2e.", len(fiber), matched, distinct, error
    )
    if strict and not report.passed:
        raise ToleranceExceeded("fiber translates", error, tolerance)
    return report


def conjugation_covariance(
    phi: RationalMap,
    mu: Mobius,
    b: Union[int, Fraction],
    n: int,
    tolerance: float = DEFAULT_ROOT_TOLERANCE,
) -> float:
    """
    Return the worst matching distance between μ(φ^-n(b)) and (μ∘φ∘μ^-1)^-n(μ(b)).

    Parameters
    ----------
    phi: RationalMap
        The map.
    mu: Mobius
        A Möbius transformation with rational entries.
    b: Fraction
        The basepoint.
    n: integer
        The preimage level.
    tolerance: float
        Relative residual of the root finder.

    Returns
    -------
    float
        The worst relative distance, ∞ when the multisets cannot be matched.
    """
    b = to_rat(b)
    psi = conjugate(phi, mu)
    left = preimage_tree(phi, b, n, tolerance=tolerance)
    right = preimage_tree(psi, mu(b), n, tolerance=tolerance)
    moved = [mu(node.value) for node in left.level(n) for _ in range(node.multiplicity)]
    target = [node.value for node in right.level(n) for _ in range(node.multiplicity)]
    matched, error = _match(moved, target)
    return error if matched == len(target) else float("inf")
