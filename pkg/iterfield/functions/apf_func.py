"""This module contains the APF pipeline: power-like reduction, fixed points, the normalised model and the norm-compatible Eisenstein tower."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import itertools
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_pow_mod, gf_strip

from iterfield.functions.algebra_func import compose_mod_p, conjugate_coefficients, iterate, reduce_map
from iterfield.functions.padic_func import (
    hensel_root,
    newton_polygon,
    norm_step,
    push_eisenstein,
    push_inert,
    reconstruct,
)
from iterfield.helpers.asserts import assert_min_degree, assert_positive, assert_prime
from iterfield.helpers.constants import (
    DEFAULT_INERT_DEGREE_BOUND,
    DEFAULT_M_MAX,
    DEFAULT_PRECISION,
    DEFAULT_REPLAY_DEGREE_BOUND,
    DEFAULT_RESIDUE_DEGREE_BOUND,
    default_depth,
)
from iterfield.helpers.enums import CertificateVerdict
from iterfield.helpers.exceptions import (
    AmbiguousPolygon,
    CertificateFailure,
    HenselConditionFailed,
    NotGoodReduction,
    NotPowerLikeWithin,
    PrecisionExhausted,
    ResidueExtensionTooLarge,
    UnitEquationUnsolvableAtPrecision,
    ZeroMap,
)
from iterfield.helpers.padic import LocalTower, PAdicValue, TowerElement
from iterfield.helpers.polynomial import INFINITY, Mobius, Poly, RationalMap, is_infinity
from iterfield.helpers.reports import (
    APFCertificate,
    ConjugatedModel,
    LevelRecord,
    PowerLikeData,
)
from iterfield.helpers.utils import multiplicity
from iterfield.helpers.warn import warn_precision_escalation, warn_semi_decidable

log = logging.getLogger(__name__)


def _is_rational(x: Any) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _div(a: Any, b: Any) -> Any:
    """Division that stays exact on rationals."""
    if _is_rational(a) and _is_rational(b):
        return Fraction(a) / Fraction(b)
    return a / b


def _residue(x: Any, p: int) -> int:
    if isinstance(x, PAdicValue):
        return x.residue()
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, p) % p


def _is_power_of(p: int, n: int) -> bool:
    return n >= p and p ** multiplicity(p, n) == n


def _power_map(reduced: RationalMap, p: int) -> Optional[Tuple[int, int]]:
    """(r, c) when the reduced map is c·x^(p^r) over F_p, None otherwise."""
    if reduced.den.degree != 0:
        return None
    exponents = reduced.num.exponents()
    if len(exponents) != 1 or not _is_power_of(p, exponents[0]):
        return None
    k = exponents[0]
    c = int(reduced.num[k]) * pow(int(reduced.den[0]), -1, p) % p
    return multiplicity(p, k), c


def powerlike_order(
    phi: RationalMap,
    p: int,
    m_max: int = DEFAULT_M_MAX,
    degree_bound: int = DEFAULT_RESIDUE_DEGREE_BOUND,
) -> PowerLikeData:
    """
    Find the least m with the reduction of φ^m equal to c·x^(p^r) over F_p.

    Parameters
    ----------
    phi: RationalMap
        A normalised map of degree at least 2 with p-integral coefficients.
    p: integer
        The residue characteristic.
    m_max: integer
        The largest iterate searched.
    degree_bound: integer
        Iterates whose degree exceeds this bound are not composed.

    Returns
    -------
    PowerLikeData
        The order m, the exponent r and the residue unit c.
    """
    assert_prime(p)
    assert_min_degree(phi.degree)
    assert_positive(m_max, "m_max")
    try:
        reduced = reduce_map(phi, p)
    except ZeroMap as exc:
        raise NotGoodReduction(f"The map has a vanishing denominator modulo {p}.") from exc
    if reduced.degree != phi.degree:
        raise NotGoodReduction(
            f"The reduction modulo {p} has degree {reduced.degree}, the map has degree {phi.degree}."
        )

    d = phi.degree
    if not _is_power_of(p, d):
        raise NotPowerLikeWithin(m_max, p)

    current = reduced
    for m in range(1, m_max + 1):
        if m > 1:
            if d**m > degree_bound:
                warn_semi_decidable("power-like iterate", degree_bound)
                raise NotPowerLikeWithin(m - 1, p)
            current = compose_mod_p(reduced, current, p)
        match = _power_map(current, p)
        if match is not None:
            r, c = match
            log.info("The reduction of the iterate of order %d is %d*x^(%d^%d).", m, c, p, r)
            return PowerLikeData(m=m, r=r, c=c, p=p)
        log.debug("Iterate %d does not reduce to a power map modulo %d.", m, p)

    warn_semi_decidable("power-like iterate", m_max)
    raise NotPowerLikeWithin(m_max, p)


def _small_root(f: Poly, p: int, precision: int) -> Any:
    """
    The unique root of positive valuation of f, exact when it is rational.

    Returns Fraction(0) when f(0) = 0.
    """
    tower = LocalTower(p, precision)
    if not f[0]:
        rest = Poly(f.coeffs[1:])
        if rest.is_zero or not rest[0]:
            raise AmbiguousPolygon("The fixed point at the origin is not simple.")
        if any(slope < 0 for slope, _ in newton_polygon(rest, tower=tower).segments):
            raise AmbiguousPolygon("More than one fixed point has positive valuation.")
        return Fraction(0)

    polygon = newton_polygon(f, tower=tower)
    small = sum(length for slope, length in polygon.segments if slope < 0)
    if small != 1:
        raise AmbiguousPolygon(f"The polygon has {small} roots of positive valuation, expected exactly one.")
    root = hensel_root(f, 0, p=p, precision=precision)
    candidate = reconstruct(root)
    if candidate is not None and f(candidate) == 0:
        log.debug("Recognised the fixed point %s as rational.", candidate)
        return candidate
    return root


def _fixed_points(phi_m: RationalMap, p: int, precision: int) -> Tuple[Any, Any]:
    n = phi_m.degree
    f = phi_m.num - Poly.x() * phi_m.den
    if f.is_zero:
        raise AmbiguousPolygon("Every point is fixed.")
    gamma = _small_root(f, p, precision)

    reversed_f = f.reciprocal(n + 1)
    y = _small_root(reversed_f, p, precision)
    delta = INFINITY if _is_rational(y) and y == 0 else _div(1, y)
    return gamma, delta


def fixed_points(phi_m: RationalMap, p: int, precision: int = DEFAULT_PRECISION) -> Tuple[Any, Any]:
    """
    Locate the fixed points γ of positive and δ of negative valuation of a power-like iterate.

    Parameters
    ----------
    phi_m: RationalMap
        The iterate φ^m returned for 'powerlike_order'.
    p: integer
        The residue characteristic.
    precision: integer
        Working precision; raised once on a failed Hensel lift.

    Returns
    -------
    tuple
        (γ, δ), each a Fraction when recognised as rational and a PAdicValue otherwise;
        δ is INFINITY when φ^m is a polynomial.
    """
    assert_prime(p)
    try:
        return _fixed_points(phi_m, p, precision)
    except (HenselConditionFailed, PrecisionExhausted):
        warn_precision_escalation("Fixed point lifting", precision, 2 * precision)
        log.info("Retrying the fixed point search at precision %d.", 2 * precision)
        return _fixed_points(phi_m, p, 2 * precision)


def _rational_root(w: Fraction, n: int) -> Optional[Fraction]:
    """An exact rational n-th root of w, if one exists."""
    if w == 0 or (w < 0 and n % 2 == 0):
        return None
    num, num_exact = sympy.integer_nthroot(abs(w.numerator), n)
    den, den_exact = sympy.integer_nthroot(w.denominator, n)
    if not (num_exact and den_exact):
        return None
    sign = -1 if w < 0 else 1
    return Fraction(sign * int(num), int(den))


def _residue_field_root(target: int, n: int, p: int, f: int) -> Optional[Tuple[List[int], List[int]]]:
    """
    Solve x^n = target in F_(p^f).

    Returns the modulus and the root as dense coefficient lists, highest degree first.
    """
    modulus = None
    for tail in itertools.product(range(p), repeat=f):
        candidate = [1] + list(tail)
        if gf_irreducible_p(candidate, p, ZZ):
            modulus = candidate
            break
    if modulus is None:
        return None
    for element in itertools.product(range(p), repeat=f):
        x = gf_strip(list(element))
        if x and gf_pow_mod(x, n, modulus, p, ZZ) == [target]:
            return modulus, x
    return None


def _lift_unit(equation: Poly, seed: Any, tower: LocalTower, precision: int) -> Any:
    try:
        return hensel_root(equation, seed, tower=tower, precision=precision)
    except (HenselConditionFailed, PrecisionExhausted):
        warn_precision_escalation("The unit equation", precision, 2 * precision)
    try:
        return hensel_root(equation, seed, tower=tower, precision=2 * precision)
    except (HenselConditionFailed, PrecisionExhausted) as exc:
        raise UnitEquationUnsolvableAtPrecision(
            f"The unit equation could not be lifted at precision {2 * precision}."
        ) from exc


def _solve_unit(w: Any, n: int, p: int, precision: int, inert_bound: int) -> Tuple[Any, LocalTower, int]:
    """Solve u^n = w for a unit u; returns u, its tower and the level of E_1 = K(γ, δ, u)."""
    base = LocalTower(p, precision)
    if _is_rational(w):
        exact = _rational_root(Fraction(w), n)
        if exact is not None:
            return exact, base, 0

    target = _residue(w, p)
    equation = Poly([-w] + [0] * (n - 1) + [1])
    for x in range(1, p):
        if pow(x, n, p) == target:
            return _lift_unit(equation, x, base, precision), base, 0

    for f in range(2, inert_bound + 1):
        solution = _residue_field_root(target, n, p, f)
        if solution is None:
            continue
        modulus, root = solution
        tower = push_inert(base, Poly(list(reversed(modulus))))
        digits = list(reversed(root)) + [0] * (f - len(root))
        seed = TowerElement(tower, 1, [tower.scalar(c) for c in digits])
        log.info("The unit equation needs an inert level of degree %d.", f)
        return _lift_unit(equation, seed, tower, precision), tower, 1

    raise ResidueExtensionTooLarge(
        f"u^{n} = {target} has no solution in a residue field of degree at most {inert_bound} over F_{p}."
    )


def normalizing_model(
    phi_m: RationalMap,
    gamma: Any,
    delta: Any,
    p: int,
    precision: int = DEFAULT_PRECISION,
    inert_bound: int = DEFAULT_INERT_DEGREE_BOUND,
) -> ConjugatedModel:
    """
    Conjugate φ^m by μ(x) = u·(x - γ)/(1 - δ^-1·x) with u chosen so that s_N = t_0 = 1.

    Parameters
    ----------
    phi_m: RationalMap
        The power-like iterate, of degree N = p^r.
    gamma: Fraction, PAdicValue
        The fixed point of positive valuation.
    delta: Fraction, PAdicValue or INFINITY
        The fixed point of negative valuation.
    p: integer
        The residue characteristic.
    precision: integer
        Working precision of the unit equation.
    inert_bound: integer
        Largest residue degree allowed for the level adjoining u.

    Returns
    -------
    ConjugatedModel
        The model f1/g1 with s_0 = t_N = 0, s_N = t_0 = 1 and every other coefficient of positive valuation.
    """
    assert_prime(p)
    n = phi_m.degree
    exact_fixed = _is_rational(gamma) and (is_infinity(delta) or _is_rational(delta))
    c = 0 if is_infinity(delta) else -_div(1, delta)

    num, den = conjugate_coefficients(phi_m.num, phi_m.den, Mobius(1, -gamma, c, 1))
    s, t = num.padded(n + 1), den.padded(n + 1)
    if s[0] or t[n]:
        raise CertificateFailure("the shifted map does not fix 0 and infinity")
    if not t[0] or not s[n]:
        raise CertificateFailure("s_N and t_0 of the shifted map must be units")

    u, tower, level = _solve_unit(_div(s[n], t[0]), n - 1, p, precision, inert_bound)

    inv_t0 = _div(1, t[0])
    inv_u = _div(1, u)
    powers: List[Any] = [1]
    for _ in range(n):
        powers.append(powers[-1] * inv_u)
    s = [u * powers[i] * s[i] * inv_t0 if s[i] else 0 for i in range(n + 1)]
    t = [powers[i] * t[i] * inv_t0 if t[i] else 0 for i in range(n + 1)]
    if not s[n] == 1:
        raise CertificateFailure("the rescaled leading coefficient s_N is not 1 to precision")
    s[0], s[n], t[0], t[n] = 0, 1, 1, 0

    for name, coeffs in (("s", s), ("t", t)):
        for i in range(1, n):
            _, value = tower.val_status(coeffs[i], level)
            if not value > 0:
                raise CertificateFailure(f"{name}_{i} of the model does not have positive valuation")

    model = ConjugatedModel(
        gamma=gamma,
        delta=delta,
        u=u,
        mobius=Mobius(u, -(u * gamma), c, 1),
        num=Poly(s),
        den=Poly(t),
        tower=tower,
        level=level,
        exact=exact_fixed and _is_rational(u),
    )
    log.info("Normalised model of degree %d built at level %d (exact: %s).", n, level, model.exact)
    return model


def tower_step_poly(model: ConjugatedModel, pi_prev: Any) -> Poly:
    """
    Return h_n(x) = f1((-1)^(p+1) x) + (-1)^p π_(n-1) g1((-1)^(p+1) x).

    Parameters
    ----------
    model: ConjugatedModel
        The normalised model f1/g1.
    pi_prev: PAdicValue, TowerElement
        The uniformizer π_(n-1) of the current top level.

    Returns
    -------
    Poly
        Monic of degree p^r with constant term (-1)^p π_(n-1).
    """
    p = model.tower.p
    n = model.degree
    s, t = model.num.padded(n + 1), model.den.padded(n + 1)
    coeffs: List[Any] = [-pi_prev if p % 2 else pi_prev]
    for i in range(1, n):
        a = s[i]
        if t[i]:
            a = a - pi_prev * t[i] if p % 2 else a + pi_prev * t[i]
        if p == 2 and i % 2:
            a = -a
        coeffs.append(a)
    coeffs.append(1)
    return Poly(coeffs)


def _coefficient_valuation(tower: LocalTower, x: Any, k: int, scale: int) -> Optional[Fraction]:
    status, value = tower.val_status(x, k)
    if status == "zero":
        return None
    return Fraction(value, scale)


def _replay(model: ConjugatedModel, pi_n: TowerElement, pi_prev: Any) -> bool:
    """Check f1(σπ_n) = σ·π_(n-1)·g1(σπ_n) with σ = (-1)^(p+1) inside the tower."""
    p = model.tower.p
    n = model.degree
    s, t = model.num.padded(n + 1), model.den.padded(n + 1)
    if p == 2:
        s = [-c if i % 2 else c for i, c in enumerate(s)]
        t = [-c if i % 2 else c for i, c in enumerate(t)]
    f_value, g_value = Poly(s)(pi_n), Poly(t)(pi_n)
    residual = f_value - pi_prev * g_value if p % 2 else f_value + pi_prev * g_value
    return not residual


def _basepoint(model: ConjugatedModel, p: int) -> Any:
    y = -p if p == 2 else p
    point = Fraction(y) if model.exact else model.tower.scalar(y)
    return model.mobius.inverse()(point)


def build_apf_tower(
    phi: RationalMap,
    p: int,
    depth: Optional[int] = None,
    m_max: int = DEFAULT_M_MAX,
    precision: int = DEFAULT_PRECISION,
    inert_bound: int = DEFAULT_INERT_DEGREE_BOUND,
    replay_bound: int = DEFAULT_REPLAY_DEGREE_BOUND,
    strict: bool = True,
) -> Tuple[LocalTower, APFCertificate, Any]:
    """
    Run the full pipeline and build a norm-compatible Eisenstein tower over E_1 = K(γ, δ, u).

    Parameters
    ----------
    phi: RationalMap
        A map with good, eventually power-like reduction at p.
    p: integer
        The residue characteristic.
    depth: integer, optional
        The number of Eisenstein levels E_2, ..., E_(depth+1) pushed above E_1; by default
        3 for levels of degree 64 or more and 6 for degree at most 8.
    m_max: integer
        Largest iterate searched for power-like reduction.
    precision: integer
        Working precision in digits of p.
    inert_bound: integer
        Largest residue degree of the level adjoining u.
    replay_bound: integer
        The defining relation is replayed at level n only when e(E_(n-1)/E_1) is at most this bound.
    strict: boolean
        Raise CertificateFailure on a failed certificate instead of returning it.

    Returns
    -------
    tuple
        The tower, the APFCertificate and the basepoint b = μ^-1((-1)^(p+1)·p).
    """
    power_like = powerlike_order(phi, p, m_max=m_max)
    depth = default_depth(power_like.level_degree) if depth is None else depth
    assert_positive(depth, "depth")
    phi_m = iterate(phi, power_like.m)
    gamma, delta = fixed_points(phi_m, p, precision=precision)
    model = normalizing_model(phi_m, gamma, delta, p, precision=precision, inert_bound=inert_bound)

    q = model.degree
    base = model.level
    tower = model.tower
    pi_prev: Any = tower.scalar(p)
    records: List[LevelRecord] = []
    polys: List[Poly] = []
    failure: Optional[str] = None

    for n in range(2, depth + 2):
        k = tower.height
        scale = tower.ramification_index(k, base)
        h = tower_step_poly(model, pi_prev)
        polygon = newton_polygon(h, tower=tower, level=k)
        single = polygon.segments == ((Fraction(-1, q), q),)
        coeff_vals = tuple(_coefficient_valuation(tower, c, k, scale) for c in h.padded(q + 1)[1:q])
        slope = polygon.segments[0][0]
        if not single:
            records.append(LevelRecord(n, q, coeff_vals, slope, False, False, None))
            failure = f"the polygon of h_{n} is not a single segment of slope -1/{q}"
            break

        tower = push_eisenstein(tower, h)
        pi_n = tower.generator(tower.height)
        norm_ok = bool(norm_step(pi_n) == pi_prev)
        replay = _replay(model, pi_n, pi_prev) if scale <= replay_bound else None
        record = LevelRecord(n, q, coeff_vals, slope, True, norm_ok, replay)
        records.append(record)
        polys.append(h)
        log.info("Pushed level E_%d of degree %d, e(E_%d/E_1) = %d.", n, q, n, tower.ramification_index(None, base))
        if not norm_ok:
            failure = f"N(π_{n}) = π_{n - 1} fails at level {n}"
            break
        if replay is False:
            failure = f"the defining relation does not replay at level {n}"
            break
        pi_prev = pi_n

    values = [v for record in records for v in record.coeff_vals if v is not None]
    epsilon = min(values) if values else None
    if failure is None and epsilon is not None and epsilon <= 0:
        failure = f"a middle coefficient has valuation {epsilon} <= 0"

    notes: Dict[str, Any] = {
        "epsilon_units": "v_E1, normalised so that v_E1(π_1) = 1",
        "epsilon_condition": "every middle coefficient a_(n,i) has valuation >= epsilon > 0",
        "h_n": "f1((-1)^(p+1) x) + (-1)^p π_(n-1) g1((-1)^(p+1) x)",
        "minimal_polynomial_indexing": (
            "h_n is read as x^(q_n) + a_(n,q_n-1) x^(q_n-1) + ... + a_(n,1) x + (-1)^p π_(n-1); "
            "the constant term is the norm-compatible one"
        ),
        "replay_bound": replay_bound,
        "precision": precision,
        "basepoint_exact": model.exact,
    }
    if not any(model.den[i] for i in range(1, q)):
        independent = len(polys) < 2 or all(a == b for a, b in zip(polys[0].coeffs[1:q], polys[1].coeffs[1:q]))
        notes["coefficients_independent_of_n"] = independent
        if failure is None and not independent:
            failure = "the middle coefficients of h_2 and h_3 differ"
    else:
        notes["coefficients_independent_of_n"] = "template"
        notes["coefficient_template"] = "a_(n,i) = (-1)^((p+1)i) (s_i + (-1)^p π_(n-1) t_i)"

    basepoint = _basepoint(model, p)
    if model.exact and not is_infinity(basepoint):
        notes["basepoint_E1"] = str(model.tower.scalar(basepoint))
    if failure is not None:
        notes["first_failure"] = failure

    certificate = APFCertificate(
        power_like=power_like,
        model=model,
        levels=tuple(records),
        epsilon=epsilon,
        basepoint=basepoint,
        verdict=CertificateVerdict.PASS if failure is None else CertificateVerdict.FAIL,
        notes=notes,
    )
    if failure is not None:
        log.info("APF certificate failed: %s.", failure)
        if strict:
            raise CertificateFailure(failure)
    return tower, certificate, basepoint
