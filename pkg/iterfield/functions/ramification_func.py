"""This module contains ramification breaks of Eisenstein extensions, cyclotomic towers and Herbrand transition functions."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import logging
from collections import Counter
from fractions import Fraction
from typing import Optional, Union

from iterfield.functions.padic_func import newton_polygon, push_eisenstein
from iterfield.helpers.asserts import assert_prime
from iterfield.helpers.constants import AVAILABLE_CYCLOTOMIC_PRIMES, DEFAULT_PRECISION
from iterfield.helpers.enums import GaloisStatus
from iterfield.helpers.herbrand import HerbrandFn
from iterfield.helpers.padic import LocalTower
from iterfield.helpers.polynomial import Poly
from iterfield.helpers.reports import BreakComparison, BreakData

log = logging.getLogger(__name__)


def ramification_breaks(
    g: Poly, tower: Optional[LocalTower] = None, p: Optional[int] = None, galois: bool = False
) -> BreakData:
    """
    Read the lower ramification breaks of E(π')/E off the polygon of ρ(x)/x, ρ(x) = g(π'x + π').

    Parameters
    ----------
    g: Poly
        An Eisenstein polynomial over the top level E of the tower.
    tower: LocalTower, optional
        The tower; a bare Q_p tower when omitted.
    p: integer, optional
        The prime for a bare Q_p tower.
    galois: boolean
        Whether the extension is known to be Galois (cyclotomic levels).

    Returns
    -------
    BreakData
        Lower breaks in units v(π') = 1 with the number of conjugates at each break.
    """
    if tower is None:
        assert p is not None, "Pass a tower or the prime 'p'."
        tower = LocalTower(p, DEFAULT_PRECISION)
    extended = push_eisenstein(tower, g)
    k = extended.height
    degree = extended.level(k).degree
    status = GaloisStatus.VERIFIED if galois or degree <= 2 else GaloisStatus.ASSUMED
    if degree == 1:
        return BreakData(lower_breaks=(), degree=1, galois=status)

    pi = extended.generator(k)
    rho = extended.level(k).poly(Poly([pi, pi]))
    quotient = Poly(rho.coeffs[1:])
    polygon = newton_polygon(quotient, tower=extended, level=k)
    breaks = sorted((-slope, length) for slope, length in polygon.segments)
    log.debug("Ramification polygon of a degree %d level: %s.", degree, polygon.segments)
    return BreakData(lower_breaks=tuple(breaks), degree=degree, galois=status)


def cyclotomic_polynomial_shifted(p: int, n: int) -> Poly:
    """Φ_{p^n}(x + 1), Eisenstein over Q_p."""
    assert_prime(p)
    shift = Poly([Fraction(1), Fraction(1)])
    base = shift ** (p ** (n - 1))
    return sum((base**j for j in range(1, p)), Poly([Fraction(1)]))


def _cyclotomic_level(tower: LocalTower) -> Poly:
    """The polynomial of ζ_{p^(k+1)} - 1 over the top level k of a cyclotomic tower."""
    if tower.height == 0:
        return cyclotomic_polynomial_shifted(tower.p, 1)
    return Poly([Fraction(1), Fraction(1)]) ** tower.p - 1 - tower.uniformizer(tower.height)


def cyclotomic_tower(p: int, n: int, precision: int = DEFAULT_PRECISION) -> LocalTower:
    """
    Build Q_p ⊂ Q_p(ζ_p) ⊂ ... ⊂ Q_p(ζ_{p^n}) with uniformizers π_k = ζ_{p^k} - 1.

    Parameters
    ----------
    p: integer
        The prime.
    n: integer
        The number of levels.
    precision: integer
        Working precision in digits of p.

    Returns
    -------
    LocalTower
        Level 1 is Φ_p(x + 1) and level k >= 2 is (x + 1)^p - 1 - π_{k-1}.
    """
    assert_prime(p)
    assert n >= 0, "The number of cyclotomic levels is nonnegative."
    tower = LocalTower(p, precision)
    for _ in range(n):
        tower = push_eisenstein(tower, _cyclotomic_level(tower))
    return tower


def cyclotomic_oracle(p: int, n: int, precision: int = DEFAULT_PRECISION) -> BreakData:
    """
    Brute-force the lower breaks of Q_p(ζ_{p^n}) / Q_p inside the cyclotomic tower.

    Parameters
    ----------
    p: integer
        A prime in 'AVAILABLE_CYCLOTOMIC_PRIMES'.
    n: integer
        The level, 1 <= n <= 3.
    precision: integer
        Working precision in digits of p.

    Returns
    -------
    BreakData
        Breaks i(σ_a) - 1 with i(σ_a) = v((1 + π)^a - 1 - π) over a ∈ (Z/p^n)^×, a ≠ 1.
    """
    assert p in AVAILABLE_CYCLOTOMIC_PRIMES, f"The cyclotomic oracle covers p in {AVAILABLE_CYCLOTOMIC_PRIMES}."
    assert 1 <= n <= 3, "The cyclotomic oracle covers 1 <= n <= 3."
    tower = cyclotomic_tower(p, n, precision)
    pi = tower.uniformizer(n)
    power = pi + 1
    counts: Counter = Counter()
    for a in range(2, p**n):
        power = power + power * pi
        if a % p == 0:
            continue
        i_value = tower.valuation(power - 1 - pi, n)
        counts[Fraction(i_value - 1)] += 1
    breaks = tuple(sorted(counts.items()))
    return BreakData(lower_breaks=breaks, degree=p ** (n - 1) * (p - 1), galois=GaloisStatus.VERIFIED)


def herbrand_compose(first: Union[BreakData, HerbrandFn], second: Optional[HerbrandFn] = None) -> HerbrandFn:
    """
    Build a Herbrand function from break data, or compose two of them.

    Parameters
    ----------
    first: BreakData, HerbrandFn
        Break data, or the outer function φ_{L'/K}.
    second: HerbrandFn, optional
        The inner function φ_{L/L'}.

    Returns
    -------
    HerbrandFn
        φ from the breaks, or first ∘ second.
    """
    if isinstance(first, BreakData):
        assert second is None, "Break data is converted on its own."
        return HerbrandFn.from_lower_breaks(first.lower_breaks, first.degree)
    assert second is not None, "Composition takes two Herbrand functions."
    return first.compose(second)


def cyclotomic_step_breaks(p: int, n: int, precision: int = DEFAULT_PRECISION) -> BreakData:
    """Breaks of Q_p(ζ_{p^n}) / Q_p(ζ_{p^(n-1)}) from the top level of the cyclotomic tower."""
    assert n >= 1, "The step needs n >= 1."
    below = cyclotomic_tower(p, n - 1, precision)
    return ramification_breaks(_cyclotomic_level(below), below, galois=True)


def cyclotomic_transition_checks(p: int, n: int, precision: int = DEFAULT_PRECISION) -> dict:
    """
    Compare φ_{F/K} with φ_{K'/K} ∘ φ_{F/K'} and with φ_{F/K'} for F = Q_p(ζ_{p^n}), K' = Q_p(ζ_{p^(n-1)}).

    Returns
    -------
    dict
        The three functions and the booleans "transitive" and "dominated".
    """
    whole = herbrand_compose(cyclotomic_oracle(p, n, precision))
    lower = herbrand_compose(cyclotomic_oracle(p, n - 1, precision)) if n > 1 else HerbrandFn.identity()
    step = herbrand_compose(cyclotomic_step_breaks(p, n, precision))
    composite = herbrand_compose(lower, step)
    return {
        "phi_F_K": whole,
        "phi_Kp_K": lower,
        "phi_F_Kp": step,
        "transitive": composite == whole,
        "dominated": whole.is_dominated_by(step),
    }


def compare_cyclotomic_breaks(p: int, n: int, precision: int = DEFAULT_PRECISION) -> BreakComparison:
    """
    Compare the polygon breaks of Φ_{p^n}(x + 1) over Q_p with the in-tower oracle.

    Parameters
    ----------
    p: integer
        A prime in 'AVAILABLE_CYCLOTOMIC_PRIMES'.
    n: integer
        The level, 1 <= n <= 3.
    precision: integer
        Working precision in digits of p.

    Returns
    -------
    BreakComparison
        Both break lists together with the transitivity and domination checks of the Herbrand functions.
    """
    computed = ramification_breaks(cyclotomic_polynomial_shifted(p, n), p=p, galois=True)
    oracle = cyclotomic_oracle(p, n, precision)
    transitions = cyclotomic_transition_checks(p, n, precision)
    comparison = BreakComparison(
        p=p,
        n=n,
        computed=computed,
        oracle=oracle,
        transitive=transitions["transitive"],
        dominated=transitions["dominated"],
    )
    log.info("Breaks of Q_%d(ζ_%d) agree with the oracle: %s.", p, p**n, comparison.passed)
    return comparison
