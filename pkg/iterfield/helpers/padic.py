"""This module contains precision-tracked p-adic scalars and towers of local fields built over Q_p."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sympy.ntheory import sqrt_mod

from iterfield.helpers.asserts import assert_same_prime, assert_same_tower
from iterfield.helpers.enums import LevelKind
from iterfield.helpers.exceptions import (
    DivisionByZeroToPrecision,
    PAdicError,
    PrecisionExhausted,
)
from iterfield.helpers.polynomial import Poly
from iterfield.helpers.utils import rat_to_str, rational_valuation


class PAdicValue:
    """
    An element of Q_p known modulo p^precision.

    The value is p^valuation * unit with unit an integer prime to p reduced modulo
    p^(precision - valuation). A value that is zero to precision has unit 0 and
    valuation equal to its precision. Exact integers and Fractions are coerced
    with enough precision to never be the limiting operand.
    """

    __slots__ = ("p", "unit", "valuation", "precision")

    def __init__(self, p: int, unit: int, valuation: int, precision: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, key, value):
        raise AttributeError("PAdicValue is immutable.")

    @classmethod
    def zero(cls, p: int, precision: int) -> "PAdicValue":
        return cls(p, 0, precision, precision)

    @classmethod
    def _make(cls, p: int, n: int, v: int, precision: int) -> "PAdicValue":
        """Normalise n * p^v known modulo p^precision."""
        if n == 0 or v >= precision:
            return cls.zero(p, precision)
        while n % p == 0:
            n //= p
            v += 1
            if v >= precision:
                return cls.zero(p, precision)
        return cls(p, n % p ** (precision - v), v, precision)

    @classmethod
    def from_rational(cls, x: Union[int, Fraction], p: int, precision: int) -> "PAdicValue":
        """
        Embed an exact rational into Q_p.

        Parameters
        ----------
        x: int, Fraction
            The rational to embed.
        p: integer
            The prime.
        precision: integer
            The absolute precision of the result.

        Returns
        -------
        PAdicValue
            x modulo p^precision.
        """
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, precision)
        v = rational_valuation(x, p)
        if v >= precision:
            return cls.zero(p, precision)
        num = x.numerator // p ** max(v, 0)
        den = x.denominator // p ** max(-v, 0)
        mod = p ** (precision - v)
        return cls(p, (num * pow(den, -1, mod)) % mod, v, precision)

    def _coerce(self, other: Any) -> Any:
        if isinstance(other, PAdicValue):
            assert_same_prime(self, other)
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PAdicValue.zero(self.p, self.precision)
            v = rational_valuation(other, self.p)
            return PAdicValue.from_rational(
                other, self.p, max(self.precision, v + self.relative_precision)
            )
        return NotImplemented

    @property
    def relative_precision(self) -> int:
        return self.precision - self.valuation

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    def __bool__(self) -> bool:
        return self.unit != 0

    def val(self) -> int:
        """Return the valuation, raising PrecisionExhausted on a value that is zero to precision."""
        if self.unit == 0:
            raise PrecisionExhausted(
                f"The value is zero modulo {self.p}^{self.precision}; its valuation is unknown."
            )
        return self.valuation

    def __neg__(self) -> "PAdicValue":
        if self.unit == 0:
            return self
        return PAdicValue(self.p, (-self.unit) % self.p ** self.relative_precision, self.valuation, self.precision)

    def __add__(self, other: Any) -> "PAdicValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        precision = min(self.precision, o.precision)
        if not o:
            return self.with_precision(precision)
        if not self:
            return o.with_precision(precision)
        v = min(self.valuation, o.valuation)
        n = self.unit * self.p ** (self.valuation - v) + o.unit * self.p ** (o.valuation - v)
        return PAdicValue._make(self.p, n, v, precision)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "PAdicValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "PAdicValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> "PAdicValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        precision = min(self.valuation + o.precision, o.valuation + self.precision)
        if not self or not o:
            return PAdicValue.zero(self.p, precision)
        return PAdicValue._make(self.p, self.unit * o.unit, self.valuation + o.valuation, precision)

    __rmul__ = __mul__

    def inverse(self) -> "PAdicValue":
        if not self:
            raise DivisionByZeroToPrecision(f"Cannot invert a value that is zero modulo {self.p}^{self.precision}.")
        k = self.relative_precision
        return PAdicValue(self.p, pow(self.unit, -1, self.p**k), -self.valuation, k - self.valuation)

    def __truediv__(self, other: Any) -> "PAdicValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "PAdicValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "PAdicValue":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return PAdicValue.from_rational(1, self.p, self.relative_precision)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def sqrt(self) -> "PAdicValue":
        """
        Square root of a square with even valuation.

        For p = 2 the relative precision of the root is one less than that of the input.
        """
        if not self:
            raise PrecisionExhausted("Square root of a value that is zero to precision.")
        if self.valuation % 2:
            raise PAdicError(f"Odd valuation {self.valuation}: not a square in Q_{self.p}.")
        k = self.relative_precision
        root = sqrt_mod(self.unit, self.p**k)
        if root is None:
            raise PAdicError(f"The unit {self.unit} is not a square modulo {self.p}^{k}.")
        k_root = k - 1 if self.p == 2 else k
        return PAdicValue._make(self.p, root, self.valuation // 2, self.valuation // 2 + k_root)

    def with_precision(self, precision: int) -> "PAdicValue":
        """Truncate to a lower precision, or extend by treating the representative as exact."""
        if not self:
            return PAdicValue.zero(self.p, precision)
        return PAdicValue._make(self.p, self.unit, self.valuation, precision)

    def residue(self) -> int:
        """The image in F_p of an integral value."""
        assert self.valuation >= 0 or not self, "Only integral values have a residue."
        return self.unit % self.p if self.valuation == 0 else 0

    def lift(self) -> int:
        """Integer representative in [0, p^precision) of an integral value."""
        assert self.valuation >= 0, "Only integral values lift to integers."
        return (self.unit * self.p**self.valuation) % self.p**self.precision

    def to_fraction(self, symmetric: bool = True) -> Fraction:
        """Rational representative p^v * u, with u taken in the symmetric residue range by default."""
        if not self:
            return Fraction(0)
        mod = self.p**self.relative_precision
        u = self.unit
        if symmetric and u > mod // 2:
            u -= mod
        return Fraction(u) * Fraction(self.p) ** self.valuation

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return not (self - o)

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        return f"PAdicValue({rat_to_str(self.to_fraction())} + O({self.p}^{self.precision}))"

    def __str__(self) -> str:
        return f"{rat_to_str(self.to_fraction())} + O({self.p}^{self.precision})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "valuation": self.valuation if self else None,
            "precision": self.precision,
            "approximation": rat_to_str(self.to_fraction()),
        }


@dataclass(frozen=True, eq=False)
class TowerLevel:
    """One level of a local tower: a monic polynomial over the level below and its kind."""

    poly: Poly
    kind: LevelKind
    index: int

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def ramification(self) -> int:
        return self.degree if self.kind == LevelKind.EISENSTEIN else 1

    @property
    def residue_degree(self) -> int:
        return 1 if self.kind == LevelKind.EISENSTEIN else self.degree


_ZERO_STATUS = "zero"
_EXACT_STATUS = "exact"
_AMBIGUOUS_STATUS = "ambiguous"


@dataclass(frozen=True, eq=False)
class LocalTower:
    """
    A chain Q_p = E_0 ⊂ E_1 ⊂ ... ⊂ E_k of finite extensions.

    Level 0 is Q_p itself; every further level adjoins a root of a monic polynomial
    over the level below, either inert (irreducible modulo p) or Eisenstein.
    Elements of level j are 'TowerElement' objects; level 0 elements are 'PAdicValue'.

    Attributes
    ----------
    p: integer
        The residue characteristic.
    precision: integer
        Absolute precision, in digits of p, of the Q_p coefficients.
    levels: tuple
        The adjoined levels, bottom first.
    """

    p: int
    precision: int
    levels: Tuple[TowerLevel, ...] = field(default_factory=tuple)

    @property
    def height(self) -> int:
        return len(self.levels)

    def level(self, k: int) -> TowerLevel:
        assert 1 <= k <= self.height, f"The tower has no level {k}."
        return self.levels[k - 1]

    def ramification_index(self, top: Optional[int] = None, bottom: int = 0) -> int:
        """e(E_top / E_bottom)."""
        top = self.height if top is None else top
        return math.prod(lvl.ramification for lvl in self.levels[bottom:top])

    def residue_degree(self, top: Optional[int] = None, bottom: int = 0) -> int:
        top = self.height if top is None else top
        return math.prod(lvl.residue_degree for lvl in self.levels[bottom:top])

    def degree(self, top: Optional[int] = None, bottom: int = 0) -> int:
        return self.ramification_index(top, bottom) * self.residue_degree(top, bottom)

    def push(self, poly: Poly, kind: LevelKind) -> "LocalTower":
        """Return the tower extended by one level; the caller has validated 'poly'."""
        level = TowerLevel(poly=poly, kind=kind, index=self.height + 1)
        return LocalTower(p=self.p, precision=self.precision, levels=self.levels + (level,))

    def zero(self) -> PAdicValue:
        return PAdicValue.zero(self.p, self.precision)

    def scalar(self, x: Union[int, Fraction]) -> PAdicValue:
        return PAdicValue.from_rational(x, self.p, self.precision)

    def coerce(self, x: Any) -> Any:
        if isinstance(x, (PAdicValue, TowerElement)):
            return x
        return self.scalar(x)

    def generator(self, k: int) -> "TowerElement":
        """The adjoined root of level k."""
        degree = self.level(k).degree
        slots: List[Any] = [self.zero() for _ in range(degree)]
        if degree == 1:
            slots[0] = -self.level(k).poly[0]
        else:
            slots[1] = self.scalar(1)
        return TowerElement(self, k, slots, generator=degree > 1)

    def uniformizer(self, k: Optional[int] = None) -> Any:
        """A uniformizer of E_k: the top Eisenstein generator at or below k, or p."""
        k = self.height if k is None else k
        for j in range(k, 0, -1):
            if self.level(j).kind == LevelKind.EISENSTEIN:
                return self.generator(j)
        return self.scalar(self.p)

    def embed(self, x: Any, k: int) -> Any:
        """Represent x as an element of exactly level k."""
        x = self.coerce(x)
        j = level_of(x)
        assert j <= k, f"Cannot embed a level {j} element into level {k}."
        while j < k:
            j += 1
            slots = [x] + [self.zero() for _ in range(self.level(j).degree - 1)]
            x = TowerElement(self, j, slots)
        return x

    def val_status(self, x: Any, k: Optional[int] = None) -> Tuple[str, Any]:
        """
        Return (status, value) for the valuation of x in units of the uniformizer of E_k.

        Status 'exact' means value is the valuation, 'ambiguous' means x is nonzero but
        only bounded below by value, 'zero' means x vanishes to the bound value.
        """
        j = level_of(x)
        k = j if k is None else k
        assert j <= k, "Valuations are measured at or above the level of the element."
        scale = self.ramification_index(k, j)
        if isinstance(x, TowerElement):
            status, value = x._val_status()
        elif isinstance(x, PAdicValue):
            status, value = (_EXACT_STATUS, x.valuation) if x else (_ZERO_STATUS, x.precision)
        else:
            x = Fraction(x)
            if x == 0:
                return _ZERO_STATUS, math.inf
            status, value = _EXACT_STATUS, rational_valuation(x, self.p)
        return status, value * scale

    def valuation(self, x: Any, k: Optional[int] = None) -> int:
        """
        Valuation of x in units of v_{E_k}.

        Parameters
        ----------
        x: int, Fraction, PAdicValue, TowerElement
            A nonzero element of the tower.
        k: integer, optional
            The level whose normalised valuation is used, defaults to the level of x.

        Returns
        -------
        integer
            The valuation.
        """
        status, value = self.val_status(x, k)
        if status != _EXACT_STATUS:
            raise PrecisionExhausted(
                f"The valuation of {x!r} cannot be decided at precision {self.precision} (bound {value})."
            )
        return value

    def base_valuation(self, x: Any) -> Fraction:
        """Valuation normalised so that v(p) = 1."""
        k = level_of(x)
        return Fraction(self.valuation(x, k), self.ramification_index(k))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "precision": self.precision,
            "ramification_index": self.ramification_index(),
            "residue_degree": self.residue_degree(),
            "levels": [
                {"index": lvl.index, "kind": lvl.kind.value, "degree": lvl.degree, "poly": lvl.poly.to_strings()}
                for lvl in self.levels
            ],
        }


def level_of(x: Any) -> int:
    return x.level if isinstance(x, TowerElement) else 0


class TowerElement:
    """
    An element Σ c_i θ^i of level k, where θ is the adjoined root of level k.

    The slots c_i are elements of any level below k; they are embedded lazily.
    """

    __slots__ = ("tower", "level", "slots", "_generator")

    def __init__(self, tower: LocalTower, level: int, slots: Sequence[Any], generator: bool = False):
        degree = tower.level(level).degree
        assert len(slots) == degree, f"Level {level} elements need {degree} slots, got {len(slots)}."
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "slots", tuple(slots))
        object.__setattr__(self, "_generator", generator)

    def __setattr__(self, key, value):
        raise AttributeError("TowerElement is immutable.")

    @property
    def defining(self) -> TowerLevel:
        return self.tower.level(self.level)

    @property
    def p(self) -> int:
        return self.tower.p

    def _new(self, slots: Sequence[Any]) -> "TowerElement":
        return TowerElement(self.tower, self.level, slots)

    def _is_scalar(self, other: Any) -> bool:
        return not isinstance(other, TowerElement) or other.level < self.level

    def _val_status(self) -> Tuple[str, Any]:
        eisenstein = self.defining.kind == LevelKind.EISENSTEIN
        e = self.defining.ramification
        exact: List[Any] = []
        bounds: List[Any] = []
        nonzero = False
        for i, c in enumerate(self.slots):
            status, value = self.tower.val_status(c, self.level - 1)
            candidate = e * value + i if eisenstein else value
            if status == _EXACT_STATUS:
                exact.append(candidate)
                nonzero = True
            else:
                nonzero = nonzero or status == _AMBIGUOUS_STATUS
                bounds.append(candidate)
        if not nonzero:
            return _ZERO_STATUS, min(bounds)
        if exact and all(b >= min(exact) for b in bounds):
            return _EXACT_STATUS, min(exact)
        return _AMBIGUOUS_STATUS, min(exact + bounds)

    def __bool__(self) -> bool:
        return self._val_status()[0] != _ZERO_STATUS

    def valuation(self) -> int:
        return self.tower.valuation(self)

    @property
    def precision(self) -> Any:
        """Lower bound on the absolute precision, in units of this level."""
        eisenstein = self.defining.kind == LevelKind.EISENSTEIN
        e = self.defining.ramification
        bounds = []
        for i, c in enumerate(self.slots):
            if isinstance(c, TowerElement):
                prec = c.precision * self.tower.ramification_index(self.level - 1, c.level)
            elif isinstance(c, PAdicValue):
                prec = c.precision * self.tower.ramification_index(self.level - 1)
            else:
                prec = math.inf
            bounds.append(e * prec + i if eisenstein else prec)
        return min(bounds)

    def __neg__(self) -> "TowerElement":
        return self._new([-c for c in self.slots])

    def __add__(self, other: Any) -> "TowerElement":
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, TowerElement) and other.level > self.level:
            return other + self
        if self._is_scalar(other):
            if not isinstance(other, (int, Fraction, PAdicValue, TowerElement)):
                return NotImplemented
            return self._new((self.slots[0] + other,) + self.slots[1:])
        assert_same_tower(self, other)
        return self._new([a + b for a, b in zip(self.slots, other.slots)])

    __radd__ = __add__

    def __sub__(self, other: Any) -> "TowerElement":
        if not isinstance(other, (int, Fraction, PAdicValue, TowerElement)) or isinstance(other, bool):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "TowerElement":
        return (-self) + other

    def mul_generator(self) -> "TowerElement":
        """Multiply by the adjoined root of this level."""
        coeffs = self.defining.poly.padded(self.defining.degree)
        top = self.slots[-1]
        shifted = [self.tower.zero()] + list(self.slots[:-1])
        if top:
            shifted = [s - top * a if a else s for s, a in zip(shifted, coeffs)]
        return self._new(shifted)

    def __mul__(self, other: Any) -> "TowerElement":
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, TowerElement) and other.level > self.level:
            return other * self
        if self._is_scalar(other):
            if not isinstance(other, (int, Fraction, PAdicValue, TowerElement)):
                return NotImplemented
            if isinstance(other, TowerElement):
                return self._new([c * other if c else c for c in self.slots])
            return self._new([c * other for c in self.slots])
        assert_same_tower(self, other)
        if self._generator:
            return other.mul_generator()
        if other._generator:
            return self.mul_generator()
        n = self.defining.degree
        out: List[Any] = [self.tower.zero() for _ in range(2 * n - 1)]
        for i, a in enumerate(self.slots):
            if not a:
                continue
            for j, b in enumerate(other.slots):
                if b:
                    out[i + j] = out[i + j] + a * b
        coeffs = self.defining.poly.padded(n)
        for k in range(2 * n - 2, n - 1, -1):
            c = out[k]
            if not c:
                continue
            for i, a in enumerate(coeffs):
                if a:
                    out[k - n + i] = out[k - n + i] - c * a
        return self._new(out[:n])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TowerElement":
        if n < 0:
            return self.inverse() ** (-n)
        result: Any = self.tower.embed(1, self.level)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def multiplication_matrix(self) -> List[List[Any]]:
        """Rows i, columns j: coordinate i of self * θ^j over the level below."""
        columns = []
        current = self
        for _ in range(self.defining.degree):
            columns.append([self.tower.coerce(c) for c in current.slots])
            current = current.mul_generator()
        n = self.defining.degree
        return [[columns[j][i] for j in range(n)] for i in range(n)]

    def inverse(self) -> "TowerElement":
        if not self:
            raise DivisionByZeroToPrecision("Cannot invert a tower element that is zero to precision.")
        n = self.defining.degree
        rhs: List[Any] = [self.tower.scalar(1)] + [self.tower.zero() for _ in range(n - 1)]
        solution, _ = _eliminate(self.tower, self.level - 1, self.multiplication_matrix(), rhs)
        return self._new(solution)

    def __truediv__(self, other: Any) -> "TowerElement":
        if isinstance(other, bool) or not isinstance(other, (int, Fraction, PAdicValue, TowerElement)):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, TowerElement) and other.level > self.level:
            return self.tower.embed(self, other.level) * other.inverse()
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "TowerElement":
        return self.inverse() * other

    def norm(self) -> Any:
        """N_{E_k / E_{k-1}}, the determinant of multiplication by self."""
        poly = self.defining.poly
        if self._generator:
            return poly[0] if poly.degree % 2 == 0 else -poly[0]
        _, det = _eliminate(self.tower, self.level - 1, self.multiplication_matrix(), None)
        return det

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (int, Fraction, PAdicValue, TowerElement)) or isinstance(other, bool):
            return NotImplemented
        return not (self - other)

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        return f"TowerElement(level={self.level}, slots={list(self.slots)!r})"

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level, "slots": [str(c) for c in self.slots]}


def _pivot_key(tower: LocalTower, level: int, x: Any) -> Tuple[int, Any]:
    status, value = tower.val_status(x, level)
    rank = {_EXACT_STATUS: 0, _AMBIGUOUS_STATUS: 1, _ZERO_STATUS: 2}[status]
    return rank, value


def _eliminate(
    tower: LocalTower, level: int, matrix: List[List[Any]], rhs: Optional[List[Any]]
) -> Tuple[Optional[List[Any]], Any]:
    """
    Gaussian elimination over E_level with minimal-valuation pivots.

    Returns the solution of matrix * y = rhs (None when rhs is None) and the determinant.
    """
    n = len(matrix)
    rows = [list(r) for r in matrix]
    b = list(rhs) if rhs is not None else None
    det: Any = tower.scalar(1)
    for col in range(n):
        candidates = [(r, _pivot_key(tower, level, rows[r][col])) for r in range(col, n)]
        best_row, (rank, _) = min(candidates, key=lambda item: (item[1][0], item[1][1]))
        if rank == 2:
            if b is not None:
                raise DivisionByZeroToPrecision("Singular multiplication matrix at current precision.")
            return None, tower.zero()
        if best_row != col:
            rows[col], rows[best_row] = rows[best_row], rows[col]
            if b is not None:
                b[col], b[best_row] = b[best_row], b[col]
            det = -det
        pivot = rows[col][col]
        det = det * pivot
        inv = 1 / pivot
        for r in range(col + 1, n):
            factor = rows[r][col]
            if not factor:
                continue
            factor = factor * inv
            for c in range(col, n):
                if rows[col][c]:
                    rows[r][c] = rows[r][c] - factor * rows[col][c]
            if b is not None and b[col]:
                b[r] = b[r] - factor * b[col]
    if b is None:
        return None, det
    solution: List[Any] = [tower.zero() for _ in range(n)]
    for r in range(n - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, n):
            if rows[r][c] and solution[c]:
                acc = acc - rows[r][c] * solution[c]
        solution[r] = acc / rows[r][r]
    return solution, det
