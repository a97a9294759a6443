"""This module holds the exception hierarchy raised across the Iterfield library."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from typing import Optional


class IterfieldError(Exception):
    """Base class of every mathematical failure reported by Iterfield."""


# Algebra.


class AlgebraError(IterfieldError):
    pass


class ZeroMap(AlgebraError):
    pass


class ConstantMap(AlgebraError):
    pass


class CoefficientOverflow(AlgebraError):
    """Raised when coefficient sizes exceed the configured digit bound."""

    def __init__(self, digits: int, bound: int):
        super().__init__(
            f"Coefficient size of {digits} decimal digits exceeds the configured bound of {bound} digits."
        )
        self.digits = digits
        self.bound = bound


class SingularMobius(AlgebraError):
    pass


# Dynamics.


class DynamicsError(IterfieldError):
    pass


class IndeterminateValue(DynamicsError):
    pass


class UnsupportedCriticalDegree(DynamicsError):
    pass


class SingularCurve(DynamicsError):
    pass


# Complex numerics.


class NumericError(IterfieldError):
    pass


class NonConvergence(NumericError):
    pass


class DegenerateFiber(NumericError):
    pass


class NotPowerComposite(NumericError):
    pass


class ToleranceExceeded(NumericError):
    """Raised when a numeric comparison misses its tolerance; 'check' names the comparison."""

    def __init__(self, check: str, error: float, tolerance: float):
        super().__init__(
            f"Check '{check}' failed: error {error:.3e} exceeds tolerance {tolerance:.3e}."
        )
        self.check = check
        self.error = error
        self.tolerance = tolerance


class HypothesisFailure(NumericError):
    def __init__(self, condition: str):
        super().__init__(f"Hypothesis violated: {condition}.")
        self.condition = condition


class DegenerateLift(NumericError):
    pass


# p-adic arithmetic.


class PAdicError(IterfieldError):
    pass


class PrecisionExhausted(PAdicError):
    pass


class DivisionByZeroToPrecision(PAdicError, ZeroDivisionError):
    pass


class HenselConditionFailed(PAdicError):
    pass


class NotEisenstein(PAdicError):
    pass


class InvalidBreaks(PAdicError):
    pass


# APF pipeline.


class APFError(IterfieldError):
    pass


class NotGoodReduction(APFError):
    pass


class NotPowerLikeWithin(APFError):
    def __init__(self, m_max: int, p: Optional[int] = None):
        where = f" over F_{p}" if p is not None else ""
        super().__init__(
            f"No iterate of order m <= {m_max} reduces{where} to a power map c*x^(p^r)."
        )
        self.m_max = m_max


class AmbiguousPolygon(APFError):
    pass


class UnitEquationUnsolvableAtPrecision(APFError):
    pass


class ResidueExtensionTooLarge(APFError):
    pass


class CertificateFailure(APFError):
    def __init__(self, condition: str):
        super().__init__(f"APF certificate failed: {condition}.")
        self.condition = condition
