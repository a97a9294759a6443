"""This module contains the implementation of the ChebyshevTrace check."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import sys
from fractions import Fraction
from typing import Callable, List, Optional, Union

from iterfield.checks.base import Check
from iterfield.functions.dynamics_func import verify_chebyshev_composition, verify_chebyshev_semiconjugacy
from iterfield.functions.numeric_func import chebyshev_trace_witness
from iterfield.helpers import warn
from iterfield.helpers.constants import DEFAULT_ROOT_TOLERANCE, DEFAULT_TRACE_TOLERANCE
from iterfield.helpers.enums import CheckCategory
from iterfield.helpers.reports import ChebyshevReport

if sys.version_info >= (3, 8):
    from typing import final
else:
    from typing_extensions import final


@final
class ChebyshevTrace(Check[List[ChebyshevReport]]):
    """
    Checks T_d against its exact identities and witnesses ζ + 1/ζ, ζ a primitive d^n-th
    root of unity, from three points of T_d^-n(b).

    The identities are T_d ∘ T_{d^(n-1)} = T_{d^n} and T_d ∘ v = v ∘ x^d with v(x) = x + 1/x.

    Attributes:
        -  name: The name of the check.
        - category: The family of constructions the check verifies.
    """

    name = "Chebyshev Trace"
    category = CheckCategory.SEMICONJUGACY

    def __init__(
        self,
        tolerance: float = DEFAULT_TRACE_TOLERANCE,
        root_tolerance: float = DEFAULT_ROOT_TOLERANCE,
        return_aggregate: bool = False,
        aggregate_func: Optional[Callable] = None,
        disable_warnings: bool = False,
        display_progressbar: bool = False,
        **kwargs,
    ):
        """
        Parameters
        ----------
        tolerance: float
            Allowed distance of the trace witness to v(ζ), default=1e-10.
        root_tolerance: float
            Relative residual of the root finder, default=1e-12.
        return_aggregate: boolean
            Indicates if an aggregated score should be computed over all instances.
        aggregate_func: callable
            Callable that aggregates the reports given an evaluation call.
        disable_warnings: boolean
            Indicates whether the warnings are printed, default=False.
        display_progressbar: boolean
            Indicates whether a tqdm-progress-bar is printed, default=False.
        kwargs: optional
            Keyword arguments.
        """
        super().__init__(
            return_aggregate=return_aggregate,
            aggregate_func=aggregate_func,
            disable_warnings=disable_warnings,
            display_progressbar=display_progressbar,
            **kwargs,
        )

        self.tolerance = tolerance
        self.root_tolerance = root_tolerance

        # Asserts and warnings.
        if not self.disable_warnings:
            warn.warn_parameterisation(
                check_name=self.__class__.__name__,
                sensitive_params="the trace tolerance 'tolerance' and the choice of basepoint 'b'",
            )

    def evaluate_instance(self, d: int, b: Union[int, Fraction, complex], n: int) -> ChebyshevReport:
        """
        Parameters
        ----------
        d: integer
            The Chebyshev degree, at least 2.
        b: Fraction or complex
            The basepoint, different from ±2.
        n: integer
            The level of the witness.

        Returns
        -------
        ChebyshevReport
            The identity results and the trace witness.
        """
        witness = chebyshev_trace_witness(
            d, b, n, tolerance=self.tolerance, root_tolerance=self.root_tolerance, strict=False
        )
        return ChebyshevReport(
            d=d,
            n=n,
            composition=verify_chebyshev_composition(d, d ** (n - 1)),
            semiconjugacy=verify_chebyshev_semiconjugacy(d),
            witness=witness,
        )
