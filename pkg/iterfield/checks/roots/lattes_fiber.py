"""This module contains the implementation of the LattesFiber check."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import logging
import sys
from fractions import Fraction
from typing import Callable, List, Optional, Union

from iterfield.checks.base import Check
from iterfield.functions.algebra_func import maps_equal
from iterfield.functions.dynamics_func import doubling_x_map, lattes_multiplication_map, verify_semiconjugacy
from iterfield.functions.numeric_func import lattes_fiber_check
from iterfield.helpers import warn
from iterfield.helpers.constants import DEFAULT_CHECK_TOLERANCE, DEFAULT_ROOT_TOLERANCE
from iterfield.helpers.enums import CheckCategory
from iterfield.helpers.reports import LattesReport
from iterfield.helpers.utils import to_rat

if sys.version_info >= (3, 8):
    from typing import final
else:
    from typing_extensions import final

log = logging.getLogger(__name__)


@final
class LattesFiber(Check[List[LattesReport]]):
    """
    Checks the Lattès map of multiplication by d on y^2 = x^3 + a*x + b.

    Three things are verified: the degree is d^2, the map agrees with an independent model
    (the duplication formula for d = 2, commutation with the d = 2 map otherwise) and the
    fiber φ^-n(x0) equals the x-coordinates of the d^n-torsion translates of one lift.

    Attributes:
        -  name: The name of the check.
        - category: The family of constructions the check verifies.
    """

    name = "Lattes Fiber"
    category = CheckCategory.SEMICONJUGACY

    def __init__(
        self,
        tolerance: float = DEFAULT_CHECK_TOLERANCE,
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
            Relative tolerance of the fiber comparison, default=1e-8.
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
                sensitive_params="the fiber tolerance 'tolerance' and the basepoint 'x0'",
            )

    def evaluate_instance(
        self,
        a: Union[int, Fraction],
        b: Union[int, Fraction],
        d: int,
        x0: Union[int, Fraction],
        n: int,
    ) -> LattesReport:
        a, b = to_rat(a), to_rat(b)
        phi = lattes_multiplication_map(a, b, d)
        if d == 2:
            semiconjugacy = maps_equal(phi, doubling_x_map(a, b))
        else:
            semiconjugacy = verify_semiconjugacy(phi, lattes_multiplication_map(a, b, 2), phi)
        log.debug("Lattès map of multiplier %d: degree %d, independent model agrees: %s.", d, phi.degree, semiconjugacy)
        fiber = lattes_fiber_check(
            a, b, d, x0, n, tolerance=self.tolerance, root_tolerance=self.root_tolerance, strict=False
        )
        return LattesReport(a=a, b=b, d=d, degree=phi.degree, semiconjugacy=semiconjugacy, fiber=fiber)
