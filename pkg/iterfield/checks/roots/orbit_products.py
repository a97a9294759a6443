"""This module contains the implementation of the OrbitProducts check."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import sys
from fractions import Fraction
from typing import Callable, List, Optional, Union

from iterfield.checks.base import Check
from iterfield.functions.numeric_func import verify_power_structure
from iterfield.helpers import warn
from iterfield.helpers.constants import DEFAULT_CHECK_TOLERANCE, DEFAULT_ROOT_TOLERANCE
from iterfield.helpers.enums import CheckCategory
from iterfield.helpers.polynomial import RationalMap
from iterfield.helpers.reports import PowerStructureReport

if sys.version_info >= (3, 8):
    from typing import final
else:
    from typing_extensions import final


@final
class OrbitProducts(Check[List[PowerStructureReport]]):
    """
    Checks the ζ_m-orbit partition and the two product formulas of the fiber over α.

    Each instance names a map φ in K(x^m) fixing 0 and ∞, a point α and the power structure m.
    Failing comparisons are reported, not raised; a map outside K(x^m) still raises
    NotPowerComposite.

    Attributes:
        -  name: The name of the check.
        - category: The family of constructions the check verifies.
    """

    name = "Orbit Products"
    category = CheckCategory.ROOTS_OF_UNITY

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
            Relative tolerance of the orbit and product comparisons, default=1e-8.
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
                sensitive_params="the comparison tolerance 'tolerance' and the root residual 'root_tolerance'",
            )

    def evaluate_instance(
        self, phi: RationalMap, alpha: Union[int, Fraction, complex], m: int
    ) -> PowerStructureReport:
        """
        Parameters
        ----------
        phi: RationalMap
            A map in K(x^m) with φ(0) = 0 and φ(∞) = ∞.
        alpha: Fraction or complex
            The point whose fiber is checked, other than 0 and ∞.
        m: integer
            The power structure.

        Returns
        -------
        PowerStructureReport
            The orbit partition and product errors.
        """
        return verify_power_structure(
            phi, alpha, m, tolerance=self.tolerance, root_tolerance=self.root_tolerance, strict=False
        )
