"""This module contains the implementation of the BreakAgreement check."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import sys
from typing import Callable, List, Optional

from iterfield.checks.base import Check
from iterfield.functions.ramification_func import compare_cyclotomic_breaks
from iterfield.helpers import warn
from iterfield.helpers.constants import DEFAULT_PRECISION
from iterfield.helpers.enums import CheckCategory
from iterfield.helpers.reports import BreakComparison

if sys.version_info >= (3, 8):
    from typing import final
else:
    from typing_extensions import final


@final
class BreakAgreement(Check[List[BreakComparison]]):
    """
    Compares the ramification breaks of Q_p(ζ_{p^n}) computed from its Eisenstein polynomial
    with the closed-form cyclotomic breaks, and checks Herbrand transitivity and domination
    along the layered tower.

    Attributes:
        -  name: The name of the check.
        - category: The family of constructions the check verifies.
    """

    name = "Break Agreement"
    category = CheckCategory.RAMIFICATION

    def __init__(
        self,
        precision: int = DEFAULT_PRECISION,
        return_aggregate: bool = False,
        aggregate_func: Optional[Callable] = None,
        disable_warnings: bool = False,
        display_progressbar: bool = False,
        **kwargs,
    ):
        """
        Parameters
        ----------
        precision: integer
            Working precision in digits of p, default=60.
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

        self.precision = precision

        # Asserts and warnings.
        if not self.disable_warnings:
            warn.warn_parameterisation(
                check_name=self.__class__.__name__,
                sensitive_params="the working precision 'precision'",
            )

    def evaluate_instance(self, p: int, n: int) -> BreakComparison:
        return compare_cyclotomic_breaks(p, n, precision=self.precision)
