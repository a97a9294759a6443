"""This module contains the implementation of the NewtonHenselConsistency check."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import sys
from typing import Callable, List, Optional

from iterfield.checks.base import Check
from iterfield.functions.padic_func import newton_hensel_consistency
from iterfield.helpers import warn
from iterfield.helpers.constants import DEFAULT_PRECISION
from iterfield.helpers.enums import CheckCategory
from iterfield.helpers.polynomial import Poly
from iterfield.helpers.reports import NewtonHenselReport

if sys.version_info >= (3, 8):
    from typing import final
else:
    from typing_extensions import final


@final
class NewtonHenselConsistency(Check[List[NewtonHenselReport]]):
    """
    Lifts the Q_p roots of a polynomial by Hensel's lemma and checks that every root valuation
    is the negated slope of a Newton polygon segment with room for it.

    Attributes:
        -  name: The name of the check.
        - category: The family of constructions the check verifies.
    """

    name = "Newton Hensel Consistency"
    category = CheckCategory.RAMIFICATION

    def __init__(
        self,
        precision: int = DEFAULT_PRECISION,
        seed_digits: int = 2,
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
        seed_digits: integer
            Hensel seeds are the units modulo p^seed_digits of the polynomial rescaled to each segment, default=2.
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
        self.seed_digits = seed_digits

        # Asserts and warnings.
        if not self.disable_warnings:
            warn.warn_parameterisation(
                check_name=self.__class__.__name__,
                sensitive_params="the working precision 'precision' and the number of seed digits 'seed_digits'",
            )

    def evaluate_instance(self, f: Poly, p: int) -> NewtonHenselReport:
        return newton_hensel_consistency(f, p, precision=self.precision, seed_digits=self.seed_digits)
