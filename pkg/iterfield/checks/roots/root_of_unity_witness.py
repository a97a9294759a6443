"""This module contains the implementation of the RootOfUnityWitness check."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import sys
from fractions import Fraction
from typing import Callable, List, Optional, Union

from iterfield.checks.base import Check
from iterfield.functions.numeric_func import witness_root_of_unity
from iterfield.helpers import warn
from iterfield.helpers.constants import DEFAULT_ROOT_TOLERANCE, DEFAULT_WITNESS_TOLERANCE
from iterfield.helpers.enums import CheckCategory
from iterfield.helpers.polynomial import Mobius, RationalMap
from iterfield.helpers.reports import UnityWitness

if sys.version_info >= (3, 8):
    from typing import final
else:
    from typing_extensions import final


@final
class RootOfUnityWitness(Check[List[UnityWitness]]):
    """
    Builds a primitive m^j-th root of unity from the iterated preimages of b and reports
    its distance to the nearest exact one.

    The witness sits at level r*j of the preimage tree, r being the lcm of the periods of
    0 and ∞. Instances may carry a Mobius conjugation that brings φ into K(x^m).

    Attributes:
        -  name: The name of the check.
        - category: The family of constructions the check verifies.
    """

    name = "Root Of Unity Witness"
    category = CheckCategory.ROOTS_OF_UNITY

    def __init__(
        self,
        tolerance: float = DEFAULT_WITNESS_TOLERANCE,
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
            Allowed distance to the nearest primitive root of unity, default=1e-9.
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
                sensitive_params="the witness tolerance 'tolerance' and the root residual 'root_tolerance'",
            )

    def evaluate_instance(
        self,
        phi: RationalMap,
        b: Union[int, Fraction],
        m: int,
        j: int,
        mobius: Optional[Mobius] = None,
    ) -> UnityWitness:
        return witness_root_of_unity(
            phi,
            b,
            m,
            j,
            tolerance=self.tolerance,
            root_tolerance=self.root_tolerance,
            mobius=mobius,
            strict=False,
        )
