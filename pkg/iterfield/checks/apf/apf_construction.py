"""This module contains the implementation of the APFConstruction check."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import logging
import sys
from typing import Callable, List, Optional

from iterfield.checks.base import Check
from iterfield.functions.apf_func import build_apf_tower
from iterfield.helpers import warn
from iterfield.helpers.constants import (
    DEFAULT_INERT_DEGREE_BOUND,
    DEFAULT_M_MAX,
    DEFAULT_PRECISION,
    DEFAULT_REPLAY_DEGREE_BOUND,
)
from iterfield.helpers.enums import CheckCategory
from iterfield.helpers.polynomial import RationalMap
from iterfield.helpers.reports import APFCertificate

if sys.version_info >= (3, 8):
    from typing import final
else:
    from typing_extensions import final

log = logging.getLogger(__name__)


@final
class APFConstruction(Check[List[APFCertificate]]):
    """
    Builds the norm-compatible Eisenstein tower of a map with good, eventually power-like
    reduction at p and returns its certificate.

    A violated certificate condition gives a failing certificate; pipeline errors such as
    NotGoodReduction or NotPowerLikeWithin are raised.

    Attributes:
        -  name: The name of the check.
        - category: The family of constructions the check verifies.
    """

    name = "APF Construction"
    category = CheckCategory.APF

    def __init__(
        self,
        m_max: int = DEFAULT_M_MAX,
        precision: int = DEFAULT_PRECISION,
        inert_bound: int = DEFAULT_INERT_DEGREE_BOUND,
        replay_bound: int = DEFAULT_REPLAY_DEGREE_BOUND,
        return_aggregate: bool = False,
        aggregate_func: Optional[Callable] = None,
        disable_warnings: bool = False,
        display_progressbar: bool = False,
        **kwargs,
    ):
        """
        Parameters
        ----------
        m_max: integer
            Largest period searched by the power-like test, default=8.
        precision: integer
            Working precision in digits of p, default=60.
        inert_bound: integer
            Largest residue degree of the unramified level, default=4.
        replay_bound: integer
            Largest base degree at which the defining relation is replayed in-tower, default=64.
        return_aggregate: boolean
            Indicates if an aggregated score should be computed over all instances.
        aggregate_func: callable
            Callable that aggregates the certificates given an evaluation call.
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

        self.m_max = m_max
        self.precision = precision
        self.inert_bound = inert_bound
        self.replay_bound = replay_bound

        # Asserts and warnings.
        if not self.disable_warnings:
            warn.warn_parameterisation(
                check_name=self.__class__.__name__,
                sensitive_params=(
                    "the working precision 'precision', the period bound 'm_max' and the tower depth 'depth'"
                ),
            )

    def evaluate_instance(self, phi: RationalMap, p: int, depth: Optional[int] = None) -> APFCertificate:
        """
        Parameters
        ----------
        phi: RationalMap
            The map.
        p: integer
            The residue characteristic.
        depth: integer, optional
            Number of Eisenstein levels, by default chosen from the level degree.

        Returns
        -------
        APFCertificate
            The certificate of the constructed tower.
        """
        _, certificate, _ = build_apf_tower(
            phi,
            p,
            depth=depth,
            m_max=self.m_max,
            precision=self.precision,
            inert_bound=self.inert_bound,
            replay_bound=self.replay_bound,
            strict=False,
        )
        log.info("Tower over Q_%d built with %d levels: %s.", p, len(certificate.levels), certificate.verdict.value)
        return certificate
