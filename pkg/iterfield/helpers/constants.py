"""This module contains the numeric defaults and the registries used across Iterfield."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import sys
from typing import Dict, List

from iterfield.helpers.enums import SubCommand

if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


# Tolerances (relative), see helpers/config.py for the scale knob.
DEFAULT_ROOT_TOLERANCE: Final = 1e-12
DEFAULT_CHECK_TOLERANCE: Final = 1e-8
DEFAULT_WITNESS_TOLERANCE: Final = 1e-9
DEFAULT_TRACE_TOLERANCE: Final = 1e-10

# Root-finding iteration budget.
DEFAULT_MAX_ITERATIONS: Final = 500

# Exact-arithmetic bounds.
DEFAULT_OVERFLOW_DIGITS: Final = 10**6
DEFAULT_ORBIT_BOUND: Final = 64
DEFAULT_HEIGHT_BOUND: Final = 10**6

# p-adic defaults, precision in digits of p.
DEFAULT_PRECISION: Final = 60
DEFAULT_M_MAX: Final = 8
DEFAULT_INERT_DEGREE_BOUND: Final = 4
DEFAULT_REPLAY_DEGREE_BOUND: Final = 64

# Largest reduced iterate degree searched by the power-like test.
DEFAULT_RESIDUE_DEGREE_BOUND: Final = 1024

# Tower depth by the degree p^r of each level.
DEFAULT_DEPTH_LARGE_LEVEL: Final = 3
DEFAULT_DEPTH_SMALL_LEVEL: Final = 6
DEFAULT_DEPTH: Final = 4

AVAILABLE_SUBCOMMANDS: Final[Dict[str, SubCommand]] = {
    command.value: command for command in SubCommand
}

AVAILABLE_CYCLOTOMIC_PRIMES: Final[List[int]] = [2, 3, 5]


def default_depth(level_degree: int) -> int:
    """
    Return the default tower depth for Eisenstein levels of the given degree.

    Parameters
    ----------
    level_degree: integer
        The degree p^r of each tower level.

    Returns
    -------
    integer
        3 for levels of degree 64 or more, 6 for degree at most 8, 4 in between.
    """
    if level_degree >= 64:
        return DEFAULT_DEPTH_LARGE_LEVEL
    if level_degree <= 8:
        return DEFAULT_DEPTH_SMALL_LEVEL
    return DEFAULT_DEPTH


def available_categories() -> List[str]:
    """
    Retrieve the available check categories in Iterfield.

    Returns
    -------
    List[str]
        With the available check categories in Iterfield.
    """
    from iterfield.checks import AVAILABLE_CHECKS

    return [c for c in AVAILABLE_CHECKS.keys()]


def available_checks() -> Dict[str, List[str]]:
    """
    Retrieve the available checks in Iterfield.

    Returns
    -------
    Dict[str, List[str]]
        With the available checks, under each category in Iterfield.
    """
    from iterfield.checks import AVAILABLE_CHECKS

    return {c: list(checks.keys()) for c, checks in AVAILABLE_CHECKS.items()}


def available_subcommands() -> List[str]:
    """
    Retrieve the available command line subcommands.

    Returns
    -------
    List[str]
        With the subcommand names in registration order.
    """
    return [c for c in AVAILABLE_SUBCOMMANDS.keys()]
