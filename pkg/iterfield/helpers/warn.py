"""This modules holds a collection of warnings and keyword-argument checks used across Iterfield."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import warnings

from iterfield.helpers.utils import get_name


class SemiDecidableWarning(UserWarning):
    """A verdict only holds up to a search bound."""


class PrecisionWarning(UserWarning):
    """Working precision was raised to finish a computation."""


def check_kwargs(kwargs):
    """
    Check that no additional kwargs are passed, i.e. the kwargs dict is empty.
    Raises an exception with helpful suggestions to fix the issue.

    Parameters
    ----------
    kwargs: optional
        Keyword arguments.

    Returns
    -------
    None
    """
    if kwargs:
        raise ValueError(
            f"Unexpected keyword arguments encountered: {kwargs}. "
            "To ensure proper usage, please refer to the 'get_params' method of the initialised check "
            "or consult the Iterfield documentation. Always verify for any typos."
        )


def warn_parameterisation(
    check_name: str = "Check",
    sensitive_params: str = "X, Y and Z.",
):
    """
    Warn the parameterisation of the check.

    Parameters
    ----------
    check_name: string
        The check name.
    sensitive_params: string
        The sensitive parameters of the check.

    Returns
    -------
    None
    """
    print("Warnings and information:")
    text = (
        f" (1) The {get_name(check_name)} check is sensitive to the choice of {sensitive_params}."
        f"\n (2) Numeric verdicts are certified only up to the configured tolerances (call"
        f" .get_params of the check instance to inspect them)."
        f"\n (3) To disable these warnings set 'disable_warnings' = True when initialising the check.\n"
    )
    print(text)


def warn_semi_decidable(what: str, bound: int) -> None:
    """
    Warn that a negative verdict only holds within a search bound.

    Parameters
    ----------
    what: string
        The property that was searched for.
    bound: integer
        The bound used by the search.

    Returns
    -------
    None
    """
    warnings.warn(
        f"No {what} found within the bound {bound}; the verdict is not an unconditional negative.",
        SemiDecidableWarning,
    )


def warn_precision_escalation(where: str, old: int, new: int) -> None:
    """
    Warn that a p-adic computation was retried at a higher precision.

    Parameters
    ----------
    where: string
        The computation that was retried.
    old: integer
        The precision that failed.
    new: integer
        The precision of the retry.

    Returns
    -------
    None
    """
    warnings.warn(
        f"{where} failed at precision {old}; retrying once at precision {new}.",
        PrecisionWarning,
    )
