"""This module provides some functionality to run several verification checks on several batches of instances."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import logging
from typing import Any, Callable, Dict, Optional, Sequence, Union

import pandas as pd

from iterfield.checks.base import Check
from iterfield.helpers import warn
from iterfield.helpers.exceptions import IterfieldError

log = logging.getLogger(__name__)


def evaluate(
    checks: Dict[str, Check],
    batches: Dict[str, Sequence[Dict[str, Any]]],
    agg_func: Callable = lambda x: x,
    call_kwargs: Optional[Dict[str, Dict]] = None,
    return_as_df: Optional[bool] = None,
    verbose: Optional[bool] = None,
    **kwargs,
) -> Optional[Union[dict, pd.DataFrame]]:
    """
    Run every check on every named batch of instances.

    Parameters
    ----------
    checks : dict
        A dictionary of initialised checks. See iterfield.AVAILABLE_CHECKS.
        Example: {'Orbits': iterfield.OrbitProducts(), 'Witness': iterfield.RootOfUnityWitness()}

    batches : dict
        A dictionary of named instance lists. Each instance is a keyword argument dictionary of
        the evaluate_instance() method of the checks it is run with.

        Example:
        batches = {
            'x^2': [{'phi': phi, 'alpha': 4, 'm': 2}, {'phi': phi, 'alpha': 3, 'm': 2}],
            'x^4-2x^2': [{'phi': psi, 'alpha': 3, 'm': 2}],
        }

        A batch whose instances do not fit a check is reported and skipped for that check.

    agg_func: Callable
        Indicates how to aggregate the reports, e.g., pass iterfield.pass_rate.

    call_kwargs: Dict[str, Dict]
        Keyword arguments for the call of the checks. Keys are names for argument sets, and values are argument dictionaries.

    return_as_df: optional, bool
        Indicates whether to return the results as a pd.DataFrame. Only works if call_kwargs is not passed.

    verbose: optional, bool
        Indicates whether to print evaluation progress.

    kwargs: optional
        Keyword arguments.

    Returns
    -------
    results: dict
        A dictionary with the evaluation results, keyed by batch and then by check.
    """
    warn.check_kwargs(kwargs)

    if batches is None:
        print("Define the batches of instances that you want to verify.")
        return None

    if checks is None:
        print("Define the Iterfield checks that you want to run on the batches.")
        return None

    if call_kwargs is None:
        call_kwargs = {"call_kwargs_empty": {}}

    elif not isinstance(call_kwargs, Dict):
        raise TypeError("call_kwargs type should be of Dict[str, Dict] (if not None).")

    results: Dict[str, dict] = {}

    for batch_name, instances in batches.items():

        results[batch_name] = {}

        for check_name, check in checks.items():

            results[batch_name][check_name] = {}

            for call_kwarg_str, call_kwarg in call_kwargs.items():

                if verbose:
                    print(f"Running {check_name} check on batch {batch_name} with call parameters: {call_kwarg}...")

                try:
                    scores = check(instances=instances, **call_kwarg)
                    results[batch_name][check_name][call_kwarg_str] = agg_func(scores)

                except (IterfieldError, TypeError, ValueError) as e:
                    log.error(
                        "Failed to run the %s check on batch %s with call parameters %s: %s: %s. Make sure the "
                        "instances of the batch match the evaluate_instance() parameters of the check.",
                        check_name,
                        batch_name,
                        call_kwarg_str,
                        type(e).__name__,
                        e,
                    )
                    results[batch_name][check_name][call_kwarg_str] = None

    results_ordered: Dict[str, Any] = {}

    if len(call_kwargs) == 1:

        # Clean up the results if there is only one call_kwarg.
        (call_kwarg_str,) = call_kwargs.keys()
        for batch_name in batches:
            results_ordered[batch_name] = {
                check_name: results[batch_name][check_name][call_kwarg_str] for check_name in checks
            }

    if return_as_df:
        if len(call_kwargs) > 1:
            print(
                "Returning the results as a pd.DataFrame is only possible if the 'call_kwargs' "
                "is None or is a dictionary of length of 1 (i.e., triggers one evaluation run)."
            )
            return results
        else:
            return pd.DataFrame.from_dict(results_ordered)

    if len(call_kwargs) > 1:
        return results

    return results_ordered
