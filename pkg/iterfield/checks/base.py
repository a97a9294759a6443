"""This module implements the base class for creating verification checks."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from __future__ import annotations

import logging
import os
from abc import abstractmethod
from typing import Any, Callable, ClassVar, Dict, Generator, Generic, List, Optional, Sequence, TypeVar

import numpy as np
from tqdm.auto import tqdm

from iterfield.helpers import warn
from iterfield.helpers.enums import CheckCategory

log = logging.getLogger(__name__)

# Return value of __call__
R = TypeVar("R")


def pass_rate(scores: Sequence[Any]) -> float:
    """Fraction of reports in 'scores' whose 'passed' flag is set."""
    return float(np.mean([bool(score.passed) for score in scores]))


class Check(Generic[R]):
    """
    Interface defining the API of checks.

    A check runs one mathematical verification per instance, where an instance is a
    keyword argument dictionary for evaluate_instance(), and collects the returned reports.
    """

    # Class attributes.
    name: ClassVar[str]
    category: ClassVar[CheckCategory]

    # Instance attributes.
    evaluation_scores: Any
    all_evaluation_scores: Any

    def __init__(
        self,
        return_aggregate: bool,
        aggregate_func: Optional[Callable],
        disable_warnings: bool,
        display_progressbar: bool,
        **kwargs,
    ):
        """
        Initialise the Check base class.

        Each of the defined checks in Iterfield inherits from the Check base class.
        A child check can benefit from the following class methods:
        - __call__(): Splits the instances into batches, calls evaluate_batch() on each
                      batch and optionally aggregates the reports.
        - evaluate_batch(): Calls evaluate_instance() on every instance of the batch.

        The content of evaluation_scores will be appended to all_evaluation_scores (list) at the end of
        the evaluation call.

        Parameters
        ----------
        return_aggregate: boolean
            Indicates if an aggregated score should be computed over all instances.
        aggregate_func: callable
            Callable that aggregates the reports of an evaluation call, default=pass_rate.
        disable_warnings: boolean
            Indicates whether the warnings are printed.
        display_progressbar: boolean
            Indicates whether a tqdm-progress-bar is printed.
        kwargs: optional
            Keyword arguments.
        """
        if aggregate_func is None:
            aggregate_func = pass_rate

        warn.check_kwargs(kwargs)

        self.return_aggregate = return_aggregate
        self.aggregate_func = aggregate_func

        # We need underscores here to avoid conflict with @property descriptor.
        self._disable_warnings = disable_warnings
        self._display_progressbar = display_progressbar

        self.evaluation_scores = []
        self.all_evaluation_scores = []

    def __call__(
        self,
        instances: Sequence[Dict[str, Any]],
        batch_size: int = 64,
        **kwargs,
    ) -> R:
        """
        Run the check on every instance and return the reports.

        Parameters
        ----------
        instances: sequence of dict
            Keyword arguments of evaluate_instance(), one dictionary per instance.
        batch_size: integer
            Number of instances evaluated per batch.
        kwargs: optional
            Keyword arguments.

        Returns
        -------
        evaluation_scores: list
            The reports of the instances, or a single aggregated value if return_aggregate is set.

        Examples:
        --------
            >> import iterfield
            >> phi = iterfield.normalize_map([0, 0, 1], [1])
            >> check = iterfield.OrbitProducts(disable_warnings=True)
            >> reports = check(instances=[{"phi": phi, "alpha": 4, "m": 2}])
            >> reports[0].passed
            True
        """
        warn.check_kwargs(kwargs)

        self.evaluation_scores = []
        for batch in self.generate_batches(instances=instances, batch_size=batch_size):
            result = self.evaluate_batch(batch)
            self.evaluation_scores.extend(result)

        if self.return_aggregate:
            if self.aggregate_func:
                try:
                    self.evaluation_scores = [self.aggregate_func(self.evaluation_scores)]
                except Exception as ex:
                    log.error(
                        "The aggregation of evaluation scores failed with %s. Check that "
                        "'aggregate_func' supplied is appropriate for the data "
                        "in 'evaluation_scores'.",
                        ex,
                    )
            else:
                raise KeyError("Specify an 'aggregate_func' (Callable) to aggregate evaluation scores.")

        # Append the content of the last results to all results.
        self.all_evaluation_scores.extend(self.evaluation_scores)

        return self.evaluation_scores  # type: ignore

    def evaluate_batch(self, instances: Sequence[Dict[str, Any]]) -> List[Any]:
        """
        Evaluates every instance of a batch.

        Parameters
        ----------
        instances: sequence of dict
            The instances of one batch.

        Returns
        -------
        list
            One report per instance.
        """
        return [self.evaluate_instance(**instance) for instance in instances]

    @abstractmethod
    def evaluate_instance(self, **kwargs) -> Any:
        """
        Run the verification on a single instance and return its report.

        This method needs to be implemented to use __call__().
        """
        raise NotImplementedError()

    def generate_batches(
        self,
        instances: Sequence[Dict[str, Any]],
        batch_size: int,
    ) -> Generator[Sequence[Dict[str, Any]], None, None]:
        """
        Creates iterator to iterate over batches of instances.

        Parameters
        ----------
        instances: sequence of dict
            The instances.
        batch_size: integer
            The batch size to be used.

        Returns
        -------
        iterator:
            Each iterator output element is a slice of at most batch_size instances.
        """
        assert batch_size >= 1, f"'batch_size' must be positive, got {batch_size}."
        for instance in instances:
            if not isinstance(instance, dict):
                raise ValueError(f"Each instance must be a keyword argument dict, got {type(instance).__name__}.")

        n_instances = len(instances)
        with tqdm(total=n_instances, disable=not self.display_progressbar) as pbar:
            for start in range(0, n_instances, batch_size):
                batch = instances[start : start + batch_size]
                yield batch
                # Update progressbar by number of instances in this batch.
                pbar.update(len(batch))

    @property
    def get_params(self) -> Dict[str, Any]:
        """
        List parameters of check.

        Returns
        -------
        dict:
            A dictionary with attributes if not excluded from pre-determined list.
        """
        attr_exclude = [
            "args",
            "kwargs",
            "all_evaluation_scores",
            "evaluation_scores",
        ]
        return {k: v for k, v in self.__dict__.items() if k not in attr_exclude}

    @property
    def display_progressbar(self) -> bool:
        """A helper to avoid polluting test outputs with tqdm progress bars."""
        return (
            self._display_progressbar
            and
            # Don't show progress bar in github actions.
            "GITHUB_ACTIONS" not in os.environ
            and
            # Don't show progress bar when running unit tests.
            "PYTEST" not in os.environ
        )

    @property
    def disable_warnings(self) -> bool:
        """A helper to avoid polluting test outputs with warnings."""
        return (
            self._disable_warnings
            # Don't show warnings in github actions.
            or "GITHUB_ACTIONS" in os.environ
            # Don't show warnings when running unit tests.
            or "PYTEST" in os.environ
        )
