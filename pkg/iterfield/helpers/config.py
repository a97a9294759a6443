"""This module holds the run configuration shared by the command line and the checks."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import argparse
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from iterfield.helpers import asserts, constants


@dataclass(frozen=True)
class Tolerances:
    """
    Numeric tolerances of the complex verifier.

    Attributes
    ----------
    root: float
        Relative residual a certified root must reach.
    check: float
        Relative tolerance of product and orbit comparisons.
    witness: float
        Distance allowed between a witness and the nearest root of unity.
    trace: float
        Distance allowed for Chebyshev trace witnesses.
    """

    root: float = constants.DEFAULT_ROOT_TOLERANCE
    check: float = constants.DEFAULT_CHECK_TOLERANCE
    witness: float = constants.DEFAULT_WITNESS_TOLERANCE
    trace: float = constants.DEFAULT_TRACE_TOLERANCE

    def scaled(self, scale: float) -> "Tolerances":
        """Return the tolerances multiplied by 'scale' (smaller is stricter)."""
        asserts.assert_tolerance_scale(scale)
        return Tolerances(
            root=self.root * scale,
            check=self.check * scale,
            witness=self.witness * scale,
            trace=self.trace * scale,
        )


@dataclass(frozen=True)
class RunConfig:
    """
    Numeric policy of one command line run.

    All bounds must be positive and the tolerance scale must lie in (0, 1].
    """

    precision: int = constants.DEFAULT_PRECISION
    depth: Optional[int] = None
    tolerance_scale: float = 1.0
    bound_n: int = constants.DEFAULT_ORBIT_BOUND
    height_bound: int = constants.DEFAULT_HEIGHT_BOUND
    m_max: int = constants.DEFAULT_M_MAX
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    tolerances: Tolerances = field(init=False)

    def __post_init__(self):
        for name in ("precision", "bound_n", "height_bound", "m_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"'{name}' must be positive, got {getattr(self, name)}.")
        if self.depth is not None and self.depth <= 0:
            raise ValueError(f"'depth' must be positive, got {self.depth}.")
        if not 0 < self.tolerance_scale <= 1:
            raise ValueError(f"'tolerance_scale' must lie in (0, 1], got {self.tolerance_scale}.")
        object.__setattr__(self, "tolerances", Tolerances().scaled(self.tolerance_scale))

    @classmethod
    def from_namespace(cls, namespace: argparse.Namespace) -> "RunConfig":
        """Build the configuration from parsed command line arguments."""
        return cls(
            precision=namespace.precision,
            depth=namespace.depth,
            tolerance_scale=namespace.tolerance,
            bound_n=namespace.bound_n,
            height_bound=namespace.height_bound,
            m_max=namespace.m_max,
            input_path=getattr(namespace, "map", None),
            output_path=namespace.output,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "precision": self.precision,
            "depth": self.depth,
            "tolerance_scale": self.tolerance_scale,
            "bound_n": self.bound_n,
            "height_bound": self.height_bound,
            "m_max": self.m_max,
        }
