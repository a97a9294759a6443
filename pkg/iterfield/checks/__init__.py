# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import sys
from typing import Mapping, Type

from iterfield.checks.apf import *
from iterfield.checks.base import Check, pass_rate
from iterfield.checks.ramification import *
from iterfield.checks.roots import *
from iterfield.helpers.enums import CheckCategory

if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final

AVAILABLE_CHECKS: Final[Mapping[str, Mapping[str, Type[Check]]]] = {
    CheckCategory.ROOTS_OF_UNITY.value: {
        OrbitProducts.name: OrbitProducts,
        RootOfUnityWitness.name: RootOfUnityWitness,
    },
    CheckCategory.SEMICONJUGACY.value: {
        ChebyshevTrace.name: ChebyshevTrace,
        LattesFiber.name: LattesFiber,
    },
    CheckCategory.RAMIFICATION.value: {
        BreakAgreement.name: BreakAgreement,
        NewtonHenselConsistency.name: NewtonHenselConsistency,
    },
    CheckCategory.APF.value: {
        APFConstruction.name: APFConstruction,
    },
}
