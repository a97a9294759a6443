# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

# Set the correct version.
__version__ = "0.1.0"

# Expose iterfield.evaluate to the user.
from iterfield.evaluation import evaluate

# Expose iterfield.<function-name> to the user.
from iterfield.functions import *

# Expose iterfield.<check> to the user.
from iterfield.checks import *

# Expose iterfield.helpers.constants to the user.
from iterfield.helpers.constants import *

# Expose the value types, reports and errors.
from iterfield.helpers.polynomial import INFINITY, Mobius, Poly, RationalMap, is_infinity
from iterfield.helpers.reports import *
from iterfield.helpers.exceptions import *
from iterfield.helpers.config import RunConfig, Tolerances
