# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from iterfield.checks.roots.chebyshev_trace import ChebyshevTrace
from iterfield.checks.roots.lattes_fiber import LattesFiber
from iterfield.checks.roots.orbit_products import OrbitProducts
from iterfield.checks.roots.root_of_unity_witness import RootOfUnityWitness
