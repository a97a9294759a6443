# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from enum import Enum


class CheckCategory(Enum):
    """
    This enum represents the families of constructions that a check verifies.

        - ROOTS_OF_UNITY: Roots of unity built from iterated preimages (orbit products, witnesses).
        - SEMICONJUGACY: Chebyshev and Lattès semiconjugacies and their fibers.
        - RAMIFICATION: Newton polygons, Hensel lifts and ramification breaks of local extensions.
        - APF: Norm-compatible Eisenstein towers and their certificates.
    """

    ROOTS_OF_UNITY = "Roots of unity"
    SEMICONJUGACY = "Semiconjugacy"
    RAMIFICATION = "Ramification"
    APF = "APF"


class PCFVerdict(Enum):
    """
    Outcome of a post-critical orbit search. NOT_PCF_WITHIN is a bounded statement, never a proof.
    """

    PCF = "PCF"
    NOT_PCF_WITHIN = "NotPCFWithin"


class CertificateVerdict(Enum):
    PASS = "pass"
    FAIL = "fail"


class LevelKind(Enum):
    """
    This enum represents the kind of a local tower level.

        - INERT: Unramified level, monic and irreducible modulo p.
        - EISENSTEIN: Totally ramified level adjoining a uniformizer.
    """

    INERT = "inert"
    EISENSTEIN = "eisenstein"


class GaloisStatus(Enum):
    VERIFIED = "verified"
    ASSUMED = "assumed"


class SubCommand(Enum):
    ANALYZE = "analyze"
    VERIFY_ROOTS = "verify-roots"
    CHEBYSHEV = "chebyshev"
    LATTES = "lattes"
    RAMIFICATION = "ramification"
    APF = "apf"
