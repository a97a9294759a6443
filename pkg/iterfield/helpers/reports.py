"""This module contains the immutable report, witness and certificate types returned by the library."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from iterfield.helpers.enums import CertificateVerdict, GaloisStatus, PCFVerdict
from iterfield.helpers.polynomial import Mobius, Poly, is_infinity
from iterfield.helpers.utils import jsonable, rat_to_str


def _point_to_json(point: Any) -> Any:
    if is_infinity(point):
        return "inf"
    return jsonable(point)


@dataclass(frozen=True)
class CriticalData:
    """
    Finite critical points as roots of 'poly' and the multiplicity of ∞ as a critical point.

    The finite multiplicities and the one at ∞ add up to 2d - 2.
    """

    poly: Poly
    infinity_multiplicity: int
    degree: int

    @property
    def infinity_is_critical(self) -> bool:
        return self.infinity_multiplicity > 0

    @property
    def total_multiplicity(self) -> int:
        return self.poly.degree + self.infinity_multiplicity

    def to_dict(self) -> Dict[str, Any]:
        return {
            "critical_polynomial": self.poly.to_strings(),
            "infinity_multiplicity": self.infinity_multiplicity,
            "infinity_is_critical": self.infinity_is_critical,
        }


@dataclass(frozen=True)
class OrbitReport:
    """
    Forward orbit summary of one point.

    A periodic orbit has 'period' set and 'escaped_at' None; an orbit that left the
    search bounds has 'period' None and records the step at which it was abandoned.
    """

    point: Any
    preperiod: int
    period: Optional[int]
    escaped_at: Optional[int] = None
    reason: Optional[str] = None

    @property
    def is_periodic(self) -> bool:
        return self.period is not None and self.preperiod == 0

    @property
    def is_finite(self) -> bool:
        return self.period is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "point": _point_to_json(self.point),
            "preperiod": self.preperiod,
            "period": self.period if self.period is not None else f"escaped at step {self.escaped_at}",
            "reason": self.reason,
        }


@dataclass(frozen=True)
class PCFReport:
    orbits: Tuple[OrbitReport, ...]
    verdict: PCFVerdict
    bound_n: int
    height_bound: int
    multiplicities: Tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == PCFVerdict.PCF

    def to_dict(self) -> Dict[str, Any]:
        verdict = self.verdict.value if self.passed else f"{self.verdict.value}({self.bound_n})"
        return {
            "verdict": verdict,
            "orbits": [o.to_dict() for o in self.orbits],
            "multiplicities": list(self.multiplicities),
            "bounds": {"N": self.bound_n, "height": self.height_bound},
            "semi_decidable": not self.passed,
        }


@dataclass(frozen=True)
class CertifiedRoot:
    """
    A root approximation with |p(approximation)| <= residual_bound.

    Rational roots found by exact factorisation also carry the exact value.
    """

    approximation: complex
    residual_bound: float
    multiplicity: int
    exact: Optional[Fraction] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "approximation": [self.approximation.real, self.approximation.imag],
            "residual_bound": self.residual_bound,
            "multiplicity": self.multiplicity,
            "exact": rat_to_str(self.exact) if self.exact is not None else None,
        }


@dataclass(frozen=True)
class PreimageNode:
    """
    A node of a preimage tree; its id is "level:index" and ∞ nodes carry INFINITY.

    'residual_bound' certifies the node against the fiber polynomial of its parent and
    'multiplicity' is the multiplicity of the node as a root of φ^level(x) = basepoint.
    'exact' holds the value when it is rational or ∞.
    """

    id: str
    level: int
    value: Any
    parent: Optional[str]
    multiplicity: int
    residual_bound: float
    exact: Any = None

    @property
    def is_infinity(self) -> bool:
        return is_infinity(self.value)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "parent": self.parent,
            "value": "inf" if self.is_infinity else [self.value.real, self.value.imag],
            "multiplicity": self.multiplicity,
            "residual_bound": self.residual_bound,
            "exact": _point_to_json(self.exact) if self.exact is not None else None,
        }


@dataclass(frozen=True)
class PreimageTree:
    basepoint: Any
    depth: int
    levels: Tuple[Tuple[PreimageNode, ...], ...]
    tolerances: Tuple[float, ...] = ()

    def level(self, k: int) -> Tuple[PreimageNode, ...]:
        return self.levels[k]

    def node(self, node_id: str) -> PreimageNode:
        k, i = (int(part) for part in node_id.split(":"))
        return self.levels[k][i]

    def children(self, node: Union[PreimageNode, str]) -> List[PreimageNode]:
        node_id = node if isinstance(node, str) else node.id
        k = int(node_id.split(":")[0])
        if k + 1 >= len(self.levels):
            return []
        return [child for child in self.levels[k + 1] if child.parent == node_id]

    def count_with_multiplicity(self, k: int) -> int:
        return sum(n.multiplicity for n in self.levels[k])

    def finite_values(self, k: int) -> List[complex]:
        return [n.value for n in self.levels[k] if not n.is_infinity]

    def max_descent_error(self, phi: Any) -> float:
        """
        Largest relative distance between φ(node) and its parent over the whole tree.

        Parameters
        ----------
        phi: RationalMap
            The map the tree was built for.

        Returns
        -------
        float
            0.0 when every node maps onto its parent; ∞ nodes must map to ∞ parents.
        """
        worst = 0.0
        for level in self.levels[1:]:
            for n in level:
                parent = self.node(n.parent).value
                image = phi.evaluate_complex(n.value)
                if is_infinity(image) or is_infinity(parent):
                    if not (is_infinity(image) and is_infinity(parent)):
                        return float("inf")
                    continue
                worst = max(worst, relative_error(image, parent))
        return worst

    def to_dict(self) -> Dict[str, Any]:
        return {
            "basepoint": _point_to_json(self.basepoint),
            "depth": self.depth,
            "levels": [[n.to_dict() for n in level] for level in self.levels],
            "tolerances": list(self.tolerances),
        }


class Expression:
    """A node of a witness expression tree over preimage-tree node ids."""

    def evaluate(self, values: Dict[str, complex]) -> complex:
        raise NotImplementedError

    def node_ids(self) -> List[str]:
        raise NotImplementedError

    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class NodeRef(Expression):
    node_id: str

    def evaluate(self, values: Dict[str, complex]) -> complex:
        return complex(values[self.node_id])

    def node_ids(self) -> List[str]:
        return [self.node_id]

    def to_dict(self) -> Dict[str, Any]:
        return {"node": self.node_id}


@dataclass(frozen=True)
class Product(Expression):
    factors: Tuple[Expression, ...]

    def evaluate(self, values: Dict[str, complex]) -> complex:
        result = 1 + 0j
        for factor in self.factors:
            result *= factor.evaluate(values)
        return result

    def node_ids(self) -> List[str]:
        return [i for f in self.factors for i in f.node_ids()]

    def to_dict(self) -> Dict[str, Any]:
        return {"product": [f.to_dict() for f in self.factors]}


@dataclass(frozen=True)
class Sum(Expression):
    terms: Tuple[Expression, ...]

    def evaluate(self, values: Dict[str, complex]) -> complex:
        return sum((t.evaluate(values) for t in self.terms), 0j)

    def node_ids(self) -> List[str]:
        return [i for t in self.terms for i in t.node_ids()]

    def to_dict(self) -> Dict[str, Any]:
        return {"sum": [t.to_dict() for t in self.terms]}


@dataclass(frozen=True)
class Quotient(Expression):
    numerator: Expression
    denominator: Expression

    def evaluate(self, values: Dict[str, complex]) -> complex:
        return self.numerator.evaluate(values) / self.denominator.evaluate(values)

    def node_ids(self) -> List[str]:
        return self.numerator.node_ids() + self.denominator.node_ids()

    def to_dict(self) -> Dict[str, Any]:
        return {"quotient": {"numerator": self.numerator.to_dict(), "denominator": self.denominator.to_dict()}}


@dataclass(frozen=True)
class UnityWitness:
    """
    A replayable expression over preimage nodes.

    For kind "root" the value is a primitive m^j-th root of unity; for kind "trace" it is
    ζ + 1/ζ for a primitive d^n-th root ζ. 'nodes' stores the approximations the
    expression is evaluated at.
    """

    target: Tuple[int, int]
    expression: Expression
    level: int
    numeric_error: float
    value: complex
    expected: complex
    nodes: Dict[str, complex] = field(default_factory=dict)
    kind: str = "root"
    tolerance: float = 0.0

    @property
    def passed(self) -> bool:
        return self.numeric_error <= self.tolerance

    def replay(self) -> complex:
        return self.expression.evaluate(self.nodes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "target": list(self.target),
            "expression": self.expression.to_dict(),
            "level": self.level,
            "value": [self.value.real, self.value.imag],
            "expected": [self.expected.real, self.expected.imag],
            "numeric_error": self.numeric_error,
            "tolerance": self.tolerance,
            "nodes": {k: [v.real, v.imag] for k, v in sorted(self.nodes.items())},
        }


@dataclass(frozen=True)
class PowerStructureReport:
    """Orbit partition and product identities of the fiber of α under a map in K(x^m)."""

    m: int
    degree: int
    alpha: complex
    orbits: Tuple[Tuple[complex, ...], ...]
    product: complex
    expected_product: complex
    representative_power: complex
    expected_power: complex
    errors: Dict[str, float]
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(e <= self.tolerance for e in self.errors.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "degree": self.degree,
            "alpha": [self.alpha.real, self.alpha.imag],
            "orbit_sizes": [len(o) for o in self.orbits],
            "product": [self.product.real, self.product.imag],
            "expected_product": [self.expected_product.real, self.expected_product.imag],
            "representative_power": [self.representative_power.real, self.representative_power.imag],
            "expected_power": [self.expected_power.real, self.expected_power.imag],
            "errors": dict(self.errors),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class LattesFiberReport:
    d: int
    n: int
    x0: Fraction
    fiber: Tuple[complex, ...]
    translates: Tuple[complex, ...]
    max_error: float
    tolerance: float
    matched: int

    @property
    def passed(self) -> bool:
        return self.matched == len(self.fiber) and self.max_error <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "n": self.n,
            "x0": rat_to_str(self.x0),
            "fiber_size": len(self.fiber),
            "distinct_translates": len(
                {(round(t.real, 9), round(t.imag, 9)) for t in self.translates if not is_infinity(t)}
            ),
            "matched": self.matched,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ChebyshevReport:
    """Exact Chebyshev identities for T_d together with the trace witness at level n."""

    d: int
    n: int
    composition: bool
    semiconjugacy: bool
    witness: UnityWitness

    @property
    def passed(self) -> bool:
        return self.composition and self.semiconjugacy and self.witness.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "n": self.n,
            "composition": self.composition,
            "semiconjugacy": self.semiconjugacy,
            "witness": self.witness.to_dict(),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class LattesReport:
    """
    Degree and semiconjugacy checks of a Lattès map with its fiber check.

    'semiconjugacy' compares with the duplication formula for d = 2 and checks commutation
    with the d = 2 map otherwise.
    """

    a: Fraction
    b: Fraction
    d: int
    degree: int
    semiconjugacy: bool
    fiber: LattesFiberReport

    @property
    def passed(self) -> bool:
        return self.degree == self.d**2 and self.semiconjugacy and self.fiber.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "curve": {"a": rat_to_str(self.a), "b": rat_to_str(self.b)},
            "d": self.d,
            "degree": self.degree,
            "semiconjugacy": self.semiconjugacy,
            "fiber": self.fiber.to_dict(),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class NewtonPolygon:
    """
    Lower convex hull of the points (i, v(c_i)).

    'segments' lists (slope, horizontal length) left to right; the roots on a segment of
    slope s have valuation -s.
    """

    vertices: Tuple[Tuple[int, Fraction], ...]
    segments: Tuple[Tuple[Fraction, int], ...]

    @property
    def slopes(self) -> List[Fraction]:
        return [s for s, _ in self.segments]

    def root_valuations(self) -> List[Tuple[Fraction, int]]:
        """(valuation, count) for the nonzero roots."""
        return [(-s, length) for s, length in self.segments]

    @property
    def is_single_segment(self) -> bool:
        return len(self.segments) == 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": [[i, rat_to_str(v)] for i, v in self.vertices],
            "segments": [{"slope": rat_to_str(s), "length": n} for s, n in self.segments],
        }


@dataclass(frozen=True)
class BreakData:
    """Lower ramification breaks with the number of conjugates sharing each break."""

    lower_breaks: Tuple[Tuple[Fraction, int], ...]
    degree: int
    galois: GaloisStatus = GaloisStatus.ASSUMED

    @property
    def breaks(self) -> List[Fraction]:
        return [b for b, _ in self.lower_breaks]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "lower_breaks": [{"break": rat_to_str(b), "count": c} for b, c in self.lower_breaks],
            "galois": self.galois.value,
        }


@dataclass(frozen=True)
class BreakComparison:
    """
    Breaks of Q_p(ζ_{p^n}) / Q_p from the ramification polygon against the in-tower oracle.

    'transitive' records φ_{F/K} = φ_{K'/K} ∘ φ_{F/K'} through K' = Q_p(ζ_{p^(n-1)}) and
    'dominated' records φ_{F/K} <= φ_{F/K'} pointwise.
    """

    p: int
    n: int
    computed: BreakData
    oracle: BreakData
    transitive: bool
    dominated: bool

    @property
    def passed(self) -> bool:
        return self.computed.lower_breaks == self.oracle.lower_breaks and self.transitive and self.dominated

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "n": self.n,
            "computed": self.computed.to_dict(),
            "oracle": self.oracle.to_dict(),
            "transitive": self.transitive,
            "dominated": self.dominated,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class NewtonHenselReport:
    """Agreement between Hensel root valuations and the slopes of the Newton polygon."""

    p: int
    polygon: NewtonPolygon
    roots: Tuple[Tuple[Fraction, Fraction], ...]
    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures and all(v == expected for v, expected in self.roots)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "polygon": self.polygon.to_dict(),
            "roots": [{"valuation": rat_to_str(v), "expected": rat_to_str(e)} for v, e in self.roots],
            "failures": list(self.failures),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class PowerLikeData:
    """The reduction of φ^m is c·x^(p^r) over F_p."""

    m: int
    r: int
    c: int
    p: int

    @property
    def level_degree(self) -> int:
        return self.p**self.r

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "r": self.r, "c": self.c, "p": self.p}


@dataclass(frozen=True)
class ConjugatedModel:
    """
    The model ψ^m = μ ∘ φ^m ∘ μ^-1 = f1 / g1 with s_i, t_i the coefficients of f1, g1.

    'level' is the tower level of E_1 = K(γ, δ, u): 0, or 1 when u needs an inert level.
    """

    gamma: Any
    delta: Any
    u: Any
    mobius: Mobius
    num: Poly
    den: Poly
    tower: Any
    level: int
    exact: bool

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": _point_to_json(self.gamma),
            "delta": _point_to_json(self.delta),
            "u": jsonable(self.u),
            "s": [str(c) for c in self.num.padded(self.degree + 1)],
            "t": [str(c) for c in self.den.padded(self.degree + 1)],
            "exact": self.exact,
            "level": self.level,
        }


@dataclass(frozen=True)
class LevelRecord:
    """
    Certificate entry for one tower level.

    'coeff_vals' holds v_{E_1}(a_{n,i}) of the middle coefficients (None when a coefficient
    vanishes to precision); 'replay' is None when the defining relation was not replayed.
    """

    n: int
    qn: int
    coeff_vals: Tuple[Optional[Fraction], ...]
    slope: Fraction
    single_segment: bool
    norm_ok: bool
    replay: Optional[bool]

    @property
    def passed(self) -> bool:
        return self.single_segment and self.norm_ok and self.replay is not False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "qn": self.qn,
            "coeff_vals": [rat_to_str(v) if v is not None else None for v in self.coeff_vals],
            "slope": rat_to_str(self.slope),
            "single_segment": self.single_segment,
            "norm_ok": self.norm_ok,
            "replay": "skipped" if self.replay is None else self.replay,
        }


@dataclass(frozen=True)
class APFCertificate:
    power_like: PowerLikeData
    model: ConjugatedModel
    levels: Tuple[LevelRecord, ...]
    epsilon: Optional[Fraction]
    basepoint: Any
    verdict: CertificateVerdict
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == CertificateVerdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.power_like.m,
            "r": self.power_like.r,
            "c": self.power_like.c,
            "p": self.power_like.p,
            "gamma": _point_to_json(self.model.gamma),
            "delta": _point_to_json(self.model.delta),
            "u": jsonable(self.model.u),
            "levels": [lvl.to_dict() for lvl in self.levels],
            "epsilon": rat_to_str(self.epsilon) if self.epsilon is not None else None,
            "basepoint": _point_to_json(self.basepoint),
            "verdict": self.verdict.value,
            "notes": jsonable(self.notes),
        }


def max_abs(values: Sequence[complex]) -> float:
    """Largest modulus in a sequence, 0.0 for an empty one."""
    return float(np.max(np.abs(np.asarray(values, dtype=complex)))) if len(values) else 0.0


def relative_error(value: complex, expected: complex) -> float:
    return abs(value - expected) / max(1.0, abs(expected))


__all__ = [
    "CriticalData",
    "OrbitReport",
    "PCFReport",
    "CertifiedRoot",
    "PreimageNode",
    "PreimageTree",
    "Expression",
    "NodeRef",
    "Product",
    "Sum",
    "Quotient",
    "UnityWitness",
    "PowerStructureReport",
    "LattesFiberReport",
    "ChebyshevReport",
    "LattesReport",
    "NewtonPolygon",
    "BreakData",
    "BreakComparison",
    "NewtonHenselReport",
    "PowerLikeData",
    "ConjugatedModel",
    "LevelRecord",
    "APFCertificate",
    "max_abs",
    "relative_error",
]
