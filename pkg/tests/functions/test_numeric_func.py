from fractions import Fraction
from typing import Union

import numpy as np
import pytest
from pytest_lazyfixture import lazy_fixture

from iterfield.functions.algebra_func import normalize_map
from iterfield.functions.numeric_func import *
from iterfield.helpers.exceptions import (
    DegenerateFiber,
    DegenerateLift,
    HypothesisFailure,
    NotPowerComposite,
)
from iterfield.helpers.polynomial import INFINITY, Mobius, Poly, RationalMap, is_infinity


def _map(num, den=(1,)):
    return normalize_map(list(num), list(den))


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ([-2, 0, 1], {}, [(-(2**0.5), 1), (2**0.5, 1)]),
        ([1, 0, 1], {}, [(-1j, 1), (1j, 1)]),
        ([-1, 3, -3, 1], {}, [(1, 3)]),
        ([Fraction(-1, 4), 0, 1], {}, [(-0.5, 1), (0.5, 1)]),
        ([-1, -1 - 2j, 1 - 2j, 1], {}, [(-1, 1), (1j, 2)]),
    ],
)
def test_roots_certified(data: list, params: dict, expected: list):
    roots = roots_certified(Poly(data), **params)
    assert [r.multiplicity for r in roots] == [m for _, m in expected], "Test failed."
    for root, (value, _) in zip(roots, expected):
        assert abs(root.approximation - value) < 1e-6, "Test failed."
        assert root.residual_bound < 1e-9, "Test failed."


@pytest.mark.numeric_func
def test_roots_certified_exact_rational_roots():
    roots = roots_certified(Poly([-1, 3, -3, 1]))
    assert roots[0].exact == Fraction(1) and roots[0].residual_bound == 0.0, "Test failed."
    assert roots[0].to_dict()["exact"] == "1", "Test failed."


@pytest.mark.numeric_func
def test_roots_certified_multiplicities_add_up():
    poly = Poly([-2, 0, 1]) ** 2 * Poly([1, 1]) ** 3
    roots = roots_certified(poly)
    assert sum(r.multiplicity for r in roots) == 7, "Test failed."
    assert sorted(r.multiplicity for r in roots) == [2, 2, 3], "Test failed."


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (lazy_fixture("map_xsq"), {"b": 1, "depth": 2}, [-1j, 1j, -1, 1]),
        (lazy_fixture("map_xsq_minus_1"), {"b": 3, "depth": 1}, [-2, 2]),
        (lazy_fixture("map_xsq_minus_1"), {"b": 0, "depth": 1}, [-1, 1]),
    ],
)
def test_preimage_tree(data: RationalMap, params: dict, expected: list):
    tree = preimage_tree(data, **params)
    last = tree.level(params["depth"])
    assert len(last) == len(expected), "Test failed."
    for node, value in zip(last, expected):
        assert abs(node.value - value) < 1e-9, "Test failed."
    assert tree.count_with_multiplicity(params["depth"]) == 2 ** params["depth"], "Test failed."
    assert tree.max_descent_error(data) < 1e-9, "Test failed."


@pytest.mark.numeric_func
def test_preimage_tree_node_ids_and_parents(map_xsq):
    tree = preimage_tree(map_xsq, 1, 2)
    assert [n.id for n in tree.level(2)] == ["2:0", "2:1", "2:2", "2:3"], "Test failed."
    assert [n.parent for n in tree.level(2)] == ["1:0", "1:0", "1:1", "1:1"], "Test failed."
    assert [c.id for c in tree.children("1:1")] == ["2:2", "2:3"], "Test failed."
    assert tree.level(1)[0].exact == Fraction(-1), "Test failed."


@pytest.mark.numeric_func
def test_preimage_tree_infinity_nodes(map_inverse_square):
    tree = preimage_tree(map_inverse_square, 0, 2)
    (top,) = tree.level(1)
    assert is_infinity(top.value) and top.multiplicity == 2, "Test failed."
    (bottom,) = tree.level(2)
    assert bottom.value == 0 and bottom.multiplicity == 4, "Test failed."


@pytest.mark.numeric_func
def test_preimage_tree_cumulative_multiplicity():
    # T_3(x) - 2 = (x - 2)(x + 1)^2
    tree = preimage_tree(chebyshev_map(3), 2, 1)
    assert [(round(n.value.real), n.multiplicity) for n in tree.level(1)] == [(-1, 2), (2, 1)], "Test failed."
    assert tree.count_with_multiplicity(1) == 3, "Test failed."


@pytest.mark.numeric_func
def test_preimage_tree_depth_zero(map_xsq):
    tree = preimage_tree(map_xsq, Fraction(1, 2), 0)
    assert tree.depth == 0 and len(tree.levels) == 1, "Test failed."


@pytest.mark.numeric_func
def test_preimage_tree_degenerate_fiber():
    phi = _map([0, 0, 1], [1, 0, 1])
    with pytest.raises(DegenerateFiber):
        preimage_tree(phi, complex(1 + 1e-15), 1)


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (lazy_fixture("map_xsq"), {"alpha": 4, "m": 2}, (-4, 4)),
        (lazy_fixture("map_quartic_even"), {"alpha": 3, "m": 2}, (-3, -3)),
        (lazy_fixture("map_quartic_even"), {"alpha": 1j, "m": 2}, (-1j, -1j)),
    ],
)
def test_verify_power_structure(data: RationalMap, params: dict, expected: tuple):
    report = verify_power_structure(data, **params)
    assert report.passed, "Test failed."
    assert abs(report.expected_product - expected[0]) < 1e-12, "Test failed."
    assert abs(report.product - expected[0]) < 1e-8, "Test failed."
    assert abs(report.representative_power - expected[1]) < 1e-8, "Test failed."
    assert all(len(orbit) == params["m"] for orbit in report.orbits), "Test failed."


@pytest.mark.numeric_func
def test_verify_power_structure_cubic_rational_map():
    phi = _map([0, 0, 0, 0, 0, 0, 1], [1, 0, 0, 2])
    report = verify_power_structure(phi, Fraction(5), 3)
    assert report.passed and report.degree == 6, "Test failed."
    assert len(report.orbits) == 2, "Test failed."


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (([0, 1, 1], [1]), {"alpha": 2, "m": 2}, NotPowerComposite),
        (([-1, 0, 1], [1]), {"alpha": 2, "m": 2}, NotPowerComposite),
        (([0, 0, 1], [1]), {"alpha": 2, "m": 3}, NotPowerComposite),
        (([0, 0, 1], [1]), {"alpha": 2, "m": 1}, NotPowerComposite),
    ],
)
def test_verify_power_structure_errors(data: tuple, params: dict, expected):
    with pytest.raises(expected):
        verify_power_structure(_map(*data), **params)


@pytest.mark.numeric_func
@pytest.mark.slow
def test_verify_power_structure_random_instances():
    rng = np.random.default_rng(42)
    for _ in range(200):
        m = int(rng.choice([2, 3]))
        top = int(rng.integers(1, 3))
        num = [0] * (m * top + 1)
        for i in range(1, top + 1):
            num[m * i] = int(rng.integers(-5, 6))
        num[m * top] = int(rng.choice([-3, -2, -1, 1, 2, 3]))
        den = [0] * (m * (top - 1) + 1)
        for i in range(top):
            den[m * i] = int(rng.integers(-5, 6))
        den[0] = int(rng.choice([-3, -2, -1, 1, 2, 3]))
        alpha = Fraction(int(rng.choice([-7, -3, -1, 1, 2, 5])), int(rng.integers(1, 5)))
        report = verify_power_structure(_map(num, den), alpha, m, strict=False)
        assert report.passed, "Test failed."


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (lazy_fixture("map_xsq"), {"b": 2, "m": 2, "j": 1}, (-1, 1)),
        (lazy_fixture("map_xsq"), {"b": 2, "m": 2, "j": 2}, (-1j, 2)),
        (lazy_fixture("map_xsq"), {"b": 3, "m": 2, "j": 3}, (None, 3)),
        (lazy_fixture("map_xsq_minus_1"), {"b": 3, "m": 2, "j": 1}, (-1, 2)),
        (lazy_fixture("map_xsq_minus_1"), {"b": 3, "m": 2, "j": 2}, (None, 4)),
    ],
)
def test_witness_root_of_unity(data: RationalMap, params: dict, expected: tuple):
    witness = witness_root_of_unity(data, **params)
    order = params["m"] ** params["j"]
    assert witness.passed and witness.level == expected[1], "Test failed."
    assert abs(witness.expected**order - 1) < 1e-12, "Test failed."
    assert abs(witness.expected ** (order // params["m"]) - 1) > 0.5, "Test failed."
    assert abs(witness.replay() - witness.value) < 1e-12, "Test failed."
    if expected[0] is not None:
        assert abs(witness.value - expected[0]) < 1e-9, "Test failed."
    assert set(witness.expression.node_ids()) <= set(witness.nodes), "Test failed."


@pytest.mark.numeric_func
def test_witness_root_of_unity_after_conjugation():
    # (x - 1)^2 + 1 is conjugate to x^2 by x -> x - 1.
    phi = _map([2, -2, 1])
    witness = witness_root_of_unity(phi, 3, 2, 1, mobius=Mobius(1, -1, 0, 1))
    assert abs(witness.value + 1) < 1e-9, "Test failed."


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (lazy_fixture("map_xsq"), {"b": 0, "m": 2, "j": 1}, HypothesisFailure),
        (([1, 0, 1], [1]), {"b": 2, "m": 2, "j": 1}, HypothesisFailure),
        (([0, 1, 1], [1]), {"b": 2, "m": 2, "j": 1}, HypothesisFailure),
        (lazy_fixture("map_xsq"), {"b": 2, "m": 1, "j": 1}, HypothesisFailure),
    ],
)
def test_witness_root_of_unity_hypotheses(data, params: dict, expected):
    phi = _map(*data) if isinstance(data, tuple) else data
    with pytest.raises(expected):
        witness_root_of_unity(phi, **params)


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (2, {"b": 3, "n": 1}, -2),
        (2, {"b": 3, "n": 2}, 0),
        (3, {"b": 3, "n": 1}, -1),
        (2, {"b": 1, "n": 2}, 0),
        (2, {"b": Fraction(7, 2), "n": 3}, 2**0.5),
    ],
)
def test_chebyshev_trace_witness(data: int, params: dict, expected: float):
    witness = chebyshev_trace_witness(data, **params)
    assert witness.kind == "trace" and witness.target == (data, params["n"]), "Test failed."
    assert abs(witness.value - expected) < 1e-9, "Test failed."
    assert witness.passed, "Test failed."
    assert len(witness.nodes) == 3 and all(k.startswith(f"{params['n']}:") for k in witness.nodes), "Test failed."


@pytest.mark.numeric_func
def test_chebyshev_trace_witness_degenerate_lift():
    with pytest.raises(DegenerateLift):
        chebyshev_trace_witness(2, -2, 1)


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (((2, 3), (2, 3)), {"a": 0}, (0, 1)),
        (((0, 1), (0, 1)), {"a": 0}, (0, -1)),
        (((0, 1), (0, -1)), {"a": 0}, None),
    ],
)
def test_elliptic_add(data: tuple, params: dict, expected: Union[tuple, None]):
    out = elliptic_add(*data, **params)
    if expected is None:
        assert is_infinity(out), "Test failed."
    else:
        assert abs(out[0] - expected[0]) < 1e-12 and abs(out[1] - expected[1]) < 1e-12, "Test failed."


@pytest.mark.numeric_func
def test_elliptic_add_neutral_element():
    assert elliptic_add(INFINITY, (2, 3), 0) == (2, 3), "Test failed."
    assert elliptic_add((2, 3), INFINITY, 0) == (2, 3), "Test failed."


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((0, 1), {"N": 1}, 1),
        ((0, 1), {"N": 2}, 4),
        ((0, 1), {"N": 3}, 9),
        ((-1, 1), {"N": 3}, 9),
        ((-1, 1), {"N": 4}, 16),
    ],
)
def test_torsion_points(data: tuple, params: dict, expected: int):
    a, b = data
    points = torsion_points(a, b, **params)
    assert len(points) == expected, "Test failed."
    for point in points:
        if is_infinity(point):
            continue
        x, y = point
        assert abs(y * y - (x**3 + a * x + b)) < 1e-8, "Test failed."
        total = point
        for _ in range(params["N"] - 1):
            total = elliptic_add(total, point, a)
        assert is_infinity(total), "Test failed."


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((0, 1), {"d": 2, "x0": 2, "n": 1}, 4),
        ((0, 1), {"d": 2, "x0": 2, "n": 0}, 1),
        ((-1, 1), {"d": 3, "x0": 1, "n": 1}, 9),
        ((0, 1), {"d": 2, "x0": 2, "n": 2}, 16),
        ((0, 1), {"d": 1, "x0": 5, "n": 2}, 1),
    ],
)
def test_lattes_fiber_check(data: tuple, params: dict, expected: int):
    report = lattes_fiber_check(*data, **params)
    assert report.passed, "Test failed."
    assert report.matched == len(report.fiber) == expected, "Test failed."
    assert report.to_dict()["fiber_size"] == expected, "Test failed."


@pytest.mark.numeric_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (lazy_fixture("map_xsq_minus_1"), {"mu": Mobius(2, 1, 1, 1), "b": 3, "n": 2}, 1e-8),
        (lazy_fixture("map_xsq"), {"mu": Mobius(1, 3, 0, 1), "b": 2, "n": 3}, 1e-8),
        (lazy_fixture("map_inverse_square"), {"mu": Mobius(0, 1, 1, 0), "b": 2, "n": 2}, 1e-8),
    ],
)
def test_conjugation_covariance(data: RationalMap, params: dict, expected: float):
    assert conjugation_covariance(data, **params) < expected, "Test failed."
