import cmath
from fractions import Fraction
from typing import Union

import numpy as np
import pytest
from pytest_lazyfixture import lazy_fixture

from iterfield.checks.roots import ChebyshevTrace, LattesFiber, OrbitProducts, RootOfUnityWitness
from iterfield.helpers.exceptions import HypothesisFailure, NotPowerComposite


@pytest.mark.roots
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (
            lazy_fixture("orbit_batch"),
            {"init": {"disable_warnings": True}},
            [True, True, True, True],
        ),
        (
            lazy_fixture("orbit_batch"),
            {"init": {"disable_warnings": True, "display_progressbar": True}, "call": {"batch_size": 3}},
            [True, True, True, True],
        ),
        (
            lazy_fixture("orbit_batch"),
            {"init": {"disable_warnings": True, "return_aggregate": True}},
            [1.0],
        ),
    ],
)
def test_orbit_products(data: list, params: dict, expected: list):
    init_params = params.get("init", {})
    call_params = params.get("call", {})

    scores = OrbitProducts(**init_params)(instances=data, **call_params)
    if init_params.get("return_aggregate"):
        assert scores == expected, "Test failed."
    else:
        assert [s.passed for s in scores] == expected, "Test failed."
        assert all(len(o) == 2 for s in scores for o in s.orbits), "Test failed."


@pytest.mark.roots
def test_orbit_products_not_power_composite(map_xsq_minus_1):
    with pytest.raises(NotPowerComposite):
        OrbitProducts(disable_warnings=True)(instances=[{"phi": map_xsq_minus_1, "alpha": 2, "m": 2}])


@pytest.mark.roots
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (lazy_fixture("witness_batch"), {"init": {"disable_warnings": True}}, [(1, -1), (2, -1j), (2, -1), (4, None)]),
        (lazy_fixture("witness_batch_conjugated"), {"init": {"disable_warnings": True}}, [(1, -1)]),
    ],
)
def test_root_of_unity_witness(data: list, params: dict, expected: list):
    scores = RootOfUnityWitness(**params.get("init", {}))(instances=data, **params.get("call", {}))
    assert all(s.passed for s in scores), "Test failed."
    for score, (level, value) in zip(scores, expected):
        assert score.level == level, "Test failed."
        if value is not None:
            assert abs(score.value - value) < 1e-9, "Test failed."


@pytest.mark.roots
def test_root_of_unity_witness_values_are_primitive(witness_batch):
    scores = RootOfUnityWitness(disable_warnings=True)(instances=witness_batch)
    for instance, score in zip(witness_batch, scores):
        order = instance["m"] ** instance["j"]
        assert abs(score.value**order - 1) < 1e-8, "Test failed."
        assert abs(score.value ** (order // instance["m"]) - 1) > 0.5, "Test failed."
        assert abs(score.replay() - score.value) < 1e-12, "Test failed."


@pytest.mark.roots
def test_root_of_unity_witness_hypothesis_failure(map_xsq):
    with pytest.raises(HypothesisFailure):
        RootOfUnityWitness(disable_warnings=True)(instances=[{"phi": map_xsq, "b": 0, "m": 2, "j": 1}])


@pytest.mark.roots
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (lazy_fixture("chebyshev_batch"), {"init": {"disable_warnings": True}}, [-2.0, -1.0, 0.0]),
        (lazy_fixture("chebyshev_batch"), {"init": {"disable_warnings": True, "return_aggregate": True}}, 1.0),
    ],
)
def test_chebyshev_trace(data: list, params: dict, expected: Union[list, float]):
    scores = ChebyshevTrace(**params.get("init", {}))(instances=data, **params.get("call", {}))
    if isinstance(expected, float):
        assert scores == [expected], "Test failed."
        return
    assert all(s.composition and s.semiconjugacy for s in scores), "Test failed."
    assert all(s.passed for s in scores), "Test failed."
    assert np.allclose([s.witness.value.real for s in scores], expected, atol=1e-10), "Test failed."


@pytest.mark.roots
def test_chebyshev_trace_to_dict(chebyshev_batch):
    (score,) = ChebyshevTrace(disable_warnings=True)(instances=chebyshev_batch[:1])
    out = score.to_dict()
    assert (out["d"], out["n"], out["passed"]) == (2, 1, True), "Test failed."
    assert out["witness"]["kind"] == "trace", "Test failed."


@pytest.mark.roots
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (lazy_fixture("lattes_batch"), {"init": {"disable_warnings": True}}, [(4, 4), (9, 9)]),
    ],
)
def test_lattes_fiber(data: list, params: dict, expected: list):
    scores = LattesFiber(**params.get("init", {}))(instances=data, **params.get("call", {}))
    for score, (degree, fiber_size) in zip(scores, expected):
        assert score.degree == degree and score.semiconjugacy, "Test failed."
        assert len(score.fiber.fiber) == fiber_size and score.fiber.matched, "Test failed."
        assert score.passed, "Test failed."


@pytest.mark.roots
def test_lattes_fiber_to_dict(lattes_batch):
    (score,) = LattesFiber(disable_warnings=True)(instances=lattes_batch[:1])
    out = score.to_dict()
    assert out["curve"] == {"a": "0", "b": "1"} and out["degree"] == 4, "Test failed."
    assert out["fiber"]["distinct_translates"] == 4, "Test failed."


@pytest.mark.roots
def test_chebyshev_trace_matches_cosine():
    scores = ChebyshevTrace(disable_warnings=True)(instances=[{"d": 2, "b": Fraction(7, 2), "n": 3}])
    assert abs(scores[0].witness.value - 2 * cmath.cos(2 * cmath.pi / 8)) < 1e-10, "Test failed."
