from fractions import Fraction

import pytest

from iterfield.functions.ramification_func import *
from iterfield.helpers.exceptions import NotEisenstein


def _breaks(*pairs):
    return tuple((Fraction(b), c) for b, c in pairs)


@pytest.mark.ramification_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ([-2, 0, 1], {"p": 2}, (_breaks((2, 1)), 2)),
        ([2, 2, 1], {"p": 2}, (_breaks((1, 1)), 2)),
        ([-2, 1], {"p": 2}, ((), 1)),
        ([3, 3, 1], {"p": 3}, (_breaks((0, 1)), 2)),
    ],
)
def test_ramification_breaks(data: list, params: dict, expected: tuple):
    out = ramification_breaks(Poly(data), **params)
    assert (out.lower_breaks, out.degree) == expected, "Test failed."
    assert out.galois == GaloisStatus.VERIFIED, "Test failed."


@pytest.mark.ramification_func
def test_ramification_breaks_galois_status():
    out = ramification_breaks(Poly([2, 2, 0, 1]), p=2)
    assert out.degree == 3 and out.galois == GaloisStatus.ASSUMED, "Test failed."
    assert sum(c for _, c in out.lower_breaks) == 2, "Test failed."


@pytest.mark.ramification_func
def test_ramification_breaks_not_eisenstein():
    with pytest.raises(NotEisenstein):
        ramification_breaks(Poly([-1, 0, 1]), p=2)


@pytest.mark.ramification_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((2, 1), {}, ["2", "1"]),
        ((2, 2), {}, ["2", "2", "1"]),
        ((3, 1), {}, ["3", "3", "1"]),
        ((2, 3), {}, ["2", "4", "6", "4", "1"]),
    ],
)
def test_cyclotomic_polynomial_shifted(data: tuple, params: dict, expected: list):
    assert cyclotomic_polynomial_shifted(*data).to_strings() == expected, "Test failed."


@pytest.mark.ramification_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((2, 1), {}, (_breaks(), 1)),
        ((2, 2), {}, (_breaks((1, 1)), 2)),
        ((2, 3), {}, (_breaks((1, 2), (3, 1)), 4)),
        ((3, 1), {}, (_breaks((0, 1)), 2)),
        ((3, 2), {}, (_breaks((0, 3), (2, 2)), 6)),
        ((5, 1), {}, (_breaks((0, 3)), 4)),
    ],
)
def test_cyclotomic_oracle(data: tuple, params: dict, expected: tuple):
    out = cyclotomic_oracle(*data, **params)
    assert (out.lower_breaks, out.degree) == expected, "Test failed."


@pytest.mark.ramification_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((2, 1), {}, True),
        ((2, 2), {}, True),
        ((2, 3), {}, True),
        ((3, 1), {}, True),
        ((3, 2), {}, True),
        pytest.param((3, 3), {}, True, marks=pytest.mark.slow),
    ],
)
def test_breaks_agree_with_oracle(data: tuple, params: dict, expected: bool):
    p, n = data
    computed = ramification_breaks(cyclotomic_polynomial_shifted(p, n), p=p, galois=True)
    oracle = cyclotomic_oracle(p, n)
    assert (computed.lower_breaks == oracle.lower_breaks) == expected, "Test failed."
    assert computed.degree == oracle.degree, "Test failed."


@pytest.mark.ramification_func
def test_cyclotomic_tower():
    tower = cyclotomic_tower(2, 3)
    assert tower.height == 3 and tower.ramification_index() == 4, "Test failed."
    assert [lvl.degree for lvl in tower.levels] == [1, 2, 2], "Test failed."
    zeta = tower.uniformizer(3) + 1
    assert zeta**8 == 1 and not (zeta**4 == 1), "Test failed."


@pytest.mark.ramification_func
def test_cyclotomic_step_breaks():
    out = cyclotomic_step_breaks(2, 3)
    assert out.lower_breaks == _breaks((3, 1)) and out.degree == 2, "Test failed."


@pytest.mark.ramification_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (BreakData(_breaks((2, 1)), 2), {"x": [0, 1, 2, 4, 6]}, ["0", "1", "2", "3", "4"]),
        (BreakData((), 1), {"x": [0, 3, Fraction(7, 2)]}, ["0", "3", "7/2"]),
        (BreakData(_breaks((1, 2), (3, 1)), 4), {"x": [1, 3, 7]}, ["1", "2", "3"]),
    ],
)
def test_herbrand_compose_from_breaks(data: BreakData, params: dict, expected: list):
    phi = herbrand_compose(data)
    assert [str(v) for v in phi.sample(params["x"])] == expected, "Test failed."
    assert all(phi.psi(phi(x)) == x for x in params["x"]), "Test failed."


@pytest.mark.ramification_func
def test_herbrand_compose_two_functions():
    outer = herbrand_compose(BreakData(_breaks((1, 1)), 2))
    inner = herbrand_compose(BreakData(_breaks((3, 1)), 2))
    composite = herbrand_compose(outer, inner)
    assert composite == herbrand_compose(BreakData(_breaks((1, 2), (3, 1)), 4)), "Test failed."


@pytest.mark.ramification_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((2, 2), {}, {"transitive": True, "dominated": True}),
        ((2, 3), {}, {"transitive": True, "dominated": True}),
        ((3, 2), {}, {"transitive": True, "dominated": True}),
    ],
)
def test_cyclotomic_transition_checks(data: tuple, params: dict, expected: dict):
    out = cyclotomic_transition_checks(*data, **params)
    assert {k: out[k] for k in expected} == expected, "Test failed."


@pytest.mark.ramification_func
def test_upper_breaks_of_zeta_8():
    phi = cyclotomic_transition_checks(2, 3)["phi_F_K"]
    assert phi.upper_breaks() == [Fraction(1), Fraction(2)], "Test failed."


@pytest.mark.ramification_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((2, 1), {}, True),
        ((2, 2), {}, True),
        ((2, 3), {}, True),
        ((3, 1), {}, True),
        ((3, 2), {}, True),
        pytest.param((3, 3), {}, True, marks=pytest.mark.slow),
    ],
)
def test_compare_cyclotomic_breaks(data: tuple, params: dict, expected: bool):
    out = compare_cyclotomic_breaks(*data, **params)
    assert out.passed == expected, "Test failed."
    assert out.to_dict()["passed"] == expected and out.to_dict()["p"] == data[0], "Test failed."
