from fractions import Fraction
from typing import Union

import numpy as np
import pytest

from iterfield.functions.padic_func import *
from iterfield.helpers.exceptions import (
    DivisionByZeroToPrecision,
    HenselConditionFailed,
    NotEisenstein,
    PAdicError,
    PrecisionExhausted,
)


def _q(x, p=2, precision=60):
    return PAdicValue.from_rational(x, p, precision)


@pytest.fixture
def tower_sqrt2():
    return push_eisenstein(LocalTower(2, 60), Poly([-2, 0, 1]))


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((_q(12), None), {"op": "val"}, 2),
        ((_q(Fraction(1, 8)), None), {"op": "val"}, -3),
        ((_q(12), _q(6)), {"op": "add"}, Fraction(18)),
        ((_q(12), _q(6)), {"op": "mul"}, Fraction(72)),
        ((_q(12), _q(6)), {"op": "div"}, Fraction(2)),
        ((_q(12), 5), {"op": "sub"}, Fraction(7)),
        ((_q(Fraction(17, 9), 3), None), {"op": "val"}, -2),
    ],
)
def test_padic_arith(data: tuple, params: dict, expected: Union[int, Fraction]):
    x, y = data
    out = padic_arith(params["op"], x, y)
    if isinstance(expected, Fraction):
        assert out.to_fraction() == expected, "Test failed."
    else:
        assert out == expected, "Test failed."


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((12, 10), {"p": 2}, 3),
        ((Fraction(3, 4), 7), {"p": 2}, -2),
        ((45, Fraction(1, 3)), {"p": 3}, 1),
        ((250, 5), {"p": 5}, 4),
    ],
)
def test_valuation_additive(data: tuple, params: dict, expected: int):
    p = params["p"]
    x, y = (PAdicValue.from_rational(v, p, 40) for v in data)
    assert padic_arith("val", x * y) == padic_arith("val", x) + padic_arith("val", y) == expected, "Test failed."


@pytest.mark.padic_func
def test_padic_arith_errors():
    with pytest.raises(DivisionByZeroToPrecision):
        padic_arith("div", _q(1), PAdicValue.zero(2, 60))
    with pytest.raises(PrecisionExhausted):
        padic_arith("val", PAdicValue.zero(2, 60))
    with pytest.raises(ValueError):
        padic_arith("pow", _q(1), _q(2))


@pytest.mark.padic_func
def test_padic_sqrt():
    root = padic_arith("sqrt", _q(17))
    assert not (root * root - 17).with_precision(50), "Test failed."


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ([-2, 0, 1], {"p": 2}, ((Fraction(-1, 2), 2),)),
        ([2, 1, 1], {"p": 2}, ((Fraction(-1), 1), (Fraction(0), 1))),
        ([2, 2, 0, 1], {"p": 2}, ((Fraction(-1, 3), 3),)),
        ([9, 3, 0, 1], {"p": 3}, ((Fraction(-1), 1), (Fraction(-1, 2), 2))),
        ([0, 4, 1], {"p": 2}, ((Fraction(-2), 1),)),
    ],
)
def test_newton_polygon(data: list, params: dict, expected: tuple):
    polygon = newton_polygon(Poly([Fraction(c) for c in data]), **params)
    assert polygon.segments == expected, "Test failed."
    assert sum(n for _, n in polygon.segments) == len(data) - 1 - polygon.vertices[0][0], "Test failed."


@pytest.mark.padic_func
def test_newton_polygon_over_tower(tower_sqrt2):
    pi = tower_sqrt2.generator(1)
    polygon = newton_polygon(Poly([pi, 1]), tower=tower_sqrt2)
    assert polygon.segments == ((Fraction(-1), 1),), "Test failed."
    polygon = newton_polygon(Poly([2, 0, pi]), tower=tower_sqrt2)
    assert polygon.segments == ((Fraction(-1, 2), 2),), "Test failed."


@pytest.mark.padic_func
def test_newton_polygon_precision_exhausted():
    f = Poly([_q(1), PAdicValue.zero(2, 5), _q(1)])
    assert newton_polygon(f).segments == ((Fraction(0), 2),), "Test failed."
    with pytest.raises(PrecisionExhausted):
        newton_polygon(Poly([PAdicValue.zero(2, 5), _q(1), _q(1)]))


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ([-5, 1], {"seed": 0, "p": 2}, 5),
        ([Fraction(-1, 3), 1], {"seed": 0, "p": 3}, None),
        ([-17, 0, 1], {"seed": 1, "p": 2}, None),
        ([2, -1, 1], {"seed": 2, "p": 2}, 6),
        ([-7, 0, 1], {"seed": 1, "p": 3}, None),
    ],
)
def test_hensel_root(data: list, params: dict, expected: Union[int, None]):
    f = Poly([Fraction(c) for c in data])
    root = hensel_root(f, **params)
    assert not f(root).with_precision(40), "Test failed."
    if expected is not None:
        assert root.lift() % 8 == expected, "Test failed."


@pytest.mark.padic_func
def test_hensel_root_over_tower(tower_sqrt2):
    # 1 + sqrt(2) is a root of x^2 - 2x - 1.
    pi = tower_sqrt2.generator(1)
    f = Poly([-1, -2, 1])
    root = hensel_root(f, pi + 5, tower=tower_sqrt2)
    assert root == 1 + pi, "Test failed."


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ([-2, 0, 1], {"seed": 0, "p": 2}, HenselConditionFailed),
        ([1, 0, 1], {"seed": 0, "p": 2}, HenselConditionFailed),
        ([-3, 0, 1], {"seed": 1, "p": 2}, HenselConditionFailed),
    ],
)
def test_hensel_root_errors(data: list, params: dict, expected):
    with pytest.raises(expected):
        hensel_root(Poly([Fraction(c) for c in data]), **params)


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ([-2, 0, 1], {"p": 2}, 2),
        ([2, 2, 0, 1], {"p": 2}, 3),
        ([3, 3, 1], {"p": 3}, 2),
    ],
)
def test_push_eisenstein(data: list, params: dict, expected: int):
    tower = push_eisenstein(LocalTower(params["p"], 60), Poly(data))
    assert tower.ramification_index() == expected, "Test failed."
    assert tower.height == 1 and tower.degree() == expected, "Test failed."


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ([-1, 0, 1], {"p": 2}, NotEisenstein),
        ([4, 0, 1], {"p": 2}, NotEisenstein),
        ([2, 0, 3], {"p": 2}, NotEisenstein),
    ],
)
def test_push_eisenstein_errors(data: list, params: dict, expected):
    with pytest.raises(expected):
        push_eisenstein(LocalTower(params["p"], 60), Poly(data))


@pytest.mark.padic_func
def test_push_eisenstein_stacks(tower_sqrt2):
    pi = tower_sqrt2.generator(1)
    tower = push_eisenstein(tower_sqrt2, Poly([-pi, 0, 1]))
    assert tower.ramification_index() == 4, "Test failed."
    assert tower.valuation(tower.generator(2)) == 1, "Test failed."
    assert tower.valuation(pi, 2) == 2, "Test failed."


@pytest.mark.padic_func
def test_push_inert():
    tower = push_inert(LocalTower(2, 40), Poly([1, 1, 1]))
    assert tower.residue_degree() == 2 and tower.ramification_index() == 1, "Test failed."
    with pytest.raises(PAdicError):
        push_inert(LocalTower(2, 40), Poly([1, 0, 1]))
    with pytest.raises(PAdicError):
        push_inert(LocalTower(2, 40), Poly([1, 1, 3]))


@pytest.mark.padic_func
def test_norm_step(tower_sqrt2):
    pi = tower_sqrt2.generator(1)
    assert norm_step(pi) == -2, "Test failed."
    assert norm_step(1 + pi) == -1, "Test failed."
    x, y = 1 + pi, 3 + pi * 5
    assert norm_step(x * y) == norm_step(x) * norm_step(y), "Test failed."
    assert tower_sqrt2.valuation(norm_step(x)) == 0, "Test failed."


@pytest.mark.padic_func
def test_norm_step_matches_constant_term():
    g = Poly([2, 2, 0, 1])
    tower = push_eisenstein(LocalTower(2, 60), g)
    pi = tower.generator(1)
    generic = TowerElement(tower, 1, pi.slots)
    assert norm_step(pi) == (-1) ** g.degree * g[0], "Test failed."
    assert norm_step(generic) == norm_step(pi), "Test failed."


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ((2, 2, 20), {}, Fraction(2)),
        ((pow(3, -1, 2**20), 2, 20), {}, Fraction(1, 3)),
        (((-5 * pow(7, -1, 3**30)) % 3**30, 3, 30), {}, Fraction(-5, 7)),
    ],
)
def test_rational_reconstruction(data: tuple, params: dict, expected: Fraction):
    assert rational_reconstruction(*data, **params) == expected, "Test failed."


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (Fraction(-5, 7), {"p": 3}, Fraction(-5, 7)),
        (Fraction(12), {"p": 2}, Fraction(12)),
        (Fraction(5, 18), {"p": 3}, Fraction(5, 18)),
        (Fraction(0), {"p": 5}, Fraction(0)),
    ],
)
def test_reconstruct(data: Fraction, params: dict, expected: Fraction):
    x = PAdicValue.from_rational(data, params["p"], 40)
    assert reconstruct(x) == expected, "Test failed."


@pytest.mark.padic_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        ([-2, 0, 1], {"p": 2}, ()),
        ([6, -5, 1], {"p": 2}, ((0, 0), (1, 1))),
        ([27, -21, -7, 1], {"p": 3}, ((0, 0), (1, 1), (2, 2))),
        ([0, -2, 1], {"p": 2}, ((1, 1),)),
        ([-1, 2], {"p": 2}, ((-1, -1),)),
        ([2, -5, 2], {"p": 2}, ((-1, -1), (1, 1))),
        ([1, -12, 27], {"p": 3}, ((-2, -2), (-1, -1))),
        ([1, -12, 27], {"p": 3, "seed_digits": 1}, ((-2, -2), (-1, -1))),
    ],
)
def test_newton_hensel_consistency(data: list, params: dict, expected: tuple):
    report = newton_hensel_consistency(Poly([Fraction(c) for c in data]), **params)
    assert report.passed, "Test failed."
    assert report.roots == expected, "Test failed."


@pytest.mark.padic_func
@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
def test_newton_hensel_consistency_random_polynomials(p: int):
    rng = np.random.default_rng(7 + p)
    for _ in range(50):
        degree = int(rng.integers(1, 9))
        coeffs = [int(c) for c in rng.integers(-20, 21, size=degree + 1)]
        coeffs[-1] = int(rng.choice([-3, -1, 1, 2, 5]))
        if not any(coeffs[:-1]):
            coeffs[0] = p
        report = newton_hensel_consistency(Poly([Fraction(c) for c in coeffs]), p)
        assert report.passed, "Test failed."
