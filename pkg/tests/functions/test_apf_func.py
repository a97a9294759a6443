from fractions import Fraction

import pytest

from iterfield.functions.algebra_func import iterate, normalize_map
from iterfield.functions.apf_func import *
from iterfield.helpers.exceptions import NotGoodReduction, NotPowerLikeWithin
from iterfield.helpers.utils import rational_valuation


@pytest.mark.apf_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (([2, 0, 1], [1]), {"p": 2}, (1, 1, 1)),
        (([1, 0, 1], [1]), {"p": 2}, (2, 2, 1)),
        (([3, 0, 0, 2], [1]), {"p": 3}, (1, 1, 2)),
        (([0, 0, 1], [1, 2]), {"p": 2}, (1, 1, 1)),
    ],
)
def test_powerlike_order(data: tuple, params: dict, expected: tuple):
    out = powerlike_order(normalize_map(*data), **params)
    assert (out.m, out.r, out.c) == expected, "Test failed."


@pytest.mark.apf_func
def test_powerlike_order_example(map_example_43):
    out = powerlike_order(map_example_43, 2)
    assert (out.m, out.r, out.c) == (2, 6, 1), "Test failed."
    assert out.level_degree == 64, "Test failed."


@pytest.mark.apf_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (([1, 1, 1], [1]), {"p": 2}, NotPowerLikeWithin),
        (([1, 0, 0, 1], [1]), {"p": 2}, NotPowerLikeWithin),
        (([1, 0, 2], [1]), {"p": 2}, NotGoodReduction),
        (([0, 0, 1], [2, 0, 0, 1]), {"p": 2}, NotGoodReduction),
    ],
)
def test_powerlike_order_errors(data: tuple, params: dict, expected):
    with pytest.raises(expected):
        powerlike_order(normalize_map(*data), **params)


@pytest.mark.apf_func
def test_powerlike_order_reports_bound():
    with pytest.raises(NotPowerLikeWithin) as exc:
        powerlike_order(normalize_map([1, 1, 1], [1]), 2, m_max=5)
    assert exc.value.m_max == 5, "Test failed."


@pytest.mark.apf_func
def test_fixed_points_example(map_example_43):
    gamma, delta = fixed_points(iterate(map_example_43, 2), 2)
    assert gamma == Fraction(2) and is_infinity(delta), "Test failed."


@pytest.mark.apf_func
def test_fixed_points_square_plus_two(map_xsq_plus_2):
    gamma, delta = fixed_points(map_xsq_plus_2, 2)
    assert gamma.lift() % 8 == 6 and is_infinity(delta), "Test failed."
    assert not (gamma * gamma - gamma + 2).with_precision(40), "Test failed."


@pytest.mark.apf_func
def test_fixed_points_rational_map():
    # x^2 / (1 + 2x^2) fixes 0 and has a second fixed point of negative valuation.
    phi = normalize_map([0, 0, 1], [1, 0, 2])
    gamma, delta = fixed_points(phi, 2)
    assert gamma == 0, "Test failed."
    assert not is_infinity(delta), "Test failed."
    assert delta.val() < 0, "Test failed."


@pytest.mark.apf_func
def test_fixed_points_ambiguous():
    with pytest.raises(AmbiguousPolygon):
        fixed_points(normalize_map([4, 1, 1], [1]), 2)


@pytest.mark.apf_func
def test_normalizing_model_example(map_example_43):
    phi_m = iterate(map_example_43, 2)
    model = normalizing_model(phi_m, Fraction(2), INFINITY, 2)
    s, t = model.num.padded(65), model.den.padded(65)
    assert model.u == 1 and model.exact and model.level == 0, "Test failed."
    assert s[0] == 0 and s[64] == 1 and t[0] == 1 and t[64] == 0, "Test failed."
    assert all(v == 0 or rational_valuation(v, 2) >= 1 for v in s[1:64]), "Test failed."
    assert model.mobius(Fraction(2)) == 0, "Test failed."


@pytest.mark.apf_func
def test_normalizing_model_square_plus_two(map_xsq_plus_2):
    gamma, delta = fixed_points(map_xsq_plus_2, 2)
    model = normalizing_model(map_xsq_plus_2, gamma, delta, 2)
    assert model.u == 1 and not model.exact, "Test failed."
    # ψ(x) = x^2 + 2γx.
    assert model.num[1] == 2 * gamma and model.num[2] == 1, "Test failed."


@pytest.mark.apf_func
def test_normalizing_model_needs_inert_level():
    phi = normalize_map([3, 0, 0, 2], [1])
    gamma, delta = fixed_points(phi, 3)
    model = normalizing_model(phi, gamma, delta, 3)
    assert model.level == 1 and model.tower.residue_degree() == 2, "Test failed."
    assert model.u * model.u == 2, "Test failed."
    assert model.num[3] == 1 and model.den[0] == 1, "Test failed."


@pytest.mark.apf_func
def test_normalizing_model_residue_extension_too_large():
    phi = normalize_map([3, 0, 0, 2], [1])
    gamma, delta = fixed_points(phi, 3)
    with pytest.raises(ResidueExtensionTooLarge):
        normalizing_model(phi, gamma, delta, 3, inert_bound=1)


@pytest.mark.apf_func
@pytest.mark.parametrize(
    "data,params,expected",
    [
        (([0, 2, 1], [1]), {"p": 2}, ["2", "-2", "1"]),
        (([0, 3, 1], [1]), {"p": 3}, ["-3", "3", "1"]),
        (([0, 3, 3, 1], [1]), {"p": 3}, ["-3", "3", "3", "1"]),
        (([0, 2, 6, 4, 1], [1]), {"p": 2}, ["2", "-2", "6", "-4", "1"]),
    ],
)
def test_tower_step_poly_signs(data: tuple, params: dict, expected: list):
    num, den = (Poly([Fraction(c) for c in coeffs]) for coeffs in data)
    p = params["p"]
    model = ConjugatedModel(
        Fraction(0), INFINITY, Fraction(1), Mobius(1, 0, 0, 1), num, den, LocalTower(p, 40), 0, True
    )
    h = tower_step_poly(model, Fraction(p))
    assert h.to_strings() == expected, "Test failed."


@pytest.mark.apf_func
def test_tower_step_poly_rational_model():
    # f1 = x^2 + 2x, g1 = 1 + 2x over Q_3: h = x^2 + (2 - 6)x - 3.
    model = ConjugatedModel(
        Fraction(0),
        Fraction(1, 3),
        Fraction(1),
        Mobius(1, 0, -3, 1),
        Poly([0, 2, 1]),
        Poly([1, 2]),
        LocalTower(3, 40),
        0,
        True,
    )
    h = tower_step_poly(model, Fraction(3))
    assert h.to_strings() == ["-3", "-4", "1"], "Test failed."


@pytest.mark.apf_func
@pytest.mark.slow
def test_build_apf_tower_example(map_example_43):
    tower, certificate, basepoint = build_apf_tower(map_example_43, 2, depth=3)
    assert certificate.passed, "Test failed."
    assert tower.ramification_index() == 64**3, "Test failed."
    assert all(record.slope == Fraction(-1, 64) for record in certificate.levels), "Test failed."
    assert all(record.norm_ok for record in certificate.levels), "Test failed."
    assert certificate.epsilon >= 1, "Test failed."
    assert basepoint == 0, "Test failed."
    assert certificate.notes["coefficients_independent_of_n"] is True, "Test failed."


@pytest.mark.apf_func
def test_build_apf_tower_square_plus_two(map_xsq_plus_2):
    tower, certificate, _ = build_apf_tower(map_xsq_plus_2, 2, depth=4)
    assert certificate.passed and len(certificate.levels) == 4, "Test failed."
    assert tower.degree() == 2**4, "Test failed."
    assert {record.qn for record in certificate.levels} == {2}, "Test failed."
    assert certificate.epsilon == 2, "Test failed."
    assert all(record.norm_ok and record.replay for record in certificate.levels), "Test failed."


@pytest.mark.apf_func
def test_build_apf_tower_square_plus_one():
    tower, certificate, _ = build_apf_tower(normalize_map([1, 0, 1], [1]), 2, depth=3)
    assert (certificate.power_like.m, certificate.power_like.r) == (2, 2), "Test failed."
    assert certificate.passed and tower.ramification_index() == 4**3, "Test failed."


@pytest.mark.apf_func
def test_build_apf_tower_inert_level():
    tower, certificate, _ = build_apf_tower(normalize_map([3, 0, 0, 2], [1]), 3, depth=2)
    assert certificate.passed and certificate.model.level == 1, "Test failed."
    assert tower.residue_degree() == 2 and tower.ramification_index() == 9, "Test failed."


@pytest.mark.apf_func
def test_build_apf_tower_replay_skipped(map_xsq_plus_2):
    _, certificate, _ = build_apf_tower(map_xsq_plus_2, 2, depth=4, replay_bound=2)
    replays = [record.replay for record in certificate.levels]
    assert replays == [True, True, None, None], "Test failed."
    assert certificate.to_dict()["levels"][3]["replay"] == "skipped", "Test failed."


@pytest.mark.apf_func
def test_build_apf_tower_not_powerlike():
    with pytest.raises(NotPowerLikeWithin):
        build_apf_tower(normalize_map([1, 1, 1], [1]), 2, depth=2)


@pytest.mark.apf_func
def test_certificate_to_dict(map_xsq_plus_2):
    _, certificate, _ = build_apf_tower(map_xsq_plus_2, 2, depth=2)
    out = certificate.to_dict()
    assert (out["m"], out["r"], out["c"], out["verdict"]) == (1, 1, 1, "pass"), "Test failed."
    assert out["delta"] == "inf" and out["levels"][0]["slope"] == "-1/2", "Test failed."
    assert out["epsilon"] == "2", "Test failed."
