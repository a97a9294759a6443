import pytest

from iterfield.cli import build_parser
from iterfield.helpers import constants
from iterfield.helpers.config import RunConfig, Tolerances


@pytest.mark.helpers
def test_tolerances_scaled():
    scaled = Tolerances().scaled(0.5)
    assert scaled.check == pytest.approx(constants.DEFAULT_CHECK_TOLERANCE / 2), "Test failed."
    assert scaled.trace == pytest.approx(constants.DEFAULT_TRACE_TOLERANCE / 2), "Test failed."
    assert Tolerances().scaled(1.0) == Tolerances(), "Test failed."


@pytest.mark.helpers
@pytest.mark.parametrize("data", [0.0, -0.5, 1.5])
def test_tolerances_scale_out_of_range(data: float):
    with pytest.raises(AssertionError):
        Tolerances().scaled(data)


@pytest.mark.helpers
def test_run_config_defaults():
    config = RunConfig()
    assert config.precision == constants.DEFAULT_PRECISION, "Test failed."
    assert config.tolerances == Tolerances(), "Test failed."
    assert set(config.to_dict()) == {
        "precision",
        "depth",
        "tolerance_scale",
        "bound_n",
        "height_bound",
        "m_max",
    }, "Test failed."


@pytest.mark.helpers
@pytest.mark.parametrize(
    "data",
    [
        {"precision": 0},
        {"bound_n": -1},
        {"height_bound": 0},
        {"m_max": 0},
        {"depth": 0},
        {"tolerance_scale": 2.0},
        {"tolerance_scale": 0.0},
    ],
)
def test_run_config_rejects_bounds(data: dict):
    with pytest.raises(ValueError):
        RunConfig(**data)


@pytest.mark.helpers
def test_run_config_from_namespace():
    args = build_parser().parse_args(
        ["apf", "--map", "m.json", "--p", "2", "--depth", "3", "--tolerance", "0.1", "--m-max", "4"]
    )
    config = RunConfig.from_namespace(args)
    assert (config.depth, config.m_max, config.input_path) == (3, 4, "m.json"), "Test failed."
    assert config.tolerances.root == pytest.approx(constants.DEFAULT_ROOT_TOLERANCE * 0.1), "Test failed."
