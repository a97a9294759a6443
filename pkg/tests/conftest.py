from fractions import Fraction

import numpy as np
import pytest

from iterfield.functions.algebra_func import normalize_map
from iterfield.helpers.polynomial import Mobius, Poly

RANDOM_SEED = 42


def _map(num, den=(1,)):
    return normalize_map(list(num), list(den))


@pytest.fixture(scope="function", autouse=True)
def reset_prngs():
    np.random.seed(RANDOM_SEED)


@pytest.fixture(scope="session", autouse=True)
def quiet_checks():
    """Checks skip their parameterisation notice under PYTEST."""
    mp = pytest.MonkeyPatch()
    mp.setenv("PYTEST", "1")
    yield
    mp.undo()


@pytest.fixture
def map_xsq():
    return _map([0, 0, 1])


@pytest.fixture
def map_xsq_minus_1():
    return _map([-1, 0, 1])


@pytest.fixture
def map_xsq_plus_1():
    return _map([1, 0, 1])


@pytest.fixture
def map_xsq_plus_2():
    return _map([2, 0, 1])


@pytest.fixture
def map_inverse_square():
    return _map([1], [0, 0, 1])


@pytest.fixture
def map_quartic_even():
    """x^4 - 2x^2."""
    return _map([0, 0, -2, 0, 1])


@pytest.fixture
def map_x_plus_inverse():
    return _map([1, 0, 1], [0, 1])


@pytest.fixture(scope="session")
def map_example_43():
    """(x-2)^8 - 2(x-2)^2 + 3."""
    x = Poly.x()
    f = (x - 2) ** 8 - (x - 2) ** 2 * 2 + 3
    return normalize_map(f.coeffs, [Fraction(1)])


@pytest.fixture
def map_literal_xsq_minus_1():
    return {"num": ["-1", "0", "1"], "den": ["1"]}


@pytest.fixture
def orbit_batch(map_xsq, map_quartic_even):
    return [
        {"phi": map_xsq, "alpha": 4, "m": 2},
        {"phi": map_xsq, "alpha": Fraction(1, 3), "m": 2},
        {"phi": map_quartic_even, "alpha": 3, "m": 2},
        {"phi": map_quartic_even, "alpha": 1j, "m": 2},
    ]


@pytest.fixture
def witness_batch(map_xsq, map_xsq_minus_1):
    return [
        {"phi": map_xsq, "b": 2, "m": 2, "j": 1},
        {"phi": map_xsq, "b": 2, "m": 2, "j": 2},
        {"phi": map_xsq_minus_1, "b": 3, "m": 2, "j": 1},
        {"phi": map_xsq_minus_1, "b": 3, "m": 2, "j": 2},
    ]


@pytest.fixture
def witness_batch_conjugated():
    # (x - 1)^2 + 1 is conjugate to x^2 by x -> x - 1.
    return [{"phi": normalize_map([2, -2, 1], [1]), "b": 3, "m": 2, "j": 1, "mobius": Mobius(1, -1, 0, 1)}]


@pytest.fixture
def chebyshev_batch():
    return [
        {"d": 2, "b": 3, "n": 1},
        {"d": 3, "b": 3, "n": 1},
        {"d": 2, "b": 3, "n": 2},
    ]


@pytest.fixture
def lattes_batch():
    return [
        {"a": 0, "b": 1, "d": 2, "x0": 2, "n": 1},
        {"a": -1, "b": 1, "d": 3, "x0": 1, "n": 1},
    ]


@pytest.fixture
def cyclotomic_batch():
    return [{"p": 2, "n": 1}, {"p": 2, "n": 2}, {"p": 3, "n": 1}]


@pytest.fixture
def hensel_batch():
    return [
        {"f": Poly([Fraction(c) for c in [-2, 0, 1]]), "p": 2},
        {"f": Poly([Fraction(c) for c in [6, -5, 1]]), "p": 2},
        {"f": Poly([Fraction(c) for c in [27, -21, -7, 1]]), "p": 3},
    ]
