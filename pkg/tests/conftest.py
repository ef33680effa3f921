import numpy as np
import pytest

from sl2c.algebra import ClassParams, PotentialClass, Sign
from sl2c.grid import GridSpec


def random_params(kind, rng, sign=Sign.UPPER):
    """Admissible shape parameters with O(1) magnitudes."""
    kind = PotentialClass(kind)
    b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    if kind is PotentialClass.I:
        return ClassParams(kind, b, c=rng.uniform(-1, 1), gamma=rng.uniform(-0.7, 0.7))
    if kind is PotentialClass.II:
        gamma = rng.choice([-1, 1]) * rng.uniform(0.2, 0.7)
        return ClassParams(kind, b, c=rng.uniform(-1, 1), gamma=gamma)
    re_b = rng.uniform(0.5, 2.0)
    if Sign(sign) is Sign.LOWER:
        re_b = -re_b
    return ClassParams(kind, complex(re_b, b.imag), sign=sign)


def random_m(rng, lo=1.0, hi=3.0):
    return complex(rng.uniform(lo, hi), rng.uniform(-1, 1))


def state_grid(params, n_points=3001):
    """A box holding the low-lying states of moderate-m potentials."""
    if params.kind is PotentialClass.III:
        if params.sign is Sign.UPPER:
            return GridSpec(-4.0, 30.0, n_points)
        return GridSpec(-30.0, 4.0, n_points)
    return GridSpec(-30.0 + params.c, 30.0 + params.c, n_points)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


CLASSES = [
    (PotentialClass.I, Sign.UPPER),
    (PotentialClass.II, Sign.UPPER),
    (PotentialClass.III, Sign.UPPER),
    (PotentialClass.III, Sign.LOWER),
]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
