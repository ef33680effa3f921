import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CLASSES, random_params
from sl2c.algebra import ClassParams, PotentialClass
from sl2c.errors import InvalidStrengths
from sl2c.potentials import (
    VARIANTS,
    MorseGeneral,
    MorseParametrized,
    PoschlTellerPT,
    PotentialSpec,
    ScarfPT,
    build_physical,
    eval_potential_class,
    eval_potential_generic,
)
from sl2c.spectra import invert_morse, invert_pt2, invert_scarf

XS = np.linspace(-6, 6, 241)


def test_class_one_free_labels():
    x = np.linspace(-3, 3, 13)
    v = eval_potential_class(PotentialSpec(0, ClassParams(PotentialClass.I)), x)
    np.testing.assert_allclose(v, 0.25 / np.cosh(x) ** 2, rtol=1e-15)


def test_class_three_upper_origin():
    assert eval_potential_generic(PotentialSpec(1, ClassParams(PotentialClass.III, b=1)), 0.0) == pytest.approx(-1)
    assert eval_potential_class(PotentialSpec(1, ClassParams(PotentialClass.III, b=1)), 0.0) == pytest.approx(-1)


def test_class_three_lower_origin():
    p = ClassParams(PotentialClass.III, b=2, sign="lower")
    assert eval_potential_class(PotentialSpec(1, p), 0.0) == pytest.approx(8)
    assert eval_potential_generic(PotentialSpec(1, p), 0.0) == pytest.approx(8)


def test_class_two_half_sector_vanishes():
    p = ClassParams(PotentialClass.II, b=0, gamma=0.3)
    np.testing.assert_allclose(eval_potential_class(PotentialSpec(0.5, p), XS), 0, atol=1e-15)
    np.testing.assert_allclose(eval_potential_generic(PotentialSpec(0.5, p), XS), 0, atol=1e-14)


def test_imaginary_sector_gives_scarf_shape():
    mu, b = 1.3, 0.7
    v = eval_potential_class(PotentialSpec(1j * mu, ClassParams(PotentialClass.I, b=b)), XS)
    sech = 1 / np.cosh(XS)
    expected = (b * b + mu * mu + 0.25) * sech**2 - 2j * mu * b * sech * np.tanh(XS)
    np.testing.assert_allclose(v, expected, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("kind,sign", CLASSES)
def test_generic_matches_closed_form(kind, sign, rng):
    for _ in range(40):
        p = random_params(kind, rng, sign)
        spec = PotentialSpec(complex(rng.uniform(-3, 3), rng.uniform(-3, 3)), p)
        x = rng.uniform(-4, 4, 50)
        g = eval_potential_generic(spec, x)
        c = eval_potential_class(spec, x)
        assert np.max(np.abs(g - c)) < 1e-10 * max(1.0, np.max(np.abs(c)))


def test_scalar_in_scalar_out():
    spec = PotentialSpec(1.5, ClassParams(PotentialClass.I, b=0.2j))
    assert isinstance(eval_potential_generic(spec, 0.3), complex)
    assert isinstance(eval_potential_class(spec, 0.3), complex)
    assert isinstance(build_physical(ScarfPT(1, 1))(0.3), complex)


# -- physical strengths ------------------------------------------------------------


def test_physical_examples():
    assert build_physical(ScarfPT(2, 3))(0.0) == -2 + 0j
    assert build_physical(MorseGeneral(0, 2, 4, 0))(0.0) == -4 + 2j
    assert build_physical(MorseParametrized(1, 1, 3, 3))(0.0) == pytest.approx(-3 - 1j, abs=1e-15)


def test_variant_registry():
    assert set(VARIANTS) == {"ScarfPT", "PoschlTellerPT", "MorseGeneral", "MorseParametrized"}


@given(v1=st.floats(0.01, 20), v2=st.floats(0.01, 20), x=st.floats(-10, 10))
@settings(max_examples=100, deadline=None)
def test_scarf_is_pt_symmetric(v1, v2, x):
    v = build_physical(ScarfPT(v1, v2))
    assert abs(v(-x) - v(x).conjugate()) < 1e-12 * max(1.0, abs(v(x)))


def test_pt2_default_shift():
    s = PoschlTellerPT(1, 1)
    assert s.gamma == math.pi / 8 and s.c == 0


@pytest.mark.parametrize(
    "make",
    [
        lambda: ScarfPT(0, 1),
        lambda: ScarfPT(-1, 1),
        lambda: ScarfPT(2, 0),
        lambda: ScarfPT(float("nan"), 1),
        lambda: PoschlTellerPT(-0.3, 1),
        lambda: PoschlTellerPT(1, 0),
        lambda: PoschlTellerPT(1, 1, gamma=0),
        lambda: PoschlTellerPT(1, 1, gamma=math.pi / 4),
        lambda: MorseGeneral(1, 0, 1, 1),
        lambda: MorseGeneral(1, 1, float("inf"), 1),
        lambda: MorseParametrized(0, 1, 1, 1),
        lambda: MorseParametrized(1, 0, 1, 1),
    ],
)
def test_invalid_strengths(make):
    with pytest.raises(InvalidStrengths):
        make()


def test_build_physical_rejects_other_types():
    with pytest.raises(InvalidStrengths):
        build_physical((2, 3))


# -- round trips through the inversions ---------------------------------------------


@pytest.mark.parametrize("v1,v2", [(2, 1), (2, 2.25), (2, 3), (0.5, 0.1), (6, 6.25), (10, 0.5)])
def test_scarf_round_trip(v1, v2):
    direct = build_physical(ScarfPT(v1, v2))(XS)
    for sol in invert_scarf(v1, v2).solutions:
        via = eval_potential_class(PotentialSpec(sol.m, ClassParams(PotentialClass.I, b=sol.b)), XS)
        assert np.max(np.abs(via - direct)) < 1e-10


@pytest.mark.parametrize("v1,v2,gamma,c", [(1, 0.5, math.pi / 8, 0), (3, 5, 0.3, 1.2), (0.2, -2, -0.5, -0.4)])
def test_pt2_round_trip(v1, v2, gamma, c):
    direct = build_physical(PoschlTellerPT(v1, v2, gamma, c))(XS)
    for sol in invert_pt2(v1, v2).solutions:
        p = ClassParams(PotentialClass.II, b=sol.b, c=c, gamma=gamma)
        via = eval_potential_class(PotentialSpec(sol.m, p), XS)
        assert np.max(np.abs(via - direct)) < 1e-10 * max(1.0, np.max(np.abs(direct)))


@pytest.mark.parametrize("strengths", [MorseGeneral(0, 2, 4, 0), MorseGeneral(1, -3, 2, 0.5), MorseGeneral(-2, 1, 3, -1)])
def test_morse_round_trip(strengths):
    x = np.linspace(-2, 8, 101)
    direct = build_physical(strengths)(x)
    (sol,) = invert_morse(strengths.v1, strengths.v2).solutions
    via = eval_potential_class(PotentialSpec(sol.m, ClassParams(PotentialClass.III, b=sol.b)), x)
    assert np.max(np.abs(via - direct)) < 1e-10 * max(1.0, np.max(np.abs(direct)))


@given(
    a=st.floats(0.1, 3), b=st.floats(0.1, 3), flip=st.booleans(),
    gamma=st.floats(-5, 5), delta=st.floats(-5, 5),
)
@settings(max_examples=100, deadline=None)
def test_parametrized_morse_maps_to_general(a, b, flip, gamma, delta):
    s = MorseParametrized(a, -b if flip else b, gamma, delta)
    g = s.to_general()
    direct = s.potential(XS[::10])
    mapped = g.potential(XS[::10])
    assert np.max(np.abs(direct - mapped)) < 1e-10 * max(1.0, np.max(np.abs(direct)))
    assert g.v1 == pytest.approx(complex(s.a, s.b) ** 2, rel=1e-14)


def test_parametrized_equal_shape_constants():
    assert MorseParametrized(1, 1, 3, 3).C == pytest.approx(1.0, abs=1e-15)
