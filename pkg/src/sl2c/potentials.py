"""Potential families generated by the algebra, and their physical-strength forms.

``eval_potential_generic`` assembles ``V_m`` from the realization functions,
``eval_potential_class`` uses the closed forms of each class.  The
``PhysicalStrengths`` variants evaluate the example potentials directly from
their strengths, with no reference to algebra labels, so that they can serve
as independent ground truth for the numerical checks.
"""

import math
from dataclasses import dataclass

import numpy as np

from sl2c.algebra import ClassParams, PotentialClass, Sign, eval_fg, check_pole
from sl2c.errors import InvalidStrengths


@dataclass(frozen=True)
class PotentialSpec:
    m: complex
    params: ClassParams

    def __post_init__(self):
        object.__setattr__(self, "m", complex(self.m))


def eval_potential_generic(spec: PotentialSpec, x):
    """``V_m = (1/4 - m^2) F' + 2 m G' + G^2``."""
    fg = eval_fg(spec.params, x)
    m = spec.m
    return (0.25 - m * m) * fg.Fprime + 2 * m * fg.Gprime + fg.G**2


def eval_potential_class(spec: PotentialSpec, x):
    """Closed-form class potential."""
    p = spec.params
    check_pole(p, x)
    m, b = spec.m, p.b
    with np.errstate(over="ignore", invalid="ignore"):
        if p.kind is PotentialClass.I:
            tau = p.tau(x)
            sech = 1 / np.cosh(tau)
            v = (b * b - m * m + 0.25) * sech**2 - 2 * m * b * sech * np.tanh(tau)
        elif p.kind is PotentialClass.II:
            tau = p.tau(x)
            cosech = 1 / np.sinh(tau)
            v = (b * b + m * m - 0.25) * cosech**2 - 2 * m * b * cosech / np.tanh(tau)
        else:
            xs = np.asarray(x, dtype=float)
            s = 1.0 if p.sign is Sign.UPPER else -1.0
            v = b * b * np.exp(-2 * s * xs) - s * 2 * m * b * np.exp(-s * xs)
    return complex(v) if np.ndim(x) == 0 else v


class PhysicalStrengths:
    """Base for the four example potentials parametrized by physical strengths."""

    variant = None

    def potential(self, x):
        raise NotImplementedError


def _require(cond, message):
    if not cond:
        raise InvalidStrengths(message)


@dataclass(frozen=True)
class ScarfPT(PhysicalStrengths):
    """``V = -V1 sech^2 x - i V2 sech x tanh x``."""

    v1: float
    v2: float
    variant = "ScarfPT"

    def __post_init__(self):
        _require(math.isfinite(self.v1) and self.v1 > 0, f"ScarfPT needs V1 > 0, got V1 = {self.v1}")
        _require(math.isfinite(self.v2) and self.v2 != 0, f"ScarfPT needs V2 != 0, got V2 = {self.v2}")

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            sech = 1 / np.cosh(x)
        return -self.v1 * sech**2 - 1j * self.v2 * sech * np.tanh(x)


@dataclass(frozen=True)
class PoschlTellerPT(PhysicalStrengths):
    """``V = V1 cosech^2 tau - V2 cosech tau coth tau`` with ``tau = x - c - i gamma``.

    ``gamma != 0`` keeps the pole off the real line; ``pi/8`` is the default.
    """

    v1: float
    v2: float
    gamma: float = math.pi / 8
    c: float = 0.0
    variant = "PoschlTellerPT"

    def __post_init__(self):
        _require(math.isfinite(self.v1) and self.v1 > -0.25, f"PoschlTellerPT needs V1 > -1/4, got V1 = {self.v1}")
        _require(math.isfinite(self.v2) and self.v2 != 0, f"PoschlTellerPT needs V2 != 0, got V2 = {self.v2}")
        _require(self.gamma != 0, "PoschlTellerPT needs gamma != 0 to stay regular on the real line")
        _require(-math.pi / 4 <= self.gamma < math.pi / 4, f"gamma must lie in [-pi/4, pi/4), got {self.gamma}")

    def potential(self, x):
        tau = np.asarray(x, dtype=float) - self.c - 1j * self.gamma
        with np.errstate(over="ignore"):
            cosech = 1 / np.sinh(tau)
        return self.v1 * cosech**2 - self.v2 * cosech / np.tanh(tau)


@dataclass(frozen=True)
class MorseGeneral(PhysicalStrengths):
    """``V = (V1R + i V1I) e^{-2x} - (V2R + i V2I) e^{-x}``."""

    v1r: float
    v1i: float
    v2r: float
    v2i: float
    variant = "MorseGeneral"

    def __post_init__(self):
        for name in ("v1r", "v1i", "v2r", "v2i"):
            _require(math.isfinite(getattr(self, name)), f"MorseGeneral needs finite {name}")
        _require(self.v1i != 0, "MorseGeneral needs V1I != 0 for any regular bound state")

    @property
    def v1(self) -> complex:
        return complex(self.v1r, self.v1i)

    @property
    def v2(self) -> complex:
        return complex(self.v2r, self.v2i)

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        return self.v1 * np.exp(-2 * x) - self.v2 * np.exp(-x)


@dataclass(frozen=True)
class MorseParametrized(PhysicalStrengths):
    """``V = (A + iB)^2 e^{-2x} - (2C + 1)(A + iB) e^{-x}``.

    ``C = [(gamma - 1) A + i (delta - 1) B] / [2 (A + iB)]``.
    """

    a: float
    b: float
    gamma: float
    delta: float
    variant = "MorseParametrized"

    def __post_init__(self):
        _require(math.isfinite(self.a) and self.a > 0, f"MorseParametrized needs A > 0, got A = {self.a}")
        _require(math.isfinite(self.b) and self.b != 0, f"MorseParametrized needs B != 0, got B = {self.b}")
        _require(math.isfinite(self.gamma) and math.isfinite(self.delta), "MorseParametrized needs finite gamma, delta")

    @property
    def C(self) -> complex:
        a, b = self.a, self.b
        return complex((self.gamma - 1) * a, (self.delta - 1) * b) / (2 * complex(a, b))

    def to_general(self) -> MorseGeneral:
        a, b = self.a, self.b
        return MorseGeneral(a * a - b * b, 2 * a * b, self.gamma * a, self.delta * b)

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        z = complex(self.a, self.b)
        return z * z * np.exp(-2 * x) - (2 * self.C + 1) * z * np.exp(-x)


VARIANTS = {cls.variant: cls for cls in (ScarfPT, PoschlTellerPT, MorseGeneral, MorseParametrized)}


def build_physical(strengths: PhysicalStrengths):
    """Return ``x -> V(x)`` evaluated directly from the strengths.

    Scalar input gives a Python complex, array input a complex array.
    """
    if not isinstance(strengths, PhysicalStrengths):
        raise InvalidStrengths(f"expected PhysicalStrengths, got {type(strengths).__name__}")

    def potential(x):
        v = strengths.potential(x)
        return complex(v) if np.ndim(x) == 0 else v

    return potential
