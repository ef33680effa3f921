"""Differential realization of sl(2,C) acting on one-dimensional wavefunctions.

The generators act on functions ``psi(x) exp(i m phi)``.  The angle ``phi`` is
never sampled: the factor is tracked exactly by ``GridFunction.m_sector`` and
``i d/dphi`` acts on it as multiplication by ``-m_sector``.

With ``W = (m - 1/2) F - G`` the realization reads, on sector ``m``::

    J0 psi = m psi
    J+ psi = [ d/dx - (m + 1/2) F + G ] psi      -> sector m + 1
    J- psi = [-d/dx - (m - 1/2) F + G ] psi      -> sector m - 1

and the potentials ``V_m = (1/4 - m^2) F' + 2 m G' + G^2`` of the family follow
from any pair ``F, G`` solving ``F' = 1 - F^2``, ``G' = -F G``.
"""

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from sl2c.errors import NotRegular, SingularPoint
from sl2c.grid import GridSpec


class PotentialClass(enum.Enum):
    I = "I"  # Scarf II
    II = "II"  # generalized Poschl-Teller
    III = "III"  # Morse


class Sign(enum.Enum):
    UPPER = "upper"  # e^{-x}, F = +1
    LOWER = "lower"  # e^{+x}, F = -1


class Generator(enum.Enum):
    J0 = "J0"
    JPLUS = "Jplus"
    JMINUS = "Jminus"


@dataclass(frozen=True)
class AlgebraLabel:
    """Representation label of a bound state: weight ``m`` and excitation ``n``."""

    m: complex
    n: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("excitation index must be nonnegative")
        object.__setattr__(self, "m", complex(self.m))

    @property
    def k(self) -> complex:
        return self.m - self.n

    @property
    def regular(self) -> bool:
        return self.m.real - self.n > 0.5


@dataclass(frozen=True)
class ClassParams:
    """Shape parameters of one potential class.

    ``c`` and ``gamma`` enter classes I and II through ``tau = x - c - i gamma``;
    class III has no shifted coordinate and ignores them.  ``singular_eps`` is
    the exclusion radius around the class II pole when ``gamma == 0``.
    """

    kind: PotentialClass
    b: complex = 0j
    c: float = 0.0
    gamma: float = 0.0
    sign: Sign = Sign.UPPER
    singular_eps: float = 1e-6

    def __post_init__(self):
        object.__setattr__(self, "kind", PotentialClass(self.kind))
        object.__setattr__(self, "sign", Sign(self.sign))
        object.__setattr__(self, "b", complex(self.b))
        if not -math.pi / 4 <= self.gamma < math.pi / 4:
            raise ValueError(f"gamma must lie in [-pi/4, pi/4), got {self.gamma}")

    def tau(self, x):
        return np.asarray(x, dtype=float) - self.c - 1j * self.gamma


@dataclass(frozen=True)
class FGValue:
    """``F, F', G, G'`` at one point (or elementwise over an array of points)."""

    F: complex
    Fprime: complex
    G: complex
    Gprime: complex


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples on a uniform grid carrying the ``exp(i m phi)`` sector label."""

    x0: float
    dx: float
    values: np.ndarray
    m_sector: complex

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 1 or values.size < 5:
            raise ValueError("a grid function needs at least 5 samples")
        if not self.dx > 0:
            raise ValueError("grid spacing must be positive")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "m_sector", complex(self.m_sector))

    @classmethod
    def on_grid(cls, grid: GridSpec, values, m_sector) -> "GridFunction":
        return cls(grid.x_min, grid.h, values, m_sector)

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.values.size)

    def with_values(self, values, m_sector=None) -> "GridFunction":
        sector = self.m_sector if m_sector is None else m_sector
        return replace(self, values=values, m_sector=sector)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def normalized(self) -> "GridFunction":
        """Rescale to unit max modulus with a real positive value at the peak."""
        i = int(np.argmax(np.abs(self.values)))
        peak = self.values[i]
        if peak == 0:
            return self
        return self.with_values(self.values / peak)


def check_pole(params: ClassParams, x):
    if params.kind is PotentialClass.II and params.gamma == 0:
        dist = np.min(np.abs(np.asarray(x, dtype=float) - params.c))
        if dist < params.singular_eps:
            raise SingularPoint(
                f"class II with gamma = 0 is singular at x = c = {params.c}; "
                f"closest sample is {dist:.3g} away"
            )


def eval_fg(params: ClassParams, x) -> FGValue:
    """Closed-form ``F, F', G, G'`` for the chosen class, at scalar or array ``x``."""
    check_pole(params, x)
    b = params.b
    with np.errstate(over="ignore", invalid="ignore"):
        if params.kind is PotentialClass.I:
            tau = params.tau(x)
            sech = 1.0 / np.cosh(tau)
            F = np.tanh(tau)
            Fp = sech**2
            G = b * sech
            Gp = -b * sech * F
        elif params.kind is PotentialClass.II:
            tau = params.tau(x)
            cosech = 1.0 / np.sinh(tau)
            F = 1.0 / np.tanh(tau)
            Fp = -(cosech**2)
            G = b * cosech
            Gp = -b * cosech * F
        else:
            xs = np.asarray(x, dtype=float)
            s = 1.0 if params.sign is Sign.UPPER else -1.0
            expo = np.exp(-s * xs)
            F = np.full_like(expo, s, dtype=complex)
            Fp = np.zeros_like(F)
            G = b * expo
            Gp = -s * b * expo
    if np.ndim(x) == 0:
        F, Fp, G, Gp = (complex(v) for v in (F, Fp, G, Gp))
    return FGValue(F, Fp, G, Gp)


def superpotential(m: complex, params: ClassParams, x):
    """``W = (m - 1/2) F - G``."""
    fg = eval_fg(params, x)
    return (m - 0.5) * fg.F - fg.G


def superpotential_prime(m: complex, params: ClassParams, x):
    """Analytic derivative ``W' = (m - 1/2) F' - G'``."""
    fg = eval_fg(params, x)
    return (m - 0.5) * fg.Fprime - fg.Gprime


def _dx(psi: GridFunction) -> np.ndarray:
    # central in the interior, one-sided second order at both ends
    return np.gradient(psi.values, psi.dx, edge_order=2)


def apply_generator(gen, psi: GridFunction, params: ClassParams) -> GridFunction:
    """Apply ``J0``, ``J+`` or ``J-`` to ``psi``; ladder generators shift the sector by one."""
    gen = Generator(gen)
    m = psi.m_sector
    if gen is Generator.J0:
        return psi.with_values(m * psi.values)
    fg = eval_fg(params, psi.x)
    if gen is Generator.JPLUS:
        out = _dx(psi) + ((-m - 0.5) * fg.F + fg.G) * psi.values
        return psi.with_values(out, m + 1)
    out = -_dx(psi) + ((-m + 0.5) * fg.F + fg.G) * psi.values
    return psi.with_values(out, m - 1)


def commutator(gen_a, gen_b, psi: GridFunction, params: ClassParams) -> GridFunction:
    """``[A, B] psi`` by composing the discretized generators."""
    ab = apply_generator(gen_a, apply_generator(gen_b, psi, params), params)
    ba = apply_generator(gen_b, apply_generator(gen_a, psi, params), params)
    return ab.with_values(ab.values - ba.values)


def apply_casimir(psi: GridFunction, params: ClassParams, sign: str = "upper") -> GridFunction:
    """Casimir ``J0^2 -+ J0 - J+- J-+``.

    ``sign="upper"`` uses ``J0^2 - J0 - J+ J-``, ``"lower"`` uses
    ``J0^2 + J0 - J- J+``.  Both agree up to stencil error.
    """
    m = psi.m_sector
    if sign == "upper":
        ladder = apply_generator(Generator.JPLUS, apply_generator(Generator.JMINUS, psi, params), params)
        diag = m * m - m
    elif sign == "lower":
        ladder = apply_generator(Generator.JMINUS, apply_generator(Generator.JPLUS, psi, params), params)
        diag = m * m + m
    else:
        raise ValueError(f"sign must be 'upper' or 'lower', got {sign!r}")
    return psi.with_values(diag * psi.values - ladder.values)


def _check_regular(m: complex, params: ClassParams):
    if not m.real > 0.5:
        raise NotRegular(f"ground state needs Re(m) > 1/2, got m = {m}")
    if params.kind is PotentialClass.III:
        # G = b e^{-+x} must dominate on the side where F gives no decay
        if params.sign is Sign.UPPER and not params.b.real > 0:
            raise NotRegular(f"upper-sign Morse ground state needs Re(b) > 0, got b = {params.b}")
        if params.sign is Sign.LOWER and not params.b.real < 0:
            raise NotRegular(f"lower-sign Morse ground state needs Re(b) < 0, got b = {params.b}")


def log_ground_state(m: complex, params: ClassParams, x) -> np.ndarray:
    """``-integral W dx`` from closed-form antiderivatives (up to an additive constant)."""
    check_pole(params, x)
    b = params.b
    if params.kind is PotentialClass.I:
        tau = params.tau(x)
        # Re cosh(tau) > 0 and |tanh(tau/2)| < 1 for |gamma| < pi/4: principal branches are continuous
        gd = 2.0 * np.arctan(np.tanh(tau / 2))
        return -(m - 0.5) * np.log(np.cosh(tau)) + b * gd
    if params.kind is PotentialClass.II:
        tau = params.tau(x)
        return -(m - 0.5) * np.log(np.sinh(tau)) + b * np.log(np.tanh(tau / 2))
    xs = np.asarray(x, dtype=float)
    if params.sign is Sign.UPPER:
        return -(m - 0.5) * xs - b * np.exp(-xs)
    return (m - 0.5) * xs + b * np.exp(xs)


def _log_ground_state_trapezoid(m: complex, params: ClassParams, x: np.ndarray) -> np.ndarray:
    from scipy.integrate import cumulative_trapezoid

    w = superpotential(m, params, x)
    mid = x.size // 2
    integral = cumulative_trapezoid(w, x, initial=0.0)
    return -(integral - integral[mid])


def ground_state(m: complex, params: ClassParams, grid: GridSpec, method: str = "analytic") -> GridFunction:
    """Lowest state of ``V_m``, the solution of ``J- psi0 = 0``, i.e. ``psi0 = exp(-int W)``.

    ``method`` is ``"analytic"`` (closed-form antiderivative) or ``"trapezoid"``
    (cumulative composite trapezoid of ``W`` from the grid midpoint).  The
    result is scaled to unit max modulus.

    Raises NotRegular unless ``Re(m) > 1/2`` (and, for class III, ``b`` has
    the sign that makes the exponential wall confining).
    """
    m = complex(m)
    _check_regular(m, params)
    x = grid.x
    if method == "analytic":
        logpsi = log_ground_state(m, params, x)
    elif method == "trapezoid":
        logpsi = _log_ground_state_trapezoid(m, params, x)
    else:
        raise ValueError(f"unknown ground-state method {method!r}")
    logpsi = logpsi - np.max(logpsi.real)
    with np.errstate(under="ignore"):
        values = np.exp(logpsi)
    return GridFunction.on_grid(grid, values, m).normalized()


def ladder_up(psi_prev: GridFunction, params: ClassParams) -> GridFunction:
    """``J+`` on a state of sector ``m - 1``: the next excitation of ``V_m`` at the same energy."""
    return apply_generator(Generator.JPLUS, psi_prev, params).normalized()


def excited_state(m: complex, n: int, params: ClassParams, grid: GridSpec) -> GridFunction:
    """``psi_n`` of ``V_m`` built as ``(J+)^n`` on the ground state of ``V_{m-n}``."""
    psi = ground_state(complex(m) - n, params, grid)
    for _ in range(n):
        psi = ladder_up(psi, params)
    return psi
