"""Bound-state spectra from the algebra and from the physical-strength closed forms.

Every sector label ``m`` carries the levels ``E_n = -(m - n - 1/2)^2``; level
``n`` is regular (a normalizable bound state) iff ``n < Re(m) - 1/2``.

Two routes are implemented and kept separate on purpose: the ``invert_*``
functions recover labels ``(m, b)`` from strengths and feed them to
``algebraic_spectrum``, while the ``*_series`` functions evaluate the explicit
eigenvalue formulas in strength space.  Tests compare the two.
"""

import cmath
import enum
import math
from dataclasses import dataclass, field

from sl2c.errors import InvalidStrengths, V1IZero
from sl2c.potentials import MorseGeneral, MorseParametrized, PoschlTellerPT, ScarfPT

CRITICAL_TOL = 1e-12
MORSE_REALITY_RTOL = 1e-10


class Series(str, enum.Enum):
    PLUS = "+"
    MINUS = "-"
    SINGLE = "single"


class Classification(str, enum.Enum):
    ALL_REAL = "AllReal"
    CRITICAL = "Critical"
    CONJUGATE_PAIRS = "ConjugatePairs"
    GENUINELY_COMPLEX = "GenuinelyComplex"
    EMPTY = "Empty"


_SERIES_ORDER = {Series.PLUS: 0, Series.MINUS: 1, Series.SINGLE: 2}


@dataclass(frozen=True)
class Level:
    n: int
    series: Series
    energy: complex
    regular: bool
    # algebraic multiplicity; 2 for the merged level at an exceptional point
    multiplicity: int = 1


@dataclass
class SpectrumResult:
    entries: list
    classification: Classification
    critical_strength: float = None
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = sorted(self.entries, key=lambda lv: (_SERIES_ORDER[Series(lv.series)], lv.n))

    @property
    def regular_levels(self) -> list:
        return [lv for lv in self.entries if lv.regular]

    def regular_energies(self) -> list:
        return [lv.energy for lv in self.regular_levels]

    def to_dict(self) -> dict:
        return {
            "classification": Classification(self.classification).value,
            "critical_strength": self.critical_strength,
            "levels": [
                {
                    "series": Series(lv.series).value,
                    "n": int(lv.n),
                    "re": float(lv.energy.real),
                    "im": float(lv.energy.imag),
                    "regular": bool(lv.regular),
                }
                for lv in self.entries
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SpectrumResult":
        classification = Classification(data["classification"])
        entries = []
        for row in data["levels"]:
            series = Series(row["series"])
            mult = 2 if classification is Classification.CRITICAL and series is Series.SINGLE else 1
            entries.append(Level(row["n"], series, complex(row["re"], row["im"]), row["regular"], mult))
        return cls(entries, classification, data["critical_strength"])

    def __eq__(self, other):
        if not isinstance(other, SpectrumResult):
            return NotImplemented
        return (
            self.entries == other.entries
            and self.classification == other.classification
            and self.critical_strength == other.critical_strength
        )


@dataclass(frozen=True)
class LabelSolution:
    m: complex
    b: complex
    regular: bool


@dataclass
class InversionResult:
    solutions: list
    residual: float

    def to_dict(self) -> dict:
        return {
            "solutions": [
                {
                    "m": {"re": s.m.real, "im": s.m.imag},
                    "b": {"re": s.b.real, "im": s.b.imag},
                    "regular": bool(s.regular),
                }
                for s in self.solutions
            ],
            "residual": self.residual,
        }


def algebraic_spectrum(m: complex, max_levels: int, series: Series = Series.SINGLE) -> list:
    """Levels ``E_n = -(m - n - 1/2)^2`` for ``n < max_levels`` with regularity flags."""
    if max_levels < 1:
        raise ValueError("max_levels must be at least 1")
    m = complex(m)
    return [
        Level(n, Series(series), -((m - n - 0.5) ** 2), n < m.real - 0.5)
        for n in range(max_levels)
    ]


def classify(levels) -> Classification:
    """Classify a set of levels by the reality and pairing of its regular members."""
    regular = [lv for lv in levels if lv.regular]
    if not regular:
        return Classification.EMPTY
    if any(lv.multiplicity > 1 for lv in regular):
        return Classification.CRITICAL
    if all(abs(lv.energy.imag) < 1e-10 for lv in regular):
        return Classification.ALL_REAL
    if is_conjugation_closed([lv.energy for lv in regular]):
        return Classification.CONJUGATE_PAIRS
    return Classification.GENUINELY_COMPLEX


def is_conjugation_closed(energies, tol: float = 1e-10) -> bool:
    """True if the multiset of energies maps onto itself under complex conjugation."""
    pool = list(energies)
    for e in list(energies):
        if not pool:
            return False
        dist = [abs(e.conjugate() - p) for p in pool]
        j = min(range(len(pool)), key=dist.__getitem__)
        if dist[j] > tol:
            return False
        pool.pop(j)
    return True


def spectrum_from_labels(labels: dict, max_levels: int, critical_strength=None) -> SpectrumResult:
    """``algebraic_spectrum`` of every ``series -> m`` and the combined classification."""
    entries = []
    for series, m in labels.items():
        entries.extend(algebraic_spectrum(m, max_levels, series))
    return SpectrumResult(entries, classify(entries), critical_strength, dict(labels))


# -- two-series potentials (Scarf II and class II, PT-symmetric) -------------


def _scarf_residual(m: complex, b: complex, v1: float, v2: float) -> float:
    mr, mi, br, bi = m.real, m.imag, b.real, b.imag
    eqs = (
        br * br - bi * bi - mr * mr + mi * mi + 0.25 + v1,
        br * bi - mr * mi,
        mr * br - mi * bi,
        2 * (mr * bi + mi * br) - v2,
    )
    return max(abs(e) for e in eqs)


def _two_branch_labels(q: float, a: float):
    # (m+beta)^2 = q + a and (m-beta)^2 = q - a; the overall sign is fixed by Re(m) >= 0
    s = cmath.sqrt(q + a)
    t = cmath.sqrt(q - a)
    if q >= a:
        # s - t cancels for a << q; s^2 - t^2 = 2a gives it without loss
        return (s + t) / 2, a / (s + t)
    return (s + t) / 2, (s - t) / 2


def invert_scarf(v1: float, v2: float) -> InversionResult:
    """Labels ``(m, b)`` of ``-V1 sech^2 x - i V2 sech x tanh x`` as a class I potential.

    Matching the closed form gives ``m^2 - b^2 = V1 + 1/4`` and ``m b = i V2 / 2``.
    Both branches are returned, plus first.  Residual is the largest of the
    four real component equations.
    """
    ScarfPT(v1, v2)
    q = v1 + 0.25
    sols = []
    for m in _two_branch_labels(q, abs(v2)):
        b = 1j * v2 / (2 * m)
        sols.append(LabelSolution(m, b, m.real > 0.5))
    residual = max(_scarf_residual(s.m, s.b, v1, v2) for s in sols)
    return InversionResult(sols, residual)


def invert_pt2(v1: float, v2: float) -> InversionResult:
    """Labels of ``V1 cosech^2 tau - V2 cosech tau coth tau`` as a class II potential.

    Matching gives ``b^2 + m^2 - 1/4 = V1`` and ``2 m b = V2``.
    """
    if not (math.isfinite(v1) and v1 > -0.25):
        raise InvalidStrengths(f"PoschlTellerPT needs V1 > -1/4, got V1 = {v1}")
    if not (math.isfinite(v2) and v2 != 0):
        raise InvalidStrengths(f"PoschlTellerPT needs V2 != 0, got V2 = {v2}")
    q = v1 + 0.25
    sols = []
    for m in _two_branch_labels(q, abs(v2)):
        b = v2 / (2 * m)
        sols.append(LabelSolution(m, b, m.real > 0.5))
    residual = max(max(abs(s.b * s.b + s.m * s.m - 0.25 - v1), abs(2 * s.m * s.b - v2)) for s in sols)
    return InversionResult(sols, residual)


def _two_series(v1: float, v2: float, max_levels: int) -> SpectrumResult:
    if max_levels < 1:
        raise ValueError("max_levels must be at least 1")
    q = v1 + 0.25
    a = abs(v2)
    entries = []

    def add(series, mu, bound, mult=1):
        for n in range(max_levels):
            entries.append(Level(n, series, complex(-((mu - n - 0.5) ** 2)), n < bound, mult))

    if abs(a - q) < CRITICAL_TOL:
        mu = 0.5 * math.sqrt(q + a)
        add(Series.SINGLE, mu, mu - 0.5, mult=2)
        labels = {Series.SINGLE: complex(mu)}
    elif a < q:
        root_p, root_m = math.sqrt(q + a), math.sqrt(q - a)
        mu_p = 0.5 * (root_p + root_m)
        mu_m = a / (root_p + root_m)
        add(Series.PLUS, mu_p, mu_p - 0.5)
        add(Series.MINUS, mu_m, mu_m - 0.5)
        labels = {Series.PLUS: complex(mu_p), Series.MINUS: complex(mu_m)}
    else:
        root_p, root_i = math.sqrt(a + q), math.sqrt(a - q)
        bound = 0.5 * (root_p - 1)
        mu_p = 0.5 * complex(root_p, root_i)
        mu_m = 0.5 * complex(root_p, -root_i)
        add(Series.PLUS, mu_p, bound)
        add(Series.MINUS, mu_m, bound)
        labels = {Series.PLUS: mu_p, Series.MINUS: mu_m}
    return SpectrumResult(entries, classify(entries), q, labels)


def scarf_series(v1: float, v2: float, max_levels: int = 10) -> SpectrumResult:
    """Closed-form spectrum of the PT-symmetric Scarf II potential.

    Below ``|V2| = V1 + 1/4`` two real series, at it one merged level, above
    it complex-conjugate pairs.  ``critical_strength`` is always ``V1 + 1/4``.
    """
    ScarfPT(v1, v2)
    return _two_series(v1, v2, max_levels)


def pt2_series(v1: float, v2: float, max_levels: int = 10, gamma: float = math.pi / 8) -> SpectrumResult:
    """Closed-form spectrum of the PT-symmetric class II potential.

    ``(m +- b)^2 = V1 + 1/4 +- V2`` gives the same two series as the Scarf
    case, independent of the shift ``gamma``.
    """
    PoschlTellerPT(v1, v2, gamma)
    return _two_series(v1, v2, max_levels)


def is_broken(v1: float, v2: float) -> bool:
    """Algebraic classifier: has the Scarf spectrum left the real axis?"""
    return scarf_series(v1, v2, 1).classification is Classification.CONJUGATE_PAIRS


def bisect_critical(v1: float, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Locate the switch of ``is_broken`` between ``lo`` (real) and ``hi`` (broken)."""
    if is_broken(v1, lo) or not is_broken(v1, hi):
        raise ValueError("bracket does not straddle the critical strength")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_broken(v1, mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# -- Morse -------------------------------------------------------------------


def _morse_roots(v1r: float, v1i: float):
    delta = math.hypot(v1r, v1i)
    # sqrt(delta -+ v1r) without cancellation
    if v1r >= 0:
        plus = delta + v1r
        minus = v1i * v1i / plus
    else:
        minus = delta - v1r
        plus = v1i * v1i / minus
    return delta, math.sqrt(plus), math.sqrt(minus), math.copysign(1.0, v1i)


def morse_regularity(v1r: float, v1i: float, v2r: float, v2i: float) -> bool:
    """``(V1R + D)^{1/2} V2R + nu (D - V1R)^{1/2} V2I > sqrt(2) D``."""
    delta, rp, rm, nu = _morse_roots(v1r, v1i)
    return rp * v2r + nu * rm * v2i > math.sqrt(2) * delta


def invert_morse(v1: complex, v2: complex) -> InversionResult:
    """Labels of ``V1 e^{-2x} - V2 e^{-x}``: ``b^2 = V1``, ``2 m b = V2``.

    The sign of ``(b, m)`` is chosen with ``Re(b) > 0``, the confining branch.
    """
    v1, v2 = complex(v1), complex(v2)
    if v1.imag == 0:
        raise V1IZero(f"Morse potential has no regular bound states for real V1 (got V1 = {v1})")
    b = cmath.sqrt(v1)
    if b.real < 0:
        b = -b
    m = v2 / (2 * b)
    regular = morse_regularity(v1.real, v1.imag, v2.real, v2.imag)
    residual = abs(b * b - v1) + abs(2 * m * b - v2)
    return InversionResult([LabelSolution(m, b, regular)], residual)


def morse_reality_target(v1r: float, v1i: float, v2r: float) -> float:
    """The unique ``V2I`` giving a real Morse spectrum for the other strengths."""
    _, rp, rm, nu = _morse_roots(v1r, v1i)
    return nu * rm / rp * v2r


def morse_series(v1r: float, v1i: float, v2r: float, v2i: float, max_levels: int = 10) -> SpectrumResult:
    """Closed-form spectrum of the general upper-sign Morse potential.

    Real levels occur only on the line ``V2I = morse_reality_target(...)``;
    elsewhere the levels are complex and not conjugate-paired.
    """
    if v1i == 0:
        raise V1IZero("Morse potential needs V1I != 0")
    if max_levels < 1:
        raise ValueError("max_levels must be at least 1")
    delta, rp, rm, nu = _morse_roots(v1r, v1i)
    target = nu * rm / rp * v2r
    real = abs(v2i - target) <= MORSE_REALITY_RTOL * max(1.0, abs(v2i), abs(target))
    if real:
        mu = complex(v2r * rm / (math.sqrt(2) * abs(v1i)))
        bound = mu.real - 0.5
    else:
        mu = complex(rp, -nu * rm) * complex(v2r, v2i) / (2 * math.sqrt(2) * delta)
        bound = (rp * v2r + nu * rm * v2i) / (2 * math.sqrt(2) * delta) - 0.5
    entries = [Level(n, Series.SINGLE, -((mu - n - 0.5) ** 2), n < bound) for n in range(max_levels)]
    if not any(lv.regular for lv in entries):
        cls = Classification.EMPTY
    else:
        cls = Classification.ALL_REAL if real else Classification.GENUINELY_COMPLEX
    return SpectrumResult(entries, cls, None, {Series.SINGLE: mu})


def morse_parametrized(a: float, b: float, gamma: float, delta: float, max_levels: int = 10) -> SpectrumResult:
    """Spectrum ``E_n = -(C - n)^2``, regular for ``n < Re(C)``.

    ``gamma == delta`` makes ``C = (gamma - 1)/2`` real (the pseudo-Hermitian case).
    """
    strengths = MorseParametrized(a, b, gamma, delta)
    if max_levels < 1:
        raise ValueError("max_levels must be at least 1")
    if gamma == delta:
        C = complex((gamma - 1) / 2)
    else:
        C = strengths.C
    re_c = ((gamma - 1) * a * a + (delta - 1) * b * b) / (2 * (a * a + b * b))
    entries = [Level(n, Series.SINGLE, -((C - n) ** 2), n < re_c) for n in range(max_levels)]
    if not any(lv.regular for lv in entries):
        cls = Classification.EMPTY
    else:
        cls = Classification.ALL_REAL if gamma == delta else Classification.GENUINELY_COMPLEX
    return SpectrumResult(entries, cls, None, {Series.SINGLE: C + 0.5})


def series_for(strengths, max_levels: int = 10) -> SpectrumResult:
    """Closed-form spectrum for any ``PhysicalStrengths`` variant."""
    if isinstance(strengths, ScarfPT):
        return scarf_series(strengths.v1, strengths.v2, max_levels)
    if isinstance(strengths, PoschlTellerPT):
        return pt2_series(strengths.v1, strengths.v2, max_levels, strengths.gamma)
    if isinstance(strengths, MorseGeneral):
        return morse_series(strengths.v1r, strengths.v1i, strengths.v2r, strengths.v2i, max_levels)
    if isinstance(strengths, MorseParametrized):
        return morse_parametrized(strengths.a, strengths.b, strengths.gamma, strengths.delta, max_levels)
    raise InvalidStrengths(f"unsupported strengths {strengths!r}")


def invert_for(strengths) -> InversionResult:
    """Algebra labels for any ``PhysicalStrengths`` variant."""
    if isinstance(strengths, ScarfPT):
        return invert_scarf(strengths.v1, strengths.v2)
    if isinstance(strengths, PoschlTellerPT):
        return invert_pt2(strengths.v1, strengths.v2)
    if isinstance(strengths, MorseParametrized):
        strengths = strengths.to_general()
    if isinstance(strengths, MorseGeneral):
        return invert_morse(strengths.v1, strengths.v2)
    raise InvalidStrengths(f"unsupported strengths {strengths!r}")
