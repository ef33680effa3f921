"""Finite-difference verification of the algebraic spectra.

``-psi'' + V psi = E psi`` is discretized with the three-point stencil on the
interior nodes of a ``GridSpec`` with Dirichlet ends.  The resulting matrix is
complex symmetric and tridiagonal; its eigenvalues are matched against the
algebraic levels.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from sl2c._tridiag import tridiagonal_eigenvalues
from sl2c.algebra import GridFunction
from sl2c.errors import NoConvergence, NotBracketed, SingularPotential
from sl2c.grid import GridSpec
from sl2c.potentials import MorseGeneral, MorseParametrized, PhysicalStrengths, ScarfPT

__all__ = [
    "GridSpec",
    "MatchPair",
    "MatchReport",
    "ScanPoint",
    "ScanResult",
    "backward_errors",
    "build_hamiltonian",
    "default_grid",
    "eigenvalues_dense",
    "grid_eigenvalues",
    "hamiltonian_bands",
    "match_spectra",
    "observed_order",
    "residual",
    "scan_critical",
    "tridiagonal_backward_errors",
]

DEFAULT_CAP = 1e12
BOUND_MARGIN = 1e-6


def default_grid(strengths: PhysicalStrengths) -> GridSpec:
    """Box and spacing used when the caller gives none (h = 0.02 for classes I/II)."""
    if isinstance(strengths, (MorseGeneral, MorseParametrized)):
        return GridSpec(-6.0, 25.0, 3001)
    return GridSpec(-40.0, 40.0, 4001)


def hamiltonian_bands(potential, grid: GridSpec, cap: float = DEFAULT_CAP):
    """Diagonal and off-diagonal of the Dirichlet Hamiltonian on the interior nodes."""
    h = grid.h
    x = grid.x[1:-1]
    v = np.asarray(potential(x), dtype=complex)
    if v.shape != x.shape:
        v = np.broadcast_to(v, x.shape).astype(complex)
    bad = ~np.isfinite(v) | (np.abs(v) > cap)
    if bad.any():
        i = int(np.argmax(bad))
        raise SingularPotential(f"|V| exceeds {cap:g} or is not finite at x = {x[i]:.6g}")
    diag = 2.0 / h**2 + v
    off = np.full(x.size - 1, -1.0 / h**2, dtype=complex)
    return diag, off


def build_hamiltonian(potential, grid: GridSpec, cap: float = DEFAULT_CAP) -> np.ndarray:
    """Dense matrix of ``-d^2/dx^2 + V`` with ``psi(x_min) = psi(x_max) = 0``."""
    diag, off = hamiltonian_bands(potential, grid, cap)
    n = diag.size
    a = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    a[idx, idx] = diag
    a[idx[:-1], idx[1:]] = off
    a[idx[1:], idx[:-1]] = off
    return a


def _tridiagonal_bands(a: np.ndarray):
    n = a.shape[0]
    if n < 3:
        return None
    sub = np.diagonal(a, -1)
    sup = np.diagonal(a, 1)
    if not np.array_equal(sub, sup):
        return None
    if np.triu(a, 2).any() or np.tril(a, -2).any():
        return None
    return np.diagonal(a).copy(), sub.copy()


def _eigenvalues_bands(diag, off, max_iter: int):
    vals, status = tridiagonal_eigenvalues(diag, off, max_iter)
    if status == -1:
        return vals
    if status == -2:
        a = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
        return scipy.linalg.eigvals(a, check_finite=False)
    converged = np.zeros(diag.size, dtype=bool)
    converged[:status] = True
    raise NoConvergence(
        f"QL iteration stalled at eigenvalue {status} after {max_iter} sweeps",
        partial=vals,
        converged=converged,
    )


def eigenvalues_dense(matrix, max_iter: int = 60) -> np.ndarray:
    """All eigenvalues of a square complex matrix.

    Complex symmetric tridiagonal input goes through the O(n^2) QL kernel;
    anything else (or a QL rotation breakdown) uses LAPACK ``zgeev``.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix has non-finite entries")
    bands = _tridiagonal_bands(a)
    if bands is not None:
        return _eigenvalues_bands(*bands, max_iter)
    try:
        return scipy.linalg.eigvals(a, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def grid_eigenvalues(potential, grid: GridSpec, cap: float = DEFAULT_CAP, max_iter: int = 60) -> np.ndarray:
    """Eigenvalues of the discretized Hamiltonian without forming the dense matrix."""
    diag, off = hamiltonian_bands(potential, grid, cap)
    return _eigenvalues_bands(diag, off, max_iter)


def _column_norm_bound(a: np.ndarray) -> float:
    # max column 2-norm <= ||A||_2, so dividing by it never flatters the error
    return float(np.max(np.linalg.norm(a, axis=0)))


def backward_errors(matrix, eigenvalues=None) -> np.ndarray:
    """``||A v - lam v|| / ||A||`` for each eigenpair.

    Given eigenvalues get their vectors by inverse iteration; with
    ``eigenvalues=None`` both come from LAPACK.
    """
    a = np.asarray(matrix, dtype=complex)
    if eigenvalues is None:
        lam, vecs = scipy.linalg.eig(a)
    else:
        lam = np.asarray(eigenvalues, dtype=complex)
        vecs = np.column_stack([_inverse_iteration_dense(a, mu) for mu in lam])
    res = np.linalg.norm(a @ vecs - vecs * lam, axis=0) / np.linalg.norm(vecs, axis=0)
    return res / _column_norm_bound(a)


def _inverse_iteration_dense(a, mu, steps: int = 3):
    n = a.shape[0]
    shift = mu + 1e-14 * max(1.0, abs(mu))
    lu = scipy.linalg.lu_factor(a - shift * np.eye(n))
    v = np.random.default_rng(0).standard_normal(n) + 0j
    for _ in range(steps):
        v = scipy.linalg.lu_solve(lu, v)
        v /= np.linalg.norm(v)
    return v


def tridiagonal_backward_errors(diag, off, eigenvalues, steps: int = 3) -> np.ndarray:
    """Backward errors of eigenvalues of a symmetric tridiagonal matrix.

    A vector is obtained for each eigenvalue by inverse iteration (banded LU
    with partial pivoting) and ``||T v - lam v|| / ||T||`` is returned.
    """
    diag = np.asarray(diag, dtype=complex)
    off = np.asarray(off, dtype=complex)
    n = diag.size
    col = np.sqrt(np.abs(diag) ** 2 + np.r_[0, np.abs(off) ** 2] + np.r_[np.abs(off) ** 2, 0])
    norm = float(col.max())
    rng = np.random.default_rng(0)
    start = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    out = np.empty(len(eigenvalues))
    for k, lam in enumerate(eigenvalues):
        shift = lam + 1e-14 * norm
        ab = np.zeros((3, n), dtype=complex)
        ab[0, 1:] = off
        ab[1] = diag - shift
        ab[2, :-1] = off
        v = start / np.linalg.norm(start)
        for _ in range(steps):
            v = scipy.linalg.solve_banded((1, 1), ab, v, check_finite=False)
            v /= np.linalg.norm(v)
        tv = diag * v
        tv[:-1] += off * v[1:]
        tv[1:] += off * v[:-1]
        out[k] = np.linalg.norm(tv - lam * v) / norm
    return out


# -- matching ------------------------------------------------------------------


@dataclass(frozen=True)
class MatchPair:
    n: int
    series: str
    algebraic: complex
    numeric: complex
    abs_error: float
    # numeric eigenvalues averaged into ``numeric`` (two at an exceptional point)
    cluster: tuple = ()


@dataclass
class MatchReport:
    pairs: list
    unmatched_algebraic: list
    unmatched_numeric_bound_candidates: list
    h: float
    converged: bool
    tol: float = None

    def to_dict(self) -> dict:
        def cx(z):
            return {"re": float(z.real), "im": float(z.imag)}

        return {
            "converged": self.converged,
            "h": self.h,
            "tol": self.tol,
            "pairs": [
                {
                    "series": p.series,
                    "n": p.n,
                    "algebraic": cx(p.algebraic),
                    "numeric": cx(p.numeric),
                    "abs_error": p.abs_error,
                    "cluster": [cx(z) for z in p.cluster],
                }
                for p in self.pairs
            ],
            "unmatched_algebraic": [
                {"series": str(lv.series.value), "n": lv.n, **cx(lv.energy)} for lv in self.unmatched_algebraic
            ],
            "unmatched_numeric_bound_candidates": [cx(z) for z in self.unmatched_numeric_bound_candidates],
        }


def match_spectra(algebraic, numeric, tol: float, h: float = None, floor: float = 0.0) -> MatchReport:
    """Greedy nearest-neighbour pairing of regular algebraic levels with grid eigenvalues.

    A level of multiplicity k (the merged level at an exceptional point)
    claims its k nearest eigenvalues and is compared with their mean: the
    individual eigenvalues of a defective pair split by O(h) while the mean
    keeps the O(h^2) accuracy of the discretization.

    Numeric eigenvalues left unpaired and lying below ``floor - 1e-6`` are
    reported as unexplained bound-state candidates.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    numeric = np.asarray(numeric, dtype=complex)
    free = np.ones(numeric.size, dtype=bool)
    levels = algebraic.regular_levels
    pairs, unmatched = [], []

    def claim(level, k):
        dist = np.where(free, np.abs(numeric - level.energy), np.inf)
        idx = np.argsort(dist, kind="stable")[:k]
        idx = idx[np.isfinite(dist[idx])]
        if idx.size < k:
            return None
        return idx

    def record(level, idx):
        cluster = tuple(complex(z) for z in numeric[idx])
        value = complex(np.mean(numeric[idx]))
        err = abs(value - level.energy)
        if err < tol:
            free[idx] = False
            series = level.series.value if hasattr(level.series, "value") else str(level.series)
            pairs.append(MatchPair(level.n, series, level.energy, value, err, cluster))
        else:
            unmatched.append(level)

    simple = []
    for level in levels:
        if level.multiplicity > 1:
            idx = claim(level, level.multiplicity)
            if idx is None:
                unmatched.append(level)
            else:
                record(level, idx)
        else:
            simple.append(level)

    if simple and numeric.size:
        dist = np.abs(np.array([lv.energy for lv in simple])[:, None] - numeric[None, :])
        dist[:, ~free] = np.inf
        taken = np.zeros(len(simple), dtype=bool)
        for flat in np.argsort(dist, axis=None, kind="stable"):
            i, j = divmod(int(flat), numeric.size)
            if taken[i] or not free[j] or not np.isfinite(dist[i, j]):
                continue
            if dist[i, j] >= tol:
                break
            taken[i] = True
            record(simple[i], np.array([j]))
        unmatched.extend(lv for lv, t in zip(simple, taken) if not t)
    else:
        unmatched.extend(simple)

    leftovers = numeric[free]
    candidates = sorted(
        (complex(z) for z in leftovers if z.real < floor - BOUND_MARGIN), key=lambda z: (z.real, z.imag)
    )
    pairs.sort(key=lambda p: (p.series, p.n))
    return MatchReport(pairs, unmatched, candidates, h, not unmatched, tol)


def observed_order(errors, hs) -> list:
    """Successive convergence orders ``log(e1/e2) / log(h1/h2)``."""
    return [
        math.log(errors[i] / errors[i + 1]) / math.log(hs[i] / hs[i + 1]) for i in range(len(errors) - 1)
    ]


def residual(psi: GridFunction, energy: complex, potential) -> float:
    """``max |-D2 psi + V psi - E psi| / max |psi|`` over interior nodes."""
    v = psi.values
    h = psi.dx
    x = psi.x[1:-1]
    d2 = (v[2:] - 2 * v[1:-1] + v[:-2]) / h**2
    r = -d2 + (np.asarray(potential(x), dtype=complex) - energy) * v[1:-1]
    return float(np.max(np.abs(r)) / np.max(np.abs(v)))


# -- exceptional-point scan ------------------------------------------------------


@dataclass(frozen=True)
class ScanPoint:
    v2: float
    gap: float
    max_imag: float
    numeric_broken: bool
    classification: str


@dataclass
class ScanResult:
    v1: float
    algebraic_critical: float
    numeric_critical: float
    gap_curve: list = field(default_factory=list)
    evaluations: int = 0


def scan_workers() -> int:
    env = os.environ.get("SL2C_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _track_pair(v1: float, v2: float, grid: GridSpec, family=ScarfPT):
    from sl2c.spectra import scarf_series

    # both PT-symmetric families share the closed-form levels
    spec = scarf_series(v1, v2, 1)
    targets = [lv.energy for lv in spec.entries]
    if len(targets) == 1:
        targets = targets * 2
    # no Re(E) < 0 filter: past the transition shallow levels acquire Re(E) > 0
    pool = list(grid_eigenvalues(family(v1, v2).potential, grid))
    tracked = []
    for t in targets:
        if not pool:
            break
        j = min(range(len(pool)), key=lambda i: abs(pool[i] - t))
        tracked.append(pool.pop(j))
    gap = abs(tracked[0] - tracked[1]) if len(tracked) == 2 else math.nan
    max_imag = max((abs(z.imag) for z in tracked), default=0.0)
    return gap, max_imag, spec.classification.value


def scan_critical(
    v1: float,
    v2_lo: float,
    v2_hi: float,
    grid: GridSpec,
    threshold: float = 1e-5,
    curve_points: int = 16,
    bisect_tol: float = 1e-4,
    workers: int = None,
    family=ScarfPT,
) -> ScanResult:
    """Locate the loss of real spectrum at fixed ``V1`` by scanning ``V2``.

    ``family`` is ``ScarfPT`` or ``PoschlTellerPT``.

    The two numeric eigenvalues nearest the n = 0 levels are tracked; the
    spectrum counts as broken once either has ``|Im E| > threshold``.  A curve
    of ``curve_points`` values of ``V2`` is computed concurrently, then the
    first broken/unbroken switch along it is refined by bisection.
    """
    critical = v1 + 0.25
    if not v2_lo < critical < v2_hi:
        raise NotBracketed(f"[{v2_lo}, {v2_hi}] does not bracket the critical strength V1 + 1/4 = {critical}")

    def probe(v2):
        gap, max_imag, cls = _track_pair(v1, v2, grid, family)
        return ScanPoint(float(v2), float(gap), float(max_imag), bool(max_imag > threshold), cls)

    v2s = np.linspace(v2_lo, v2_hi, curve_points)
    with ThreadPoolExecutor(max_workers=workers or scan_workers()) as pool:
        curve = list(pool.map(probe, v2s))
    evaluations = len(curve)

    if curve[0].numeric_broken or not curve[-1].numeric_broken:
        raise NotBracketed("numeric classifier does not switch between the ends of the V2 range")
    k = next(i for i, p in enumerate(curve) if p.numeric_broken)
    lo, hi = curve[k - 1].v2, curve[k].v2
    while hi - lo > bisect_tol:
        mid = 0.5 * (lo + hi)
        evaluations += 1
        if probe(mid).numeric_broken:
            hi = mid
        else:
            lo = mid
    return ScanResult(v1, critical, 0.5 * (lo + hi), curve, evaluations)
