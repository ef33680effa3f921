"""Eigenvalues of complex symmetric tridiagonal matrices by implicit QL iteration.

The discretized Hamiltonians are complex symmetric (``A == A.T``) and
tridiagonal.  QL with complex orthogonal plane rotations (``c^2 + s^2 = 1``)
preserves both properties, so each sweep costs O(n) and the full spectrum
O(n^2), against O(n^3) for a general dense solver.  Complex orthogonal
rotations are not unitary; a rotation whose norm ``sqrt(f^2 + g^2)`` nearly
vanishes relative to ``|f| + |g|`` is reported as a breakdown so the caller can
fall back to a unitary dense method.
"""

import numpy as np
from numba import njit

EPS = np.finfo(float).eps
BREAKDOWN_RATIO = 1e-8


@njit(cache=True, nogil=True)
def _tql(d, e, max_iter):
    """In-place QL on diagonal ``d`` and off-diagonal ``e`` (``e[i]`` couples i, i+1).

    Returns -1 on success, -2 on rotation breakdown, otherwise the index of
    the first eigenvalue that failed to converge.  On return ``d`` holds the
    eigenvalues found so far (indices below the returned one are final).
    """
    n = d.size
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= EPS * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                return l
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.sqrt(g * g + 1.0)
            # larger-modulus root keeps the shift denominator away from zero
            if abs(g - r) > abs(g + r):
                r = -r
            g = d[m] - d[l] + e[l] / (g + r)
            s = 1.0 + 0.0j
            c = 1.0 + 0.0j
            p = 0.0j
            deflated = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.sqrt(f * f + g * g)
                e[i + 1] = r
                scale = abs(f) + abs(g)
                if scale == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                if abs(r) < BREAKDOWN_RATIO * scale:
                    return -2
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def tridiagonal_eigenvalues(diag, off, max_iter: int = 60):
    """Run the QL kernel on copies of the bands.

    ``off`` has length ``n - 1``.  Returns ``(eigenvalues, status)`` with the
    kernel status code.
    """
    d = np.array(diag, dtype=complex)
    e = np.zeros(d.size, dtype=complex)
    e[: d.size - 1] = off
    status = _tql(d, e, max_iter)
    return d, int(status)
