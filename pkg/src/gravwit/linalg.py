"""Cyclic Jacobi eigensolver for small dense complex Hermitian matrices."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ._validation import check_hermitian

__all__ = ["EigenSystem", "hermitian_eigs", "fix_phase"]


class EigenSystem(NamedTuple):
    """Ascending eigenvalues and matching unit eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def fix_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate ``vec`` so its largest-magnitude component is real and positive.

    Near-ties in magnitude resolve to the lowest index, which keeps the choice
    stable under rounding.
    """
    mags = np.abs(vec)
    k = int(np.argmax(mags >= mags.max() - 1e-12))
    if mags[k] == 0:
        return vec
    return vec * (abs(vec[k]) / vec[k])


def _rotate(a: list, v: list, p: int, q: int) -> None:
    # a, v: row-major nested lists of complex; plain Python beats numpy at this size
    apq = a[p][q]
    mag = abs(apq)
    if mag == 0.0:
        return
    ph = (apq / mag).conjugate()
    # rotating column q by ph makes the (p, q) block real symmetric
    theta = (a[q][q].real - a[p][p].real) / (2.0 * mag)
    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    sph, cph = s * ph, c * ph
    n = len(a)
    for row in a:
        x, y = row[p], row[q]
        row[p] = c * x - sph * y
        row[q] = s * x + cph * y
    rp, rq = a[p], a[q]
    sphc, cphc = sph.conjugate(), cph.conjugate()
    for k in range(n):
        x, y = rp[k], rq[k]
        rp[k] = c * x - sphc * y
        rq[k] = s * x + cphc * y
    for row in v:
        x, y = row[p], row[q]
        row[p] = c * x - sph * y
        row[q] = s * x + cph * y
    rp[q] = rq[p] = 0j


def hermitian_eigs(mat, tol: float = 1e-13, max_sweeps: int = 64) -> EigenSystem:
    """Full spectral decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps continue until the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||A||_F)``.  Eigenvectors are phase-fixed (see
    :func:`fix_phase`) and sorted by ascending eigenvalue; exact ties are
    broken lexicographically on the phase-fixed components.
    """
    a = np.asarray(mat)
    n = a.shape[0] if a.ndim == 2 else 0
    a = check_hermitian(a, n).copy()
    scale = max(1.0, float(np.linalg.norm(a)))
    a = (0.5 * (a + a.conj().T)).tolist()
    v = np.eye(n, dtype=complex).tolist()
    limit = (tol * scale) ** 2
    for _ in range(max_sweeps):
        off = sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j)
        if off < limit:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    evals = np.array([a[k][k].real for k in range(n)])
    v = np.array(v, dtype=complex)
    vecs = [fix_phase(v[:, k]) for k in range(n)]

    def key(k):
        comps = np.round(vecs[k], 12)
        return (round(evals[k], 12),) + tuple((-z.real, -z.imag) for z in comps)

    order = sorted(range(n), key=key)
    return EigenSystem(evals[order], np.column_stack([vecs[k] for k in order]))
