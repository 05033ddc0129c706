"""Isotropic (Werner-type) noise on the spin-photon state.

``rho_v = v rho + (1 - v) I/4``.  After partial transposition the spectrum is

    (1 + v +- 2 v |gamma|)/4,   (1 - v +- 2 v sqrt(1 - |gamma|^2))/4,

and only the last one can go negative, which happens for
``v > 1 / (1 + 2 sqrt(1 - |gamma|^2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import DomainError, check_density_matrix, check_unit_interval

__all__ = [
    "NoiseAnalysis",
    "noisy_state",
    "noisy_pt_spectrum",
    "critical_noise",
    "gamma_from_vcrit",
    "analyze_noise",
]


def noisy_state(rho, v: float) -> np.ndarray:
    v = check_unit_interval(v, "v")
    rho = check_density_matrix(rho)
    return v * rho + (1.0 - v) / 4.0 * np.eye(4)


def noisy_pt_spectrum(gamma_mag: float, v: float) -> np.ndarray:
    """Eigenvalues ``(l1, l2, l3, l4)`` of the partially transposed noisy state; ``l4`` is the smallest."""
    g = check_unit_interval(gamma_mag, "gamma_mag")
    v = check_unit_interval(v, "v")
    s = math.sqrt(1.0 - g * g)
    return np.array(
        [
            (1 + v + 2 * v * g) / 4,
            (1 + v - 2 * v * g) / 4,
            # grouped as 1 - v (1 -+ 2s) so l4 is exactly 0 at v = 1 / (1 + 2s)
            (1 - v * (1 - 2 * s)) / 4,
            (1 - v * (1 + 2 * s)) / 4,
        ]
    )


def critical_noise(gamma_mag: float) -> float:
    g = check_unit_interval(gamma_mag, "gamma_mag")
    return 1.0 / (1.0 + 2.0 * math.sqrt(1.0 - g * g))


def gamma_from_vcrit(v: float) -> float:
    """Overlap magnitude whose critical noise parameter is ``v`` (inverse of :func:`critical_noise`)."""
    v = float(v)
    if v < 1 / 3 - 1e-15 or v > 1.0:
        raise DomainError(f"critical noise parameter must lie in [1/3, 1], got {v!r}")
    ratio = (1.0 - v) / (2.0 * v)
    return math.sqrt(max(0.0, 1.0 - ratio * ratio))


@dataclass(frozen=True)
class NoiseAnalysis:
    v: float
    eigenvalues: np.ndarray
    lambda_neg_noisy: float
    v_critical: float

    @property
    def entangled(self) -> bool:
        # v == v_critical is not entangled
        return self.v > self.v_critical


def analyze_noise(gamma_mag: float, v: float) -> NoiseAnalysis:
    eigs = noisy_pt_spectrum(gamma_mag, v)
    return NoiseAnalysis(float(v), eigs, float(eigs[3]), critical_noise(gamma_mag))
