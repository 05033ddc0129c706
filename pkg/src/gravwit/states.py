"""Two-qubit representation of the spin-photon state.

The branch fields are orthonormalised by Gram-Schmidt,
``|e1> = |alpha_1>``, ``|alpha_2> = gamma |e1> + sqrt(1-|gamma|^2) |e2>``, and
the joint state is written in the ordered basis
``{|0 e1>, |0 e2>, |1 e1>, |1 e2>}`` with the matter qubit first.
"""

from __future__ import annotations

import math

import numpy as np

from ._validation import check_density_matrix, check_gamma

__all__ = [
    "gram_schmidt_coeffs",
    "joint_state",
    "density_matrix",
    "reduced_photon_state",
    "reduced_matter_state",
    "purity",
]


def gram_schmidt_coeffs(gamma: complex) -> tuple[complex, float]:
    """Components ``(c1, c2)`` of the second branch field on ``(|e1>, |e2>)``."""
    gamma = check_gamma(gamma)
    return gamma, math.sqrt(max(0.0, 1.0 - abs(gamma) ** 2))


def joint_state(gamma: complex) -> np.ndarray:
    c1, c2 = gram_schmidt_coeffs(gamma)
    return np.array([1.0, 0.0, c1, c2], dtype=complex) / math.sqrt(2.0)


def density_matrix(gamma: complex) -> np.ndarray:
    # At |gamma| = 1 the e2 column is all zeros; the 4x4 form is kept so callers need no special case.
    psi = joint_state(gamma)
    return np.outer(psi, psi.conj())


def reduced_photon_state(rho) -> np.ndarray:
    rho = check_density_matrix(rho)
    return np.einsum("ajak->jk", rho.reshape(2, 2, 2, 2))


def reduced_matter_state(rho) -> np.ndarray:
    rho = check_density_matrix(rho)
    return np.einsum("ajbj->ab", rho.reshape(2, 2, 2, 2))


def purity(rho) -> float:
    rho = np.asarray(rho)
    return float(np.real(np.trace(rho @ rho)))
