"""PPT entanglement witness for the spin-photon state.

For ``gamma = |gamma| e^{i phi}`` the partial transpose of the protocol state
has a single negative eigenvalue ``-sqrt(1-|gamma|^2)/2``.  The projector on
its eigenvector, partially transposed, is the witness operator; it expands on
``sigma_i (x) sigma_j^(e)`` with coefficients that depend only on
``alpha' = (1 + sqrt(1-|gamma|^2)) / |gamma|`` and ``phi``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._validation import SingularityError, check_gamma, check_hermitian, check_unit_interval
from .linalg import EigenSystem, hermitian_eigs
from .states import density_matrix

__all__ = [
    "PAULI",
    "PAULI_LABELS",
    "WitnessDecomposition",
    "partial_transpose_matter",
    "hermitian_eigs",
    "negativity_closed_form",
    "alpha_prime",
    "projector_negative",
    "projector_negative_numeric",
    "witness_operator",
    "pauli_decompose",
    "witness_coefficients",
    "exact_witness_expectation",
    "negative_eigen_count",
]

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
PAULI_LABELS = ("0", "x", "y", "z")

# PAULI_PRODUCTS[i, j] = sigma_i (matter) (x) sigma_j (photon)
PAULI_PRODUCTS = np.einsum("iab,jcd->ijacbd", PAULI, PAULI).reshape(4, 4, 4, 4)


def partial_transpose_matter(rho) -> np.ndarray:
    """Transpose over the matter (first) qubit of a 4x4 operator."""
    rho = check_hermitian(rho)
    return rho.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)


def negativity_closed_form(gamma_mag: float) -> float:
    gamma_mag = check_unit_interval(gamma_mag, "gamma_mag")
    return -0.5 * math.sqrt(1.0 - gamma_mag * gamma_mag)


def alpha_prime(gamma_mag: float) -> float:
    gamma_mag = check_unit_interval(gamma_mag, "gamma_mag")
    if gamma_mag == 0.0:
        raise SingularityError("alpha' diverges at |gamma| = 0")
    return (1.0 + math.sqrt(1.0 - gamma_mag * gamma_mag)) / gamma_mag


def projector_negative(gamma: complex) -> np.ndarray:
    """Closed-form rank-one projector on the negative eigenvector of ``rho^{T_M}``.

    Raises :class:`SingularityError` at ``gamma = 0``; use
    :func:`projector_negative_numeric` there.
    """
    gamma = check_gamma(gamma, allow_zero=False)
    a = alpha_prime(min(abs(gamma), 1.0))
    e = cmath.exp(1j * cmath.phase(gamma))
    vec = np.array([1.0, a * e.conjugate(), -a * e.conjugate(), e.conjugate() ** 2])
    return np.outer(vec, vec.conj()) / (2.0 * (1.0 + a * a))


def projector_negative_numeric(gamma: complex) -> np.ndarray:
    """Eigenvector route to the same projector; defined for every ``|gamma| <= 1``."""
    eig = hermitian_eigs(partial_transpose_matter(density_matrix(gamma)))
    vec = eig.eigenvectors[:, 0]
    return np.outer(vec, vec.conj())


def witness_operator(gamma: complex) -> np.ndarray:
    return partial_transpose_matter(projector_negative(gamma))


@dataclass(frozen=True)
class WitnessDecomposition:
    """Real coefficients ``c[i, j]`` of ``sum c[i, j] sigma_i (x) sigma_j^(e)``."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs)
        if coeffs.shape != (4, 4):
            raise ValueError(f"expected 4x4 coefficients, got {coeffs.shape}")
        if np.iscomplexobj(coeffs):
            if np.abs(coeffs.imag).max() > 1e-12:
                raise ValueError("Pauli coefficients of a Hermitian operator must be real")
            coeffs = coeffs.real
        object.__setattr__(self, "coeffs", coeffs.astype(float))

    def __getitem__(self, key: str) -> float:
        """Look up a coefficient by label, e.g. ``dec["zx"]``."""
        i, j = (PAULI_LABELS.index(ch) for ch in key)
        return float(self.coeffs[i, j])

    def recompose(self) -> np.ndarray:
        return np.einsum("ij,ijab->ab", self.coeffs, PAULI_PRODUCTS)


def pauli_decompose(mat) -> WitnessDecomposition:
    mat = check_hermitian(mat)
    # Tr(W P) for every product P at once
    coeffs = np.einsum("ab,ijba->ij", mat, PAULI_PRODUCTS) / 4.0
    return WitnessDecomposition(coeffs.real)


def witness_coefficients(gamma: complex) -> WitnessDecomposition:
    """Closed-form expansion of the witness operator on Pauli products."""
    gamma = check_gamma(gamma, allow_zero=False)
    a = alpha_prime(min(abs(gamma), 1.0))
    phi = cmath.phase(gamma)
    norm = 4.0 * (1.0 + a * a)
    c = np.zeros((4, 4))
    c[0, 0] = 0.25
    c[3, 3] = (1 - a * a) / norm
    c[1, 1] = (math.cos(2 * phi) - a * a) / norm
    c[2, 2] = (math.cos(2 * phi) + a * a) / norm
    c[1, 2] = -math.sin(2 * phi) / norm
    c[2, 1] = math.sin(2 * phi) / norm
    c[3, 1] = 2 * a * math.cos(phi) / norm
    c[1, 3] = -c[3, 1]
    c[2, 3] = c[3, 2] = -2 * a * math.sin(phi) / norm
    return WitnessDecomposition(c)


def exact_witness_expectation(gamma: complex) -> float:
    """``Tr(W rho)`` for the protocol state; equals the negative PT eigenvalue."""
    return float(np.real(np.trace(witness_operator(gamma) @ density_matrix(gamma))))


def negative_eigen_count(rho, tol: float = 1e-12) -> int:
    eig: EigenSystem = hermitian_eigs(partial_transpose_matter(rho))
    return int(np.sum(eig.eigenvalues < -tol))
