"""Exceptions and input checks shared across the package."""

from __future__ import annotations

import numpy as np


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class SingularityError(DomainError):
    """A closed-form parameterization diverges at the requested point."""


class ConfigurationError(ValueError):
    """A simulation or sweep configuration is infeasible."""


HERMITIAN_ATOL = 1e-10


def check_gamma(gamma: complex, *, allow_zero: bool = True) -> complex:
    gamma = complex(gamma)
    mag = abs(gamma)
    if not np.isfinite(mag):
        raise DomainError(f"overlap must be finite, got {gamma!r}")
    if mag > 1 + 1e-12:
        raise DomainError(f"|gamma| must not exceed 1, got {mag!r}")
    if not allow_zero and mag == 0:
        raise SingularityError("closed-form route undefined at gamma = 0")
    return gamma


def check_unit_interval(x: float, name: str, *, lo: float = 0.0, hi: float = 1.0) -> float:
    x = float(x)
    if not (lo <= x <= hi):
        raise DomainError(f"{name} must lie in [{lo}, {hi}], got {x!r}")
    return x


def check_square(mat, n: int) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {mat.shape}")
    return mat


def check_hermitian(mat, n: int = 4, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    mat = check_square(mat, n)
    if not np.allclose(mat, mat.conj().T, rtol=0.0, atol=atol):
        raise ValueError("matrix is not Hermitian")
    return mat


def check_density_matrix(rho, n: int = 4, atol: float = 1e-10) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite."""
    rho = check_hermitian(rho, n, atol)
    if abs(np.trace(rho) - 1) > atol:
        raise ValueError(f"density matrix must have unit trace, got {np.trace(rho).real!r}")
    if np.linalg.eigvalsh(rho).min() < -atol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho
