"""Random separable states and the witness evaluated on them.

Matter states are drawn uniformly from the Bloch ball and photon-qubit states
from the Hilbert-Schmidt measure.  For the Stokes-level check each term also
gets an optical intensity ``<S_0>`` (log-uniform on [1e2, 1e6]) with
``<S_1> = <S_0> * z`` where ``z`` is the Bloch-z of the photon qubit, so
``|<S_1>| <= <S_0>`` holds term by term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import DomainError, check_density_matrix
from .witness import PAULI, witness_operator

__all__ = [
    "SeparableTerm",
    "SeparableEnsemble",
    "sample_separable",
    "witness_on_separable",
    "full_witness_on_density",
    "bloch_to_density",
]

INTENSITY_RANGE = (1e2, 1e6)


def bloch_to_density(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return 0.5 * (PAULI[0] + r[0] * PAULI[1] + r[1] * PAULI[2] + r[2] * PAULI[3])


@dataclass(frozen=True)
class SeparableTerm:
    weight: float
    matter_bloch: np.ndarray
    photon_state: np.ndarray
    intensity: float = 1.0

    @property
    def matter_state(self) -> np.ndarray:
        return bloch_to_density(self.matter_bloch)

    def expect_matter(self, axis: str) -> float:
        return float(self.matter_bloch["xyz".index(axis)])

    @property
    def stokes_s1(self) -> float:
        return self.intensity * float(np.real(np.trace(self.photon_state @ PAULI[3])))


@dataclass(frozen=True)
class SeparableEnsemble:
    terms: tuple[SeparableTerm, ...]
    seed: int | None = None

    def __post_init__(self):
        weights = np.array([t.weight for t in self.terms])
        if len(self.terms) == 0 or np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
            raise DomainError("weights must be non-negative and sum to 1")
        for t in self.terms:
            if np.linalg.norm(t.matter_bloch) > 1 + 1e-12:
                raise DomainError("matter Bloch vector outside the unit ball")
            check_density_matrix(t.photon_state, 2)

    def density_matrix(self) -> np.ndarray:
        """``sum_k p_k rho_m^k (x) rho_ph^k`` with the matter qubit first."""
        return sum(t.weight * np.kron(t.matter_state, t.photon_state) for t in self.terms)


def _ball_point(rng: np.random.Generator) -> np.ndarray:
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    return direction * rng.random() ** (1 / 3)


def _hilbert_schmidt_qubit(rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def sample_separable(seed: int, max_terms: int = 6) -> SeparableEnsemble:
    if max_terms < 1:
        raise DomainError("max_terms must be at least 1")
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(k))
    # dirichlet output sums to 1 only up to rounding
    weights /= weights.sum()
    lo, hi = np.log(INTENSITY_RANGE)
    terms = tuple(
        SeparableTerm(
            weight=float(w),
            matter_bloch=_ball_point(rng),
            photon_state=_hilbert_schmidt_qubit(rng),
            intensity=float(np.exp(rng.uniform(lo, hi))),
        )
        for w in weights
    )
    return SeparableEnsemble(terms, seed)


def witness_on_separable(ens: SeparableEnsemble) -> float:
    """Stokes-level witness at ``|gamma| = 1``: ``(1 - sum p <sx><S1> / sum p <S0>) / 4``."""
    num = sum(t.weight * t.expect_matter("x") * t.stokes_s1 for t in ens.terms)
    den = sum(t.weight * t.intensity for t in ens.terms)
    if not den > 0:
        raise DomainError("total optical intensity must be strictly positive")
    return 0.25 * (1.0 - num / den)


def full_witness_on_density(rho, gamma: complex) -> float:
    """``Tr(W(gamma) rho)`` for an arbitrary two-qubit density matrix."""
    rho = check_density_matrix(rho)
    return float(np.real(np.trace(witness_operator(gamma) @ rho)))
