"""Photon-counting Monte Carlo for the spin-Stokes correlators.

Each trial measures the matter qubit along one axis and counts photons in two
modes.  The joint outcome law is exact for the model state
``(|0>|alpha_1, beta> + |1>|alpha_2, beta>)/sqrt 2``: projecting the matter
qubit on the eigenvector ``e_m`` leaves the photon field in
``(conj(e_m0)|u_1, v_1> + conj(e_m1)|u_2, v_2>)/sqrt 2`` with ``(u_s, v_s)``
the coherent amplitudes of the two counted modes, so that

    P(m, n1, n2) = |conj(e_m0) A_n1(u_1) A_n2(v_1) + conj(e_m1) A_n1(u_2) A_n2(v_2)|^2 / 2,
    A_n(u) = exp(-|u|^2/2) u^n / sqrt(n!).

For S_1 and S_3 the counted modes are the beam-splitter outputs (the S_3 run
uses a quarter-wave extra LO phase); S_2 counts the signal and LO directly.

Trials are cut into fixed-size blocks, each with its own random stream keyed
by ``(seed, block)``, so estimates are bit-identical for any worker count.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._validation import ConfigurationError
from .core import JointStateParams
from .stokes import LOConfig, beam_splitter_outputs

__all__ = [
    "MonteCarloConfig",
    "MCEstimate",
    "AXIS_EIGENVECTORS",
    "fock_amplitudes",
    "outcome_distribution",
    "distribution_correlator",
    "mc_correlator",
    "required_cutoff",
]

BLOCK_SIZE = 8192
TAIL_TOLERANCE = 1e-9

_S2 = 1 / math.sqrt(2)
# outcome +1 first, then -1
AXIS_EIGENVECTORS = {
    "z": np.array([[1, 0], [0, 1]], dtype=complex),
    "x": np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    "y": np.array([[_S2, 1j * _S2], [_S2, -1j * _S2]], dtype=complex),
}
OUTCOMES = np.array([1.0, -1.0])


def required_cutoff(*amplitudes: complex) -> int:
    """Smallest Fock cutoff meeting ``n_max >= mean + 10 sqrt(mean)`` for every mode involved."""
    amps = [abs(a) for a in amplitudes]
    mean = max([a * a for a in amps] + [0.5 * (x + y) ** 2 for x in amps for y in amps])
    return int(math.ceil(mean + 10 * math.sqrt(mean))) + 1


@dataclass(frozen=True)
class MonteCarloConfig:
    """Scaled-amplitude sampling setup.

    ``fock_cutoff=None`` picks :func:`required_cutoff` for the amplitudes.
    """

    alpha_1: complex
    alpha_2: complex
    beta: complex
    n_trials: int = 100_000
    seed: int = 0
    fock_cutoff: int | None = None
    n_bootstrap: int = 400

    def __post_init__(self):
        if self.n_trials < 1:
            raise ConfigurationError("n_trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer")
        if self.n_bootstrap < 2:
            raise ConfigurationError("n_bootstrap must be at least 2")
        if self.fock_cutoff is None:
            object.__setattr__(self, "fock_cutoff", required_cutoff(self.alpha_1, self.alpha_2, self.beta))
        elif self.fock_cutoff < required_cutoff(self.alpha_1, self.alpha_2, self.beta):
            raise ConfigurationError(
                f"fock_cutoff {self.fock_cutoff} below mean + 10 sqrt(mean) for these amplitudes"
            )

    @classmethod
    def balanced(cls, alpha_mag: float = 3.0, delta_phi: float = 0.2, **kwargs) -> "MonteCarloConfig":
        """Equal signal and LO amplitudes with the left branch at phase zero."""
        return cls(complex(alpha_mag), cmath.rect(alpha_mag, delta_phi), complex(alpha_mag), **kwargs)

    def state_params(self) -> JointStateParams:
        overlap = cmath.exp(
            -0.5 * abs(self.alpha_1) ** 2 - 0.5 * abs(self.alpha_2) ** 2 + self.alpha_1.conjugate() * self.alpha_2
        )
        alpha_mag = math.sqrt(0.5 * (abs(self.alpha_1) ** 2 + abs(self.alpha_2) ** 2))
        return JointStateParams(overlap, cmath.phase(self.alpha_1), cmath.phase(self.alpha_2), alpha_mag)

    def default_lo(self) -> LOConfig:
        return LOConfig(abs(self.beta), cmath.phase(self.beta))


class MCEstimate(NamedTuple):
    estimate: float
    std_error: float
    n_trials: int
    tail_mass: float


def fock_amplitudes(u: complex, cutoff: int) -> np.ndarray:
    """``A_n(u) = exp(-|u|^2/2) u^n / sqrt(n!)`` for ``n = 0..cutoff`` by stable recursion."""
    out = np.empty(cutoff + 1, dtype=complex)
    out[0] = math.exp(-0.5 * abs(u) ** 2)
    for n in range(1, cutoff + 1):
        out[n] = out[n - 1] * u / math.sqrt(n)
    return out


def _counted_modes(alpha: complex, lo: LOConfig, stokes_index: int) -> tuple[complex, complex]:
    if stokes_index == 2:
        return alpha, lo.beta
    if stokes_index == 3:
        lo = lo.quadrature()
    return beam_splitter_outputs(alpha, lo.beta, lo.theta_lo)


def outcome_distribution(
    cfg: MonteCarloConfig, axis: str, stokes_index: int, lo: LOConfig | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Exact joint law on the truncated grid.

    Returns ``(prob, m, s_j, s_0)``, all of shape ``(2, n+1, n+1)``, with
    ``prob`` the outcome probabilities and the others the recorded values.
    """
    if axis not in AXIS_EIGENVECTORS:
        raise ValueError(f"matter axis must be one of x, y, z; got {axis!r}")
    if stokes_index not in (1, 2, 3):
        raise ValueError(f"Stokes index must be 1, 2 or 3; got {stokes_index!r}")
    lo = cfg.default_lo() if lo is None else lo
    cutoff = cfg.fock_cutoff
    if cutoff < required_cutoff(cfg.alpha_1, cfg.alpha_2, lo.beta):
        raise ConfigurationError(f"fock_cutoff {cutoff} too small for LO amplitude {lo.beta_mag:g}")

    branch = []
    for alpha in (cfg.alpha_1, cfg.alpha_2):
        u, v = _counted_modes(alpha, lo, stokes_index)
        branch.append(np.outer(fock_amplitudes(u, cutoff), fock_amplitudes(v, cutoff)))
    vecs = AXIS_EIGENVECTORS[axis]
    amp = np.stack([(vecs[k, 0].conjugate() * branch[0] + vecs[k, 1].conjugate() * branch[1]) for k in range(2)])
    prob = 0.5 * np.abs(amp) ** 2

    n = np.arange(cutoff + 1, dtype=float)
    n1, n2 = np.meshgrid(n, n, indexing="ij")
    s_j = (n2 - n1) if stokes_index == 2 else (n1 - n2)
    shape = prob.shape
    m = np.broadcast_to(OUTCOMES[:, None, None], shape)
    return prob, m, np.broadcast_to(s_j, shape), np.broadcast_to(n1 + n2, shape)


def distribution_correlator(cfg: MonteCarloConfig, axis: str, stokes_index: int, lo: LOConfig | None = None) -> float:
    """Expected value of the ratio estimator from the exact outcome law (no sampling)."""
    prob, m, s_j, s_0 = outcome_distribution(cfg, axis, stokes_index, lo)
    return float(np.sum(prob * m * s_j) / np.sum(prob * s_0))


def _sample_block(cdf: np.ndarray, values: tuple, seed: int, block: int, size: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0, block)))
    idx = np.searchsorted(cdf, rng.random(size) * cdf[-1], side="right")
    idx = np.minimum(idx, cdf.size - 1)
    m, s_j, s_0 = values
    return m[idx] * s_j[idx], s_0[idx]


def mc_correlator(
    cfg: MonteCarloConfig,
    axis: str,
    stokes_index: int,
    lo: LOConfig | None = None,
    workers: int = 1,
) -> MCEstimate:
    """Sample ``cfg.n_trials`` joint outcomes and form ``sum(m S_j) / sum(S_0)``.

    The standard error comes from a bootstrap over trials.
    """
    prob, m, s_j, s_0 = outcome_distribution(cfg, axis, stokes_index, lo)
    tail = 1.0 - float(prob.sum())
    if tail > TAIL_TOLERANCE:
        raise ConfigurationError(f"probability mass {tail:.3g} lost beyond fock_cutoff {cfg.fock_cutoff}")
    cdf = np.cumsum(prob.ravel())
    values = (m.ravel(), s_j.ravel(), s_0.ravel())

    n_blocks = -(-cfg.n_trials // BLOCK_SIZE)
    sizes = [min(BLOCK_SIZE, cfg.n_trials - b * BLOCK_SIZE) for b in range(n_blocks)]

    def job(b):
        return _sample_block(cdf, values, cfg.seed, b, sizes[b])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(n_blocks)))
    else:
        parts = [job(b) for b in range(n_blocks)]
    num = np.concatenate([p[0] for p in parts])
    den = np.concatenate([p[1] for p in parts])
    den_total = den.sum()
    if den_total == 0:
        raise ConfigurationError("no photons recorded; amplitudes too small for the ratio estimator")
    estimate = float(num.sum() / den_total)

    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(1,)))
    boot = np.empty(cfg.n_bootstrap)
    for k in range(cfg.n_bootstrap):
        idx = rng.integers(0, num.size, num.size)
        boot[k] = num[idx].sum() / den[idx].sum()
    return MCEstimate(estimate, float(boot.std(ddof=1)), cfg.n_trials, tail)
