"""Stokes-operator measurement chain and the measured witness.

The signal mode ``a`` is mixed with a local oscillator ``b`` on a balanced
beam splitter, ``a1 = (b + e^{i theta} a)/sqrt 2``, ``a2 = (b - e^{i theta} a)/sqrt 2``.
Photon-number sums and differences of the outputs give the Stokes
observables; normalised by the total flux they stand in for the Pauli
expectations of the effective photon qubit:

    sigma_z^(e) -> S'_1,   sigma_x^(e) -> S'_2,   sigma_y^(e) -> S'_3.

Correlators are measured one per run, each with its own LO phase.  A
non-zero ``theta_lo`` shifts the effective LO phase to ``phi_beta - theta_lo``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from ._validation import DomainError, check_unit_interval
from .core import JointStateParams
from .witness import alpha_prime

__all__ = [
    "LOConfig",
    "CorrelatorSet",
    "WitnessTerms",
    "CORRELATOR_KEYS",
    "visibility",
    "beam_splitter_outputs",
    "stokes_means",
    "optimal_lo_phases",
    "correlators_closed_form",
    "correlators_exact",
    "surviving_correlators",
    "measured_witness",
    "measured_witness_closed",
    "measured_witness_at",
    "lo_phase_scan",
]

# (matter axis, Stokes index) pairs that enter the measured witness
CORRELATOR_KEYS = (("z", 1), ("z", 3), ("x", 1), ("x", 2), ("x", 3), ("y", 1), ("y", 2), ("y", 3))


@dataclass(frozen=True)
class LOConfig:
    beta_mag: float
    phi_beta: float = 0.0
    theta_lo: float = 0.0

    def __post_init__(self):
        if not self.beta_mag >= 0:
            raise DomainError(f"beta_mag must be non-negative, got {self.beta_mag!r}")

    @property
    def beta(self) -> complex:
        return cmath.rect(self.beta_mag, self.phi_beta)

    @property
    def effective_phase(self) -> float:
        return self.phi_beta - self.theta_lo

    def quadrature(self) -> "LOConfig":
        """Same LO with a quarter-wave added to the splitter phase; its S_1 is this LO's S_3."""
        return LOConfig(self.beta_mag, self.phi_beta, self.theta_lo + math.pi / 2)


@dataclass(frozen=True)
class CorrelatorSet:
    """Spin-Stokes correlators ``<sigma_i (x) S'_j>`` plus the run settings."""

    zS1: float
    zS3: float
    xS1: float
    xS2: float
    xS3: float
    yS1: float
    yS2: float
    yS3: float
    visibility: float = 1.0
    phi_beta_1: float = 0.0
    phi_beta_3: float = 0.0

    def get(self, axis: str, index: int) -> float:
        if index == 0:
            return 1.0 if axis == "0" else 0.0
        return getattr(self, f"{axis}S{index}", 0.0)

    def as_dict(self) -> dict:
        return asdict(self)


class WitnessTerms(NamedTuple):
    total: float
    T0: float
    TS1: float
    TS2: float
    TS3: float


def visibility(alpha_mag: float, beta_mag: float) -> float:
    denom = alpha_mag * alpha_mag + beta_mag * beta_mag
    if denom == 0:
        raise DomainError("visibility undefined when both amplitudes vanish")
    return 2.0 * alpha_mag * beta_mag / denom


def beam_splitter_outputs(a: complex, b: complex, theta_lo: float = 0.0) -> tuple[complex, complex]:
    shifted = cmath.exp(1j * theta_lo) * a
    return (b + shifted) / math.sqrt(2.0), (b - shifted) / math.sqrt(2.0)


def stokes_means(a: complex, b: complex, theta_lo: float = 0.0) -> tuple[float, float, float, float]:
    """Coherent-state means ``(S0, S1, S2, S3)`` for signal ``a`` and LO ``b``."""
    coh = b.conjugate() * a * cmath.exp(1j * theta_lo)
    na, nb = abs(a) ** 2, abs(b) ** 2
    return na + nb, 2.0 * coh.real, nb - na, -2.0 * coh.imag


def optimal_lo_phases(sp: JointStateParams) -> tuple[float, float]:
    """LO phases for the in-phase (S'_1) and quadrature (S'_3) runs."""
    return sp.mean_phase, sp.mean_phase - math.pi / 2


def _run_visibility(sp: JointStateParams, lo: LOConfig) -> float:
    if sp.alpha_mag is None:
        return 1.0
    return visibility(sp.alpha_mag, lo.beta_mag)


def correlators_closed_form(sp: JointStateParams, lo1: LOConfig, lo3: LOConfig) -> CorrelatorSet:
    """Large-amplitude correlator formulas at the run phases of ``lo1`` / ``lo3``.

    ``lo1`` sets the S'_1 run (and the S'_2 run, which bypasses the splitter),
    ``lo3`` the S'_3 run.  Without ``sp.alpha_mag`` the fields are taken as
    balanced (visibility 1).
    """
    g = sp.gamma_mag
    phi = sp.arg_gamma
    half = 0.5 * sp.delta_phi
    sh, cs, ss = math.sin(half), math.cos(phi + half), math.sin(phi + half)

    def s1_row(lo: LOConfig) -> tuple[float, float, float]:
        d = lo.effective_phase - sp.mean_phase
        gv = g * _run_visibility(sp, lo)
        return -gv * sh * math.sin(d), gv * cs * math.cos(d), gv * ss * math.cos(d)

    z1, x1, y1 = s1_row(lo1)
    # S_3 is S_1 behind an extra quarter-wave, so the identity holds bit for bit
    z3, x3, y3 = s1_row(lo3.quadrature())
    v1 = _run_visibility(sp, lo1)
    return CorrelatorSet(
        zS1=z1,
        zS3=z3,
        xS1=x1,
        xS2=g * v1 * ss * sh,
        xS3=x3,
        yS1=y1,
        yS2=-g * v1 * sh * cs,
        yS3=y3,
        visibility=v1,
        phi_beta_1=lo1.phi_beta,
        phi_beta_3=lo3.phi_beta,
    )


def correlators_exact(alpha_1: complex, alpha_2: complex, lo1: LOConfig, lo3: LOConfig) -> CorrelatorSet:
    """Exact correlators for the state ``(|0, alpha_1> + |1, alpha_2>)/sqrt 2`` at finite amplitude.

    Uses the ratio of expectations ``<sigma (x) S_j> / <S_0>``.  Differs from
    :func:`correlators_closed_form` in the sigma_z rows (no ``|gamma|`` factor)
    and, when ``|alpha| != |beta|``, in the S_2 rows.
    """
    overlap = cmath.exp(-0.5 * abs(alpha_1) ** 2 - 0.5 * abs(alpha_2) ** 2 + alpha_1.conjugate() * alpha_2)

    def run(lo: LOConfig, index: int) -> dict:
        b = cmath.rect(lo.beta_mag, lo.effective_phase)
        nb = abs(b) ** 2
        if index == 2:
            diag = [nb - abs(alpha_1) ** 2, nb - abs(alpha_2) ** 2]
            cross = overlap * (nb - alpha_1.conjugate() * alpha_2)
        else:
            # <alpha_s, b| S_1 | alpha_t, b> / <alpha_s|alpha_t>
            diag = [2 * (b.conjugate() * al).real for al in (alpha_1, alpha_2)]
            cross = overlap * (b.conjugate() * alpha_2 + alpha_1.conjugate() * b)
        s0 = 0.5 * (abs(alpha_1) ** 2 + abs(alpha_2) ** 2) + nb
        return {"z": 0.5 * (diag[0] - diag[1]) / s0, "x": cross.real / s0, "y": cross.imag / s0}

    r1, r2, r3 = run(lo1, 1), run(lo1, 2), run(lo3.quadrature(), 1)
    alpha_mag = math.sqrt(0.5 * (abs(alpha_1) ** 2 + abs(alpha_2) ** 2))
    return CorrelatorSet(
        zS1=r1["z"], zS3=r3["z"], xS1=r1["x"], xS2=r2["x"], xS3=r3["x"],
        yS1=r1["y"], yS2=r2["y"], yS3=r3["y"],
        visibility=visibility(alpha_mag, lo1.beta_mag),
        phi_beta_1=lo1.phi_beta,
        phi_beta_3=lo3.phi_beta,
    )


def surviving_correlators(gamma_mag: float, phi: float) -> CorrelatorSet:
    """Correlators left at optimal LO phases, unit visibility and vanishing ``dphi``."""
    g = gamma_mag
    return CorrelatorSet(
        zS1=0.0, zS3=0.0,
        xS1=g * math.cos(phi), xS2=0.0, xS3=-g * math.cos(phi),
        yS1=g * math.sin(phi), yS2=0.0, yS3=-g * math.sin(phi),
        phi_beta_3=-math.pi / 2,
    )


def measured_witness(corr: CorrelatorSet, alpha_prime: float, phi: float) -> WitnessTerms:
    """Witness assembled sector by sector from measured correlators.

    ``<sigma_0 (x) S'_0>`` is 1 by construction of the normalised estimator.
    """
    if not alpha_prime >= 1.0 - 1e-12:
        raise DomainError(f"alpha' must be >= 1, got {alpha_prime!r}")
    a = alpha_prime
    a2 = a * a
    c, s = math.cos(phi), math.sin(phi)
    c2, s2 = math.cos(2 * phi), math.sin(2 * phi)
    t0 = 1.0 + a2
    ts1 = (1 - a2) * corr.zS1 - 2 * a * (c * corr.xS1 + s * corr.yS1)
    ts2 = (c2 - a2) * corr.xS2 + s2 * corr.yS2
    ts3 = (c2 + a2) * corr.yS3 - s2 * corr.xS3 - 2 * a * s * corr.zS3
    total = (t0 + ts1 + ts2 + ts3) / (4.0 * (1.0 + a2))
    return WitnessTerms(total, t0, ts1, ts2, ts3)


def measured_witness_closed(gamma_mag: float, sin_phi: float) -> float:
    """Measured witness at optimal LO phases as a function of ``|gamma|`` and ``sin(phi)``."""
    g = check_unit_interval(gamma_mag, "gamma_mag")
    sin_phi = check_unit_interval(sin_phi, "sin_phi", lo=-1.0)
    a = alpha_prime(g)
    a2 = a * a
    return ((1 + a2) - 2 * g * a + g * (1 - a2) * sin_phi) / (4 * (1 + a2))


def measured_witness_at(sp: JointStateParams, phi_beta: float, beta_mag: float | None = None) -> float:
    """Measured witness with the S'_1 run at ``phi_beta`` and the S'_3 run in quadrature."""
    if beta_mag is None:
        # balanced homodyne by default
        beta_mag = sp.alpha_mag if sp.alpha_mag else 1.0
    lo1 = LOConfig(beta_mag, phi_beta)
    lo3 = LOConfig(beta_mag, phi_beta - math.pi / 2)
    corr = correlators_closed_form(sp, lo1, lo3)
    return measured_witness(corr, alpha_prime(min(sp.gamma_mag, 1.0)), sp.arg_gamma).total


def lo_phase_scan(sp: JointStateParams, grid_size: int = 64, tol: float = 1e-8) -> tuple[float, float]:
    """Minimise the measured witness over the LO phase.

    A uniform grid on ``[0, 2 pi)`` locates the basin, then a bounded
    golden-section/Brent search refines it to ``tol`` in phase.
    Returns ``(phi_beta, witness)`` with ``phi_beta`` reduced to ``[0, 2 pi)``.
    """
    if grid_size < 8:
        raise DomainError("grid_size must be at least 8")
    step = 2 * math.pi / grid_size
    grid = np.arange(grid_size) * step
    values = np.array([measured_witness_at(sp, x) for x in grid])
    k = int(np.argmin(values))
    res = minimize_scalar(
        lambda x: measured_witness_at(sp, x),
        bounds=(grid[k] - step, grid[k] + step),
        method="bounded",
        options={"xatol": tol},
    )
    best_x, best_v = float(res.x), float(res.fun)
    if values[k] < best_v:
        best_x, best_v = float(grid[k]), float(values[k])
    return best_x % (2 * math.pi), best_v
