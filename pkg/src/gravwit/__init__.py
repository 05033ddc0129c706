"""Gravitationally induced matter-photon entanglement: states, witness, Stokes measurement and sweeps."""

from ._validation import ConfigurationError, DomainError, SingularityError
from .core import (
    DEFAULT_CONSTANTS,
    ExperimentConfig,
    JointStateParams,
    PhysicalConstants,
    joint_state_params,
    linear_entropy,
    overlap_gamma,
    phase_difference,
)
from .linalg import EigenSystem, hermitian_eigs
from .montecarlo import MCEstimate, MonteCarloConfig, mc_correlator
from .noise import NoiseAnalysis, analyze_noise, critical_noise, gamma_from_vcrit
from .separability import SeparableEnsemble, sample_separable, witness_on_separable
from .states import density_matrix, joint_state
from .stokes import CorrelatorSet, LOConfig, correlators_closed_form, measured_witness, measured_witness_closed
from .sweeps import SweepResult, SweepSpec, run_sweep
from .witness import (
    WitnessDecomposition,
    alpha_prime,
    exact_witness_expectation,
    negativity_closed_form,
    partial_transpose_matter,
    pauli_decompose,
    projector_negative,
    witness_coefficients,
    witness_operator,
)

__version__ = "0.1.0"
