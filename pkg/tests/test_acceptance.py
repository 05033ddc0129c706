"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line; the lines are printed in the
pytest terminal summary and also when this file is run directly with
``python tests/test_acceptance.py``.
"""

import cmath
import math
import sys
import time
from decimal import Decimal, getcontext

import numpy as np
import pytest

from gravwit.core import ExperimentConfig, joint_state_params, overlap_gamma, phase_difference
from gravwit.linalg import hermitian_eigs
from gravwit.noise import critical_noise, noisy_pt_spectrum, noisy_state
from gravwit.separability import full_witness_on_density, sample_separable, witness_on_separable
from gravwit.states import density_matrix
from gravwit.stokes import CORRELATOR_KEYS, LOConfig, correlators_closed_form, measured_witness_closed
from gravwit.sweeps import SweepSpec, run_sweep
from gravwit.witness import (
    negativity_closed_form,
    partial_transpose_matter,
    pauli_decompose,
    witness_coefficients,
    witness_operator,
)

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from conftest import load_reference_overlaps, printed_tolerance  # noqa: E402

RESULTS: dict = {}


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} ({detail})"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_1_table_reproduction():
    table = load_reference_overlaps()
    t0 = time.perf_counter()
    res = run_sweep(SweepSpec("gamma_table"))
    elapsed = time.perf_counter() - t0
    worst, bad = 0.0, []
    for row in res.rows:
        printed = table[(row["mass_kg"], row["sep_um"])]
        err = abs(row["gamma_mag"] - float(printed))
        worst = max(worst, err / printed_tolerance(printed))
        if err > printed_tolerance(printed):
            bad.append((row["mass_kg"], row["sep_um"], printed, row["gamma_mag"]))
    ok = len(res.rows) == 44 and not bad and elapsed < 1.0
    record(1, "overlap table, 44 cells at printed precision", ok,
           f"{44 - len(bad)}/44 cells, worst error {worst:.2f} of the rounding tolerance, {elapsed * 1e3:.1f} ms")


def test_criterion_2_negativity_closed_vs_numeric():
    rng = np.random.default_rng(20240601)
    gammas = rng.uniform(0, 1, 1000)
    phases = rng.uniform(-np.pi, np.pi, 1000)
    t0 = time.perf_counter()
    worst = 0.0
    for g, p in zip(gammas, phases):
        lam = hermitian_eigs(partial_transpose_matter(density_matrix(cmath.rect(g, p)))).eigenvalues[0]
        worst = max(worst, abs(lam - negativity_closed_form(g)))
    elapsed = time.perf_counter() - t0
    record(2, "closed-form vs numeric negativity", worst < 1e-10 and elapsed < 1.0,
           f"max error {worst:.2e}, {elapsed:.3f} s for 1000 states")


def test_criterion_3_witness_landmarks():
    w09 = measured_witness_closed(0.9, 1.0)
    curve = run_sweep(SweepSpec("witness_vs_gamma"))
    g_min, w_min = curve.summary["min_gamma_mag"], curve.summary["min_witness"]
    w1 = measured_witness_closed(1.0, 1.0)
    crossing = curve.summary["zero_crossing"]
    checks = [
        abs(w09 + 0.051) <= 1e-3,
        abs(g_min - 0.924) <= 5e-3,
        abs(w_min + 0.052) <= 1e-3,
        abs(w1) <= 1e-12,
        abs(crossing - 0.705) <= 1e-2,
    ]
    record(3, "measured witness landmarks", all(checks),
           f"W(0.9)={w09:.5f}, min {w_min:.5f} at {g_min:.5f}, W(1)={w1:.1e}, zero at {crossing:.5f}")


def test_criterion_4_pauli_reconstruction():
    rng = np.random.default_rng(7)
    worst_rec = worst_coef = 0.0
    for _ in range(100):
        g = cmath.rect(rng.uniform(1e-3, 1.0), rng.uniform(-np.pi, np.pi))
        w = witness_operator(g)
        closed = witness_coefficients(g)
        worst_rec = max(worst_rec, np.abs(closed.recompose() - w).max())
        worst_coef = max(worst_coef, np.abs(pauli_decompose(w).coeffs - closed.coeffs).max())
    record(4, "Pauli reconstruction of the witness", worst_rec < 1e-12 and worst_coef < 1e-12,
           f"recompose error {worst_rec:.1e}, coefficient error {worst_coef:.1e}")


@pytest.mark.slow
def test_criterion_5_separability_suite():
    t0 = time.perf_counter()
    ensembles = [sample_separable(seed) for seed in range(10_000)]
    stokes_min = min(witness_on_separable(e) for e in ensembles)
    states = [e.density_matrix() for e in ensembles]
    grid = [cmath.rect(m, 0.7 * k) for k, m in enumerate(np.linspace(0.1, 0.99, 10))]
    full_min = math.inf
    protocol_ok = True
    for g in grid:
        full_min = min(full_min, min(full_witness_on_density(r, g) for r in states))
        own = full_witness_on_density(density_matrix(g), g)
        protocol_ok &= own < 0 and abs(own - negativity_closed_form(abs(g))) < 1e-12
    elapsed = time.perf_counter() - t0
    ok = stokes_min >= -1e-12 and full_min >= -1e-12 and protocol_ok and elapsed < 30
    record(5, "witness non-negative on separable states", ok,
           f"Stokes-level min {stokes_min:.3e}, operator-level min {full_min:.3e}, "
           f"protocol state negative={protocol_ok}, {elapsed:.1f} s")


def _numeric_threshold(g: float) -> float:
    def lowest(v):
        return hermitian_eigs(partial_transpose_matter(noisy_state(density_matrix(g), v))).eigenvalues[0]

    lo, hi = 0.0, 1.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if lowest(mid) < 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_criterion_6_noise_threshold():
    exact_third = critical_noise(0.0) == 1 / 3
    gammas = np.linspace(0.0, 0.99, 100)
    worst_v = max(abs(_numeric_threshold(g) - critical_noise(g)) for g in gammas)
    rng = np.random.default_rng(3)
    worst_spec = 0.0
    for g, v in zip(gammas, rng.uniform(0, 1, 100)):
        numeric = hermitian_eigs(partial_transpose_matter(noisy_state(density_matrix(g), v))).eigenvalues
        worst_spec = max(worst_spec, np.abs(np.sort(noisy_pt_spectrum(g, v)) - numeric).max())
    ok = exact_third and worst_v < 1e-9 and worst_spec < 1e-10
    record(6, "isotropic-noise threshold", ok,
           f"v_c(0)==1/3: {exact_third}, bisection error {worst_v:.1e}, spectrum error {worst_spec:.1e}")


@pytest.mark.slow
def test_criterion_7_monte_carlo_agreement():
    t0 = time.perf_counter()
    res = run_sweep(SweepSpec("monte_carlo_check", seed=2024, options={"n_trials": 100_000}))
    elapsed = time.perf_counter() - t0
    max_z = max(abs(r["z_score"]) for r in res.rows)

    # quarter-wave identity on the closed-form path
    sp = joint_state_params(ExperimentConfig.from_lab_units(10, 60))
    identity_ok = True
    for theta in np.linspace(-3, 3, 13):
        base = LOConfig(1.0, 0.4, theta)
        shifted = LOConfig(1.0, 0.4, theta + math.pi / 2)
        c3 = correlators_closed_form(sp, base, base)
        c1 = correlators_closed_form(sp, shifted, shifted)
        identity_ok &= all(c1.get(a, 1) == c3.get(a, 3) for a in "xyz")
    ok = len(res.rows) == len(CORRELATOR_KEYS) and max_z < 4 and identity_ok and elapsed < 120
    record(7, "Monte Carlo correlators vs closed forms", ok,
           f"max |z| = {max_z:.2f} over {len(res.rows)} correlators, S1(t+pi/2)==S3(t): {identity_ok}, "
           f"{elapsed:.1f} s")


def _gamma_high_precision(cfg: ExperimentConfig) -> Decimal:
    # independent oracle: 1 - cos(x) by its Taylor series in 50-digit decimal arithmetic
    getcontext().prec = 50
    x = Decimal(phase_difference(cfg))
    term, total, k = x * x / 2, Decimal(0), 1
    while abs(term) > Decimal(10) ** -80:
        total += term
        term = -term * x * x / ((2 * k + 1) * (2 * k + 2))
        k += 1
    return (-(Decimal(cfg.alpha_mag) ** 2) * total).exp()


def test_criterion_8_formula_level_scope():
    # the physical-scale run itself cannot be reproduced; its formulas can, so
    # check the full-scale evaluation against a high-precision oracle
    worst = 0.0
    for m in (0.1, 1, 5, 10):
        for s in (1, 37, 100):
            cfg = ExperimentConfig.from_lab_units(m, s)
            g = abs(overlap_gamma(cfg.alpha_mag, phase_difference(cfg)))
            worst = max(worst, abs(g - float(_gamma_high_precision(cfg))))
    record(8, "physical-scale formulas evaluated without cancellation", worst < 1e-12,
           f"max deviation from 50-digit oracle {worst:.1e}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    sys.exit(0 if all(line.startswith("[PASS]") for line in RESULTS.values()) else 1)
