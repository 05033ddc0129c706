import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gravwit import DomainError, JointStateParams
from gravwit.states import density_matrix
from gravwit.stokes import (
    CORRELATOR_KEYS,
    LOConfig,
    beam_splitter_outputs,
    correlators_closed_form,
    correlators_exact,
    lo_phase_scan,
    measured_witness,
    measured_witness_at,
    measured_witness_closed,
    optimal_lo_phases,
    stokes_means,
    surviving_correlators,
    visibility,
)
from gravwit.witness import PAULI, alpha_prime, pauli_decompose, witness_operator

phases = st.floats(-math.pi, math.pi)
amps = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("a, b, expected", [(2, 2, 1.0), (1, 0, 0.0), (1, 3, 0.6)])
def test_visibility(a, b, expected):
    assert visibility(a, b) == pytest.approx(expected)


def test_visibility_both_zero():
    with pytest.raises(DomainError):
        visibility(0, 0)


def test_beam_splitter_examples():
    b = 1.3 - 0.2j
    a1, a2 = beam_splitter_outputs(0, b)
    assert a1 == a2 == pytest.approx(b / math.sqrt(2))
    assert beam_splitter_outputs(0.7, 0.7)[1] == 0
    a1, a2 = beam_splitter_outputs(1, 1j, math.pi / 2)
    assert a1 == pytest.approx(1j * math.sqrt(2))
    assert a2 == pytest.approx(0, abs=1e-15)


@given(amps, amps, phases)
def test_beam_splitter_conserves_energy(a, b, theta):
    a1, a2 = beam_splitter_outputs(a, b, theta)
    assert abs(a1) ** 2 + abs(a2) ** 2 == pytest.approx(abs(a) ** 2 + abs(b) ** 2, rel=1e-12, abs=1e-12)


def test_stokes_means_examples():
    assert stokes_means(1.5, 0) == pytest.approx((2.25, 0, -2.25, 0))
    assert stokes_means(1, 1, 0) == pytest.approx((2, 2, 0, 0))


@given(amps, amps, phases)
def test_stokes_quarter_wave_identity(a, b, theta):
    s_shift = stokes_means(a, b, theta + math.pi / 2)
    s = stokes_means(a, b, theta)
    assert s_shift[1] == pytest.approx(s[3], abs=1e-9 * (1 + abs(a) * abs(b)))
    # S1 is the count difference of the splitter outputs
    a1, a2 = beam_splitter_outputs(a, b, theta)
    assert s[1] == pytest.approx(abs(a1) ** 2 - abs(a2) ** 2, abs=1e-9 * (1 + abs(a) * abs(b)))
    # coherent-state Stokes vector is fully polarised
    assert s[0] ** 2 == pytest.approx(s[1] ** 2 + s[2] ** 2 + s[3] ** 2, rel=1e-9, abs=1e-12)


@given(st.floats(0.05, 3), st.floats(-0.5, 0.5), phases, st.floats(0.1, 5), phases)
def test_closed_form_quadrature_identity_is_exact(alpha, dphi, phi_beta, beta, theta):
    sp = JointStateParams.from_phases(alpha, 0.3, 0.3 + dphi)
    lo3 = LOConfig(beta, phi_beta, theta)
    shifted = LOConfig(beta, phi_beta, theta + math.pi / 2)
    c3 = correlators_closed_form(sp, lo3, lo3)
    c1 = correlators_closed_form(sp, shifted, shifted)
    for axis in "xyz":
        assert c1.get(axis, 1) == c3.get(axis, 3)


def test_optimal_phases_reduce_to_surviving_set():
    sp = JointStateParams(0.9 * cmath.exp(0.4j))
    p1, p3 = optimal_lo_phases(sp)
    corr = correlators_closed_form(sp, LOConfig(1, p1), LOConfig(1, p3))
    ref = surviving_correlators(0.9, 0.4)
    for axis, j in CORRELATOR_KEYS:
        assert corr.get(axis, j) == pytest.approx(ref.get(axis, j), abs=1e-15)
    assert corr.xS1 == pytest.approx(0.9 * math.cos(0.4))
    assert corr.yS3 == pytest.approx(-0.9 * math.sin(0.4))


def test_closed_form_matches_exact_where_expected():
    a1, a2 = 3.0 + 0j, cmath.rect(3.0, 0.2)
    sp = JointStateParams(
        cmath.exp(-0.5 * abs(a1) ** 2 - 0.5 * abs(a2) ** 2 + a1.conjugate() * a2), 0.0, 0.2, 3.0
    )
    for phi_b in (0.0, 0.7, -2.0):
        lo1, lo3 = LOConfig(3, phi_b), LOConfig(3, phi_b - 1.1)
        cf = correlators_closed_form(sp, lo1, lo3)
        ex = correlators_exact(a1, a2, lo1, lo3)
        for axis, j in CORRELATOR_KEYS:
            if axis == "z":
                # the closed forms carry an extra |gamma| on the sigma_z rows
                assert cf.get(axis, j) == pytest.approx(sp.gamma_mag * ex.get(axis, j), abs=1e-12)
            else:
                assert cf.get(axis, j) == pytest.approx(ex.get(axis, j), abs=1e-12)


def test_separable_witness_is_zero():
    corr = surviving_correlators(1.0, 0.0)
    terms = measured_witness(corr, 1.0, 0.0)
    assert terms.T0 == pytest.approx(2)
    assert terms.TS1 == pytest.approx(-2)
    assert terms.TS2 == pytest.approx(0) and terms.TS3 == pytest.approx(0)
    assert terms.total == pytest.approx(0, abs=1e-15)


def test_measured_witness_sector_split():
    a = alpha_prime(0.9)
    n = 4 * (1 + a * a)
    t0 = 0.25
    t1 = 2 * 0.9 * a / n
    t3 = 0.9 * (a * a - 1) / n
    assert (t0, t1, t3) == pytest.approx((0.25, 0.203, 0.098), abs=1e-3)
    corr = surviving_correlators(0.9, math.pi / 2)
    assert measured_witness(corr, a, math.pi / 2).total == pytest.approx(measured_witness_closed(0.9, 1.0), abs=1e-14)


@pytest.mark.parametrize(
    "g, s, expected, tol",
    [(1.0, 0.3, 0.0, 1e-15), (0.9, 1.0, -0.0506, 5e-5), (0.75, 1.0, -0.015, 5e-4), (0.9, 1.0, -0.051, 1e-3)],
)
def test_measured_witness_closed_values(g, s, expected, tol):
    assert measured_witness_closed(g, s) == pytest.approx(expected, abs=tol)


@given(st.floats(0.02, 1), phases)
def test_measured_witness_assembly_matches_closed_form(g, phi):
    corr = surviving_correlators(g, phi)
    a = alpha_prime(g)
    total = measured_witness(corr, a, phi).total
    assert total == pytest.approx(measured_witness_closed(g, math.sin(phi)), abs=1e-12)


def test_measured_witness_sign_regions():
    gs = np.linspace(0.711, 0.999, 60)
    assert all(measured_witness_closed(g, 1.0) < 0 for g in gs)
    assert all(measured_witness_closed(g, 1.0) >= 0 for g in np.linspace(0.05, 0.70, 60))
    assert measured_witness_closed(1 - 1e-12, 1.0) == pytest.approx(0, abs=1e-5)


def test_measured_witness_rejects_bad_alpha_prime():
    with pytest.raises(DomainError):
        measured_witness(surviving_correlators(0.9, 0.1), 0.5, 0.1)


def test_lo_phase_scan_periodic_and_optimal():
    sp = JointStateParams(0.9 * cmath.exp(1.2j), 0.1, 0.1)
    x, v = lo_phase_scan(sp)
    assert 0 <= x < 2 * math.pi
    assert v <= measured_witness_at(sp, sp.mean_phase) + 1e-12
    assert measured_witness_at(sp, x + 2 * math.pi) == pytest.approx(v, abs=1e-12)
    shifted = JointStateParams(sp.gamma, sp.phi_l + 2 * math.pi, sp.phi_r + 2 * math.pi)
    assert lo_phase_scan(shifted)[1] == pytest.approx(v, abs=1e-10)


def test_witness_coefficients_use_mapped_paulis():
    # sigma^(e)_z <-> S'_1, sigma^(e)_x <-> S'_2, sigma^(e)_y <-> S'_3
    g = 0.85 * cmath.exp(0.3j)
    dec = pauli_decompose(witness_operator(g))
    a = alpha_prime(0.85)
    n = 4 * (1 + a * a)
    phi = 0.3
    assert dec["zz"] * n == pytest.approx(1 - a * a)
    assert dec["xz"] * n == pytest.approx(-2 * a * math.cos(phi))
    assert np.allclose(PAULI[3], np.diag([1, -1]))
    assert np.trace(witness_operator(g) @ density_matrix(g)).real < 0
