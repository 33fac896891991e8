"""Scattering matrix tests: point values, symmetries, and closed forms."""

import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from conftest import random_probe, random_system
from plaquette import (
    Basis,
    SingularMatrix,
    analytical_scattering,
    build_dynamics_matrix,
    linearized_direct,
    optimal_preset,
    scattering_matrix,
    to_normal_mode,
    verify_closed_forms,
)


def test_single_mode_allpass_at_resonance():
    # one lossless optical mode probed on resonance reflects everything
    lin = linearized_direct(2.0, 2.0, 5.0, 5.0, 0, 0, 0, 0, 0, 0, 3.0, 0.0, 1.0, 0.0)
    result = scattering_matrix(build_dynamics_matrix(lin), 2.0)
    assert result.u[0, 0] == pytest.approx(1.0, rel=1e-12)
    assert result.prob(1, 1) == pytest.approx(1.0, rel=1e-12)


def test_router_preset_asymmetric_pattern(router_preset):
    d = build_dynamics_matrix(router_preset)
    low = scattering_matrix(d, -10.0)
    assert low.prob(1, 2) > 0.98
    for i, j in ((3, 1), (4, 1), (2, 3), (2, 4)):
        assert 0.45 <= low.prob(i, j) <= 0.55
    for i, j in ((2, 1), (1, 3), (1, 4), (3, 2), (4, 2)):
        assert low.prob(i, j) <= 0.01
    # mirrored roles at the upper collective resonance
    high = scattering_matrix(d, +10.0)
    assert high.prob(2, 1) > 0.98
    for i, j in ((1, 3), (1, 4), (3, 2), (4, 2)):
        assert 0.45 <= high.prob(i, j) <= 0.55
    for i, j in ((1, 2), (3, 1), (4, 1), (2, 3), (2, 4)):
        assert high.prob(i, j) <= 0.01


def test_s_equals_modulus_squared(router_preset):
    result = scattering_matrix(build_dynamics_matrix(router_preset), 3.7)
    assert_allclose(result.s, np.abs(result.u) ** 2, atol=1e-12)


def test_lossless_unitarity_randomized():
    rng = np.random.default_rng(101)
    for _ in range(40):
        lin = random_system(rng, lossless=True)
        u = scattering_matrix(build_dynamics_matrix(lin), random_probe(rng)).u
        assert np.abs(u.conj().T @ u - np.eye(4)).max() < 1e-9


def test_lossless_columns_sum_to_one(router_preset):
    rng = np.random.default_rng(7)
    for _ in range(10):
        s = scattering_matrix(build_dynamics_matrix(router_preset), rng.uniform(-30, 30)).s
        assert_allclose(s.sum(axis=0), np.ones(4), atol=1e-9)


def test_loss_makes_subunitary():
    rng = np.random.default_rng(13)
    for _ in range(40):
        lin = random_system(rng, lossless=False)
        u = scattering_matrix(build_dynamics_matrix(lin), random_probe(rng)).u
        assert np.linalg.svd(u, compute_uv=False).max() <= 1.0 + 1e-9


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), theta=st.floats(-10, 10, allow_nan=False))
def test_gauge_invariance(seed, theta):
    # only the phase difference matters: a common shift leaves S alone
    rng = np.random.default_rng(seed)
    lin = random_system(rng)
    omega = random_probe(rng)
    s0 = scattering_matrix(build_dynamics_matrix(lin), omega).s
    shifted = replace(lin, phi_1=lin.phi_1 + theta, phi_2=lin.phi_2 + theta)
    s1 = scattering_matrix(build_dynamics_matrix(shifted), omega).s
    assert np.abs(s1 - s0).max() < 1e-12


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31 - 1))
def test_flux_reversal_transposes_s(seed):
    rng = np.random.default_rng(seed)
    lin = random_system(rng)
    omega = random_probe(rng)
    s0 = scattering_matrix(build_dynamics_matrix(lin), omega).s
    reversed_ = replace(lin, phi_1=-lin.phi_1, phi_2=-lin.phi_2)
    s1 = scattering_matrix(build_dynamics_matrix(reversed_), omega).s
    assert np.abs(s1 - s0.T).max() < 1e-12


def test_reciprocity_at_trivial_flux():
    rng = np.random.default_rng(17)
    for flux in (0.0, math.pi):
        for _ in range(20):
            lin = random_system(rng)
            lin = replace(lin, phi_1=0.0, phi_2=flux)
            s = scattering_matrix(build_dynamics_matrix(lin), random_probe(rng)).s
            assert np.abs(s - s.T).max() < 1e-12


def test_frame_shift_invariance():
    rng = np.random.default_rng(23)
    lin = random_system(rng)
    d0 = build_dynamics_matrix(lin)
    for shift in (37.5, -1.0e6):
        d1 = build_dynamics_matrix(lin.shift_frame(shift))
        for _ in range(5):
            omega = random_probe(rng)
            s0 = scattering_matrix(d0, omega).s
            s1 = scattering_matrix(d1, omega - shift).s
            assert_allclose(s1, s0, rtol=1e-8, atol=1e-10)


def test_normal_basis_consistency(router_preset):
    # scattering in the collective basis equals conjugating U by the
    # external half-sum/half-difference map on the mechanical ports
    d = build_dynamics_matrix(router_preset)
    h_ext = np.eye(4)
    h_ext[2:, 2:] = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    for omega in (-10.0, -3.3, 0.0, 10.0):
        u_bare = scattering_matrix(d, omega).u
        s_normal = scattering_matrix(to_normal_mode(d), omega).s
        assert_allclose(s_normal, np.abs(h_ext @ u_bare @ h_ext.T) ** 2, atol=1e-12)


def test_normal_basis_port_labels(router_preset):
    result = scattering_matrix(to_normal_mode(build_dynamics_matrix(router_preset)), -10.0)
    assert result.ports == ("a1", "a2", "b+", "b-")
    assert result.basis is Basis.NORMAL


def test_w_matrix_matches_definition():
    rng = np.random.default_rng(31)
    lin = random_system(rng, lossless=False)
    d = build_dynamics_matrix(lin)
    omega = 1.25
    result = scattering_matrix(d, omega)
    n = d.m - 1j * omega * np.eye(4)
    expected = (
        np.diag(np.sqrt(d.gamma_e_vec)) @ np.linalg.inv(n) @ np.diag(np.sqrt(d.gamma_0_vec))
    )
    assert_allclose(result.w, expected, atol=1e-12)
    lossless = random_system(rng, lossless=True)
    r2 = scattering_matrix(build_dynamics_matrix(lossless), omega)
    assert np.abs(r2.w).max() == 0.0


def test_singular_detection_at_undamped_pole():
    lin = linearized_direct(4.0, 4.0, 9.0, 9.0, 0, 0, 0, 0, 0, 0, 0.0, 0.0, 1.0, 0.0)
    with pytest.raises(SingularMatrix):
        scattering_matrix(build_dynamics_matrix(lin), 4.0)


# --- closed forms -----------------------------------------------------------


def test_closed_form_matches_inversion_on_preset(router_preset):
    d = build_dynamics_matrix(router_preset)
    for omega in np.linspace(-30, 30, 101):
        u_num = scattering_matrix(d, omega).u
        u_ana = analytical_scattering(router_preset, omega)
        assert np.abs(u_ana - u_num).max() < 1e-10


def test_closed_form_matches_inversion_randomized():
    rng = np.random.default_rng(41)
    grid = np.linspace(-40, 40, 31)
    for _ in range(15):
        lin = random_system(rng)
        report = verify_closed_forms(lin, grid, tol=1e-10)
        assert report.max_dev_corrected.max() < 1e-10
        assert report.flagged_corrected == ()


def test_uncorrected_forms_deviate_iff_detuning_mismatch():
    base = optimal_preset(J_c=50.0, gamma=1.0, J_m=4.0, flux=1.1)
    grid = np.linspace(-12, 12, 41)
    # Delta_1 != omega_1 only: the U11 transcription slip shows up alone
    lin = replace(base, Delta_1=3.0)
    report = verify_closed_forms(lin, grid, tol=1e-10)
    assert report.flagged_corrected == ()
    assert report.flagged_printed == ((1, 1),)
    # Delta_2 != omega_2 only: the U32 slip
    lin = replace(base, Delta_2=-2.0)
    report = verify_closed_forms(lin, grid, tol=1e-10)
    assert report.flagged_printed == ((3, 2),)
    # matched detunings: both variants coincide with the inversion
    report = verify_closed_forms(base, grid, tol=1e-10)
    assert report.flagged_printed == ()
    assert report.max_dev_printed.max() < 1e-10


def test_closed_form_zero_coupling_determinant_is_diagonal_product():
    lin = linearized_direct(1.0, -2.0, 3.0, 4.0, 0, 0, 0, 0, 0, 0, 2.0, 0.5, 0.3, 0.1)
    omega = 0.85
    u = analytical_scattering(lin, omega)
    # with no couplings each port is an independent one-pole response
    k2, g2 = lin.kappa / 2, lin.gamma / 2
    expected_diag = [
        lin.kappa_e / (k2 + 1j * (lin.Delta_1 - omega)) - 1,
        lin.kappa_e / (k2 + 1j * (lin.Delta_2 - omega)) - 1,
        lin.gamma_e / (g2 + 1j * (lin.omega_1 - omega)) - 1,
        lin.gamma_e / (g2 + 1j * (lin.omega_2 - omega)) - 1,
    ]
    assert_allclose(np.diag(u), expected_diag, atol=1e-12)
    off = u - np.diag(np.diag(u))
    assert np.abs(off).max() == 0.0


def test_closed_form_reduces_to_optical_splitter_at_zero_g():
    # with G = 0 the a2 -> a1 element is the bare two-mode splitter form
    lin = linearized_direct(0.5, -0.3, 2.0, 3.0, 0.0, 0.0, 0.0, 0.0, 1.5, 0.8, 2.0, 0.0, 0.4, 0.0)
    for omega in (-2.0, 0.1, 2.5):
        k2, g2 = lin.kappa / 2, lin.gamma / 2
        d1 = k2 + 1j * (lin.Delta_1 - omega)
        d2 = k2 + 1j * (lin.Delta_2 - omega)
        m1 = g2 + 1j * (lin.omega_1 - omega)
        m2 = g2 + 1j * (lin.omega_2 - omega)
        z = (d1 * d2 + lin.J_c**2) * (m1 * m2 + lin.J_m**2)
        expected = -lin.kappa_e * 1j * lin.J_c * (m1 * m2 + lin.J_m**2) / z
        u = analytical_scattering(lin, omega)
        assert u[0, 1] == pytest.approx(expected, rel=1e-12)
        u_num = scattering_matrix(build_dynamics_matrix(lin), omega).u
        assert u[0, 1] == pytest.approx(u_num[0, 1], rel=1e-10)


def test_verify_closed_forms_validation(router_preset):
    with pytest.raises(Exception):
        verify_closed_forms(router_preset, [], tol=1e-10)
    report = verify_closed_forms(router_preset, [0.0, 1.0], tol=1e-10)
    assert "closed-form check" in report.summary()
    assert "closed-form check (as-printed)" in report.summary(as_printed=True)
