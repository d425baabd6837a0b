"""
Tests for the impenetrable-wall limit
"""

import math

import numpy as np
import pytest

from dirichlet_limit import (
    Normalization,
    Parity,
    critical_separation,
    delta_dirichlet_momenta,
    dirichlet_spectral_function,
    first_order_denominator,
    h_even,
    h_odd,
    kink_dirichlet_spectrum,
    kink_ground_state,
    kink_mode_wavefunction,
    kink_quadratic_coefficient,
    limiting_zone_amplitudes,
    strong_coupling_roots,
)
from numeric_oracle import PotentialSpec, ode_residual
from scattering_core import System, quadratic_coefficient
from utils.errors import InvalidArgumentError, NumericDegeneracyError, OutOfRegimeError


def test_box_momenta_and_parities():
    modes = delta_dirichlet_momenta(1.0, 4)
    assert [m.n for m in modes] == [1, 2, 3, 4]
    for mode in modes:
        assert mode.k == pytest.approx(math.pi * mode.n / 2)
        assert mode.parity is (Parity.EVEN if mode.n % 2 else Parity.ODD)
        assert mode.system is System.TWO_DELTA
        assert mode.omega == mode.k
        left, right = mode.wavefunction.boundary_values()
        assert abs(left) < 1e-12 and abs(right) < 1e-12


def test_box_modes_l2_normalized():
    for mode in delta_dirichlet_momenta(0.7, 3, normalization=Normalization.L2):
        assert mode.wavefunction.norm() == pytest.approx(1.0, abs=1e-12)
        assert mode.wavefunction.normalization is Normalization.L2


def test_null_wavefunction_cannot_be_normalized():
    with pytest.raises(NumericDegeneracyError):
        kink_mode_wavefunction(0.0, Parity.ODD, [0.0], Normalization.L2)


def test_spectral_function_identity():
    a = 0.9
    for k in (0.3, 1.2 + 0.1j, -0.7 - 0.4j):
        expected = 0.5 * np.exp(2j * a * k) * dirichlet_spectral_function(k, a)
        assert abs(quadratic_coefficient(k, a) - expected) < 1e-13


def test_strong_coupling_roots_approach_box_momenta():
    roots = strong_coupling_roots(1e8, 1e8, 1.0, 4)
    for n, root in enumerate(roots, start=1):
        assert abs(root - math.pi * n / 2) < 1e-6


def test_strong_coupling_needs_two_walls():
    with pytest.raises(InvalidArgumentError):
        strong_coupling_roots(0.0, 1e8, 1.0, 2)


def test_kink_coefficient_factorises(rng):
    a = 1.7
    samples = rng.uniform(-2.5, 2.5, size=6) + 1j * rng.uniform(-1.0, 1.0, size=6)
    for k in (0.4, 2.2 - 0.3j, -1.1 + 0.8j, *samples):
        expected = kink_quadratic_coefficient(k, a)
        assert abs(expected - h_odd(k, a) * h_even(k, a)) < 1e-12 * max(1.0, abs(expected))


def test_critical_separation():
    a_c = critical_separation()
    assert a_c == pytest.approx(1.1996786, abs=1e-6)
    assert abs(a_c * math.tanh(a_c) - 1) < 1e-12


def test_ground_state_regimes():
    assert kink_ground_state(1.0) is None
    ground = kink_ground_state(4.0)
    assert ground.kappa_b == pytest.approx(0.9986, abs=5e-4)
    assert ground.omega == pytest.approx(math.sqrt(1 - ground.kappa_b ** 2))
    assert abs(h_even(1j * ground.kappa_b, 4.0)) < 1e-10


def test_ground_state_grows_with_separation():
    kappas = [kink_ground_state(a).kappa_b for a in (1.3, 1.6, 2.0, 3.0)]
    assert all(k1 < k2 for k1, k2 in zip(kappas, kappas[1:]))
    assert all(0 < k < 1 for k in kappas)


def test_kink_spectrum_below_threshold_is_rejected():
    with pytest.raises(OutOfRegimeError):
        kink_dirichlet_spectrum(0.5, 3)


def test_kink_spectrum(kink_window):
    a = kink_window
    modes = kink_dirichlet_spectrum(a, 6, grid_points=4001)
    ks = [m.k for m in modes]
    assert ks == sorted(ks) and ks[0] > 0
    assert [m.parity for m in modes] == [Parity.ODD, Parity.EVEN] * 3
    for mode in modes:
        h = h_odd if mode.parity is Parity.ODD else h_even
        assert abs(h(mode.k, a)) < 1e-10
        assert mode.omega == pytest.approx(math.sqrt(mode.k ** 2 + 1))
        left, right = mode.wavefunction.boundary_values()
        assert abs(left) < 1e-9 and abs(right) < 1e-9


def test_kink_modes_solve_the_window_equation(kink_window):
    a = kink_window
    for mode in kink_dirichlet_spectrum(a, 3, grid_points=4001):
        psi = mode.wavefunction
        scale = np.max(np.abs(psi.values))
        assert ode_residual(psi, PotentialSpec.truncated_pt(a), mode.k ** 2 + 1) / scale < 1e-4


def test_wide_window_spectrum():
    a = 4.0
    modes = kink_dirichlet_spectrum(a, 6, grid_points=16001, normalization=Normalization.L2)
    assert [m.parity for m in modes] == [Parity.ODD, Parity.EVEN] * 3
    for mode in modes:
        left, right = mode.wavefunction.boundary_values()
        assert abs(left) < 1e-8 and abs(right) < 1e-8
        assert ode_residual(mode.wavefunction, PotentialSpec.truncated_pt(a), mode.k ** 2 + 1) < 1e-5


def test_odd_shape_vanishes_at_the_basis_zero(rng):
    for a in rng.uniform(0.2, 6.0, size=10):
        assert abs(h_odd(1j, a)) < 1e-14
    psi = kink_mode_wavefunction(1j, Parity.ODD, np.linspace(-4.0, 4.0, 801), a=4.0)
    assert np.max(np.abs(psi.values)) < 1e-12


def test_wavefunction_grid_must_stay_in_window():
    with pytest.raises(InvalidArgumentError):
        kink_mode_wavefunction(1.0, Parity.EVEN, np.linspace(-3, 3, 11), a=2.0)


def test_limiting_zone_amplitudes_follow_parity(kink_window):
    a = kink_window
    for mode in kink_dirichlet_spectrum(a, 4, with_wavefunctions=False):
        assert abs(first_order_denominator(mode.k, a)) > 1e-8
        amp_a, amp_b = limiting_zone_amplitudes(mode.k, a)
        if mode.parity is Parity.ODD:
            assert abs(amp_a - amp_b) < 1e-9
        else:
            assert abs(amp_a + amp_b) < 1e-9
