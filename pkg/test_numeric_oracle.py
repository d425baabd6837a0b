"""
Tests for the direct ODE solver
"""

import numpy as np
import pytest

from dirichlet_limit import SampledWaveFunction
from kink_scattering import KinkDeltaParams, kink_amplitudes
from numeric_oracle import (
    PotentialSpec,
    SmoothTerm,
    ode_residual,
    solve_bound_states_numeric,
    solve_scattering_numeric,
)
from scattering_core import DeltaPairParams, double_delta_amplitudes, single_delta_amplitudes
from utils.errors import AccuracyError, InvalidArgumentError, InvalidGridError


def test_free_potential_is_transparent():
    result = solve_scattering_numeric(PotentialSpec.free(), 1.3)
    assert result.sigma == 1 and result.rho_r == 0 and result.rho_l == 0
    assert result.flux_defect() == 0.0


def test_single_delta_matches_closed_form():
    result = solve_scattering_numeric(PotentialSpec.single_delta(-1.5), 0.8)
    sigma, rho = single_delta_amplitudes(-1.5, 0.8)
    assert abs(result.sigma_r - sigma) < 1e-12
    assert abs(result.rho_r - rho) < 1e-12
    assert abs(result.rho_l - rho) < 1e-12
    assert result.sample_point is None
    with pytest.raises(InvalidArgumentError):
        result.as_amplitudes()


@pytest.mark.parametrize("alpha, beta, a, k", [
    (1.0, 2.0, 1.0, 0.7),
    (-2.0, -2.0, 1.0, 1.9),
    (0.3, -1.2, 0.6, 2.6),
])
def test_two_delta_matches_closed_form(alpha, beta, a, k):
    numeric = solve_scattering_numeric(PotentialSpec.two_delta(alpha, beta, a), k).as_amplitudes()
    exact = double_delta_amplitudes(DeltaPairParams(alpha, beta, a), k)
    for x, y in zip(numeric.values(), exact.values()):
        assert abs(x - y) < 1e-8


def test_rk4_error_falls_with_fourth_power_of_step():
    potential = PotentialSpec.two_delta(2.0, -1.5, 3.0)
    exact = double_delta_amplitudes(DeltaPairParams(2.0, -1.5, 3.0), 10.0)

    def error(step):
        result = solve_scattering_numeric(potential, 10.0, step)
        return max(abs(result.sigma_r - exact.sigma_r), abs(result.rho_r - exact.rho_r),
                   abs(result.sigma_l - exact.sigma_l), abs(result.rho_l - exact.rho_l))

    coarse, fine = error(1e-3), error(5e-4)
    assert coarse > 1e-11
    assert coarse >= 8 * fine


@pytest.mark.parametrize("alpha, beta, a, k", [
    (0.0, 0.0, 1.0, 0.9),
    (-0.1, -0.1, 1.0, 0.4),
    (2.0, -1.0, 1.5, 1.6),
])
def test_kink_matches_closed_form(alpha, beta, a, k):
    result = solve_scattering_numeric(PotentialSpec.kink_delta(alpha, beta, a), k)
    assert result.flux_defect() < 1e-8
    exact = kink_amplitudes(KinkDeltaParams(alpha, beta, a), k)
    for x, y in zip(result.as_amplitudes().values(), exact.values()):
        assert abs(x - y) < 1e-8


def test_full_line_well_is_reflectionless():
    result = solve_scattering_numeric(PotentialSpec.full_line_pt(), 1.1, step=1e-3)
    assert abs(result.rho_r) < 1e-7
    assert abs(result.sigma_r) == pytest.approx(1.0, abs=1e-7)


def test_single_delta_bound_state():
    assert solve_bound_states_numeric(PotentialSpec.single_delta(-2.0)) == [pytest.approx(1.0, abs=1e-9)]
    assert solve_bound_states_numeric(PotentialSpec.single_delta(2.0)) == []


def test_full_line_well_bound_state():
    kappas = solve_bound_states_numeric(PotentialSpec.full_line_pt(), kappa_range=(0.05, 3.0),
                                        samples=150, step=1e-3)
    assert len(kappas) == 1
    assert kappas[0] == pytest.approx(1.0, abs=1e-6)


def test_step_above_accuracy_limit():
    with pytest.raises(AccuracyError):
        solve_scattering_numeric(PotentialSpec.single_delta(1.0), 1.0, step=1e-2)


def test_potential_spec_validation():
    with pytest.raises(InvalidArgumentError):
        PotentialSpec(deltas=((1.0, 5.0),), x_max=4.0)
    with pytest.raises(InvalidArgumentError):
        PotentialSpec(smooth=SmoothTerm.TRUNCATED_PT, window=0.0)
    spec = PotentialSpec.kink_delta(1.0, 2.0, 1.5)
    assert spec.support == (-1.5, 1.5)
    assert spec.offset == 1.0
    assert spec.jumps() == {-1.5: 1.0, 1.5: 2.0}


def test_ode_residual_rejects_bad_grids():
    spec = PotentialSpec.two_delta(1.0, 1.0, 1.0)
    uneven = SampledWaveFunction(np.array([0.0, 0.1, 0.3]), np.zeros(3, dtype=complex))
    with pytest.raises(InvalidGridError):
        ode_residual(uneven, spec, 1.0)
    across = SampledWaveFunction(np.linspace(-2, 2, 41), np.zeros(41, dtype=complex))
    with pytest.raises(InvalidGridError):
        ode_residual(across, spec, 1.0)
    with pytest.raises(InvalidGridError):
        ode_residual(SampledWaveFunction(np.array([0.0, 1.0]), np.zeros(2, dtype=complex)), spec, 1.0)


def test_ode_residual_of_plane_wave():
    x = np.linspace(-0.9, 0.9, 1801)
    psi = SampledWaveFunction(x, np.exp(1.5j * x))
    assert ode_residual(psi, PotentialSpec.two_delta(1.0, 1.0, 1.0), 1.5 ** 2) < 1e-5
