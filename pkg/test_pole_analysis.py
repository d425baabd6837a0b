"""
Tests for zero counting, root refinement and pole classification
"""

import math

import numpy as np
import pytest

from kink_scattering import KinkDeltaParams
from numeric_oracle import PotentialSpec, solve_bound_states_numeric
from pole_analysis import (
    Channel,
    PoleKind,
    SearchRegion,
    channel_functions,
    classify,
    count_zeros,
    denominator_function,
    find_poles,
    find_zeros,
    physical_bound_states,
    refine_root,
    zero_contour_grid,
)
from scattering_core import DeltaPairParams, System, delta_denominator
from utils.errors import InvalidArgumentError, RefinementError, UnphysicalRootError


def quadratic(z):
    return (z - (0.3 + 0.2j)) * (z + (0.5 + 0.1j))


def test_count_zeros_of_polynomial():
    assert count_zeros(quadratic, SearchRegion()) == 2
    assert count_zeros(quadratic, SearchRegion(0.0, 1.0, 0.0, 1.0)) == 1
    assert count_zeros(quadratic, SearchRegion(1.0, 2.0, 1.0, 2.0)) == 0


def test_find_zeros_isolates_each_root():
    roots = sorted(find_zeros(quadratic, SearchRegion()), key=lambda z: z.real)
    assert len(roots) == 2
    assert abs(roots[0] - (-0.5 - 0.1j)) < 1e-10
    assert abs(roots[1] - (0.3 + 0.2j)) < 1e-10


def test_refine_root():
    root = refine_root(lambda z: z * z - 2, 1.5)
    assert abs(root - math.sqrt(2)) < 1e-12


def test_refine_root_reports_failure():
    with pytest.raises(RefinementError) as excinfo:
        refine_root(lambda z: z * z + 1.0, 0.0, max_iterations=3)
    assert excinfo.value.last_iterate == 0.0


@pytest.mark.parametrize("k, kind", [
    (0.5j, PoleKind.BOUND),
    (-0.5j, PoleKind.ANTIBOUND),
    (1.0 - 0.3j, PoleKind.RESONANCE),
    (-1.0 - 0.3j, PoleKind.RESONANCE),
])
def test_classify(k, kind):
    assert classify(k) is kind


def test_classify_rejects_unphysical_and_origin():
    with pytest.raises(UnphysicalRootError):
        classify(1.0 + 0.3j)
    with pytest.raises(InvalidArgumentError):
        classify(0.0)


def test_search_region_validation():
    with pytest.raises(InvalidArgumentError):
        SearchRegion(1.0, 1.0, 0.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        SearchRegion(0.0, 1.0, 0.0, float("inf"))


def test_weak_attraction_has_one_bound_state():
    params = DeltaPairParams(-0.1, -0.1, 1.0)
    poles = find_poles(System.TWO_DELTA, params)
    bound = [p for p in poles if p.kind is PoleKind.BOUND]
    assert len(bound) == 1
    kappa = bound[0].k.imag
    # even channel: kappa = -alpha e^{-kappa a} cosh(kappa a)
    assert abs(kappa - 0.1 * math.exp(-kappa) * math.cosh(kappa)) < 1e-10
    assert bound[0].channel is Channel.J0
    assert bound[0].residual < 1e-9
    assert all(abs(p.k) > 1e-9 for p in poles)


def test_strong_attraction_has_two_bound_states():
    poles = find_poles(System.TWO_DELTA, DeltaPairParams(-2.0, -2.0, 1.0))
    assert len(physical_bound_states(poles)) == 2


def test_weak_repulsion_has_an_antibound_state():
    poles = find_poles(System.TWO_DELTA, DeltaPairParams(0.1, 0.1, 1.0))
    assert not [p for p in poles if p.kind is PoleKind.BOUND]
    antibound = [p for p in poles if p.kind is PoleKind.ANTIBOUND]
    assert any(abs(p.k - (-0.1126j)) < 1e-3 for p in antibound)


def test_resonances_come_in_mirror_pairs():
    poles = find_poles(System.TWO_DELTA, DeltaPairParams(2.0, 2.0, 1.0))
    resonances = [p.k for p in poles if p.kind is PoleKind.RESONANCE]
    assert resonances and len(resonances) % 2 == 0
    for k in resonances:
        assert min(abs(-k.conjugate() - other) for other in resonances) < 1e-8
    assert any(abs(k - (1.107 - 0.163j)) < 5e-3 for k in resonances)


def test_asymmetric_couplings_use_full_denominator():
    params = DeltaPairParams(-1.0, -0.5, 1.0)
    poles = find_poles(System.TWO_DELTA, params)
    assert poles and all(p.channel is Channel.FULL for p in poles)
    for pole in poles:
        assert abs(delta_denominator(params, pole.k)) < 1e-9


@pytest.mark.parametrize("system, params", [
    (System.TWO_DELTA, DeltaPairParams(-2.0, -2.0, 1.0)),
    (System.TWO_DELTA, DeltaPairParams(-0.1, -0.1, 1.0)),
    (System.TWO_DELTA, DeltaPairParams(0.1, 0.1, 1.0)),
    (System.TWO_DELTA, DeltaPairParams(2.0, 2.0, 1.0)),
    (System.KINK_DELTA, KinkDeltaParams(-0.1, -0.1, 1.0)),
])
def test_channel_zeros_add_up_to_denominator_zeros(system, params):
    region = SearchRegion()
    channels = channel_functions(system, params)
    assert set(channels) == {Channel.J0, Channel.J1}
    total = sum(count_zeros(f, region) for f in channels.values())
    assert total == count_zeros(denominator_function(system, params), region)


def test_kink_basis_zero_is_flagged():
    poles = find_poles(System.KINK_DELTA, KinkDeltaParams(-0.1, -0.1, 1.0))
    flagged = [p for p in poles if p.basis_zero]
    assert len(flagged) == 1
    assert abs(flagged[0].k - 1j) < 1e-7
    assert flagged[0].channel is Channel.J0


@pytest.mark.parametrize("system, params, potential", [
    (System.TWO_DELTA, DeltaPairParams(-2.0, -2.0, 1.0), PotentialSpec.two_delta(-2.0, -2.0, 1.0)),
    (System.KINK_DELTA, KinkDeltaParams(-2.0, -2.0, 1.0), PotentialSpec.kink_delta(-2.0, -2.0, 1.0)),
    (System.KINK_DELTA, KinkDeltaParams(0.1, 0.1, 1.0), PotentialSpec.kink_delta(0.1, 0.1, 1.0)),
])
def test_bound_states_agree_with_shooting(system, params, potential):
    analytic = physical_bound_states(find_poles(system, params, SearchRegion(im_max=2.4)))
    numeric = solve_bound_states_numeric(potential, kappa_range=(1e-3, 2.4), samples=400, step=1e-3)
    assert len(analytic) == len(numeric)
    for x, y in zip(analytic, numeric):
        assert abs(x - y) < 1e-6


def test_wrong_parameter_type():
    with pytest.raises(InvalidArgumentError):
        find_poles(System.KINK_DELTA, DeltaPairParams(1.0, 1.0, 1.0))


def test_contour_grid_shape():
    grid = zero_contour_grid(System.TWO_DELTA, DeltaPairParams(1.0, 1.0, 1.0), SearchRegion(), nx=21, ny=11)
    assert grid.values.shape == (11, 21)
    assert grid.re[0] == -1.8 and grid.im[-1] == 2.5
    expected = delta_denominator(DeltaPairParams(1.0, 1.0, 1.0), complex(grid.re[3], grid.im[5]))
    assert abs(grid.values[5, 3] - expected) < 1e-12
    assert np.all(np.isfinite(grid.values))
