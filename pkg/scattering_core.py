"""
Closed-form scattering off two Dirac delta walls
U(x) = alpha*delta(x + a) + beta*delta(x - a)

Conventions: the jump condition at a delta of strength g placed at x0 is
psi'(x0+) - psi'(x0-) = g*psi(x0). "Right" (diestro) amplitudes describe a
wave e^{ikx} coming in from the left, "left" (zurdo) amplitudes a wave
e^{-ikx} coming in from the right. A_*, B_* are the e^{ikx} / e^{-ikx}
coefficients between the walls.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from utils.errors import InconsistentInputError, InvalidArgumentError, NumericDegeneracyError
from utils.validation import require_finite, require_positive, require_real_momentum

logger = logging.getLogger(__name__)

UNITARITY_TOLERANCE = 1e-8
DEFAULT_FD_STEP = 1e-5


class System(Enum):
    TWO_DELTA = "two-delta"
    KINK_DELTA = "kink"


class DensityConvention(Enum):
    """Prefactor of the spectral density shift"""
    HALF_LINE = "half-line"  # (1/2pi) d(delta_+ + delta_-)/dk
    FULL_LINE = "full-line"  # (1/4pi) d(delta_+ + delta_-)/dk


@dataclass(frozen=True)
class DeltaPairParams:
    """Couplings and half-separation of the two-delta potential"""
    alpha: float
    beta: float
    a: float

    def __post_init__(self):
        require_finite("alpha", self.alpha)
        require_finite("beta", self.beta)
        require_positive("a", self.a)

    @property
    def symmetric(self) -> bool:
        return self.alpha == self.beta


@dataclass(frozen=True)
class Amplitudes:
    """The eight scattering coefficients at one momentum"""
    k: float
    sigma_r: complex
    sigma_l: complex
    rho_r: complex
    rho_l: complex
    A_r: complex
    B_r: complex
    A_l: complex
    B_l: complex

    FIELDS = ("sigma_r", "sigma_l", "rho_r", "rho_l", "A_r", "B_r", "A_l", "B_l")

    def values(self) -> Tuple[complex, ...]:
        return tuple(getattr(self, name) for name in self.FIELDS)

    def unitarity_defect(self) -> float:
        """Largest deviation of |sigma|^2 + |rho|^2 from 1 over both incidences"""
        right = abs(abs(self.sigma_r) ** 2 + abs(self.rho_r) ** 2 - 1.0)
        left = abs(abs(self.sigma_l) ** 2 + abs(self.rho_l) ** 2 - 1.0)
        return max(right, left)


@dataclass(frozen=True)
class SMatrix2x2:
    sigma_r: complex
    rho_l: complex
    rho_r: complex
    sigma_l: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.sigma_r, self.rho_l], [self.rho_r, self.sigma_l]], dtype=complex)

    def unitarity_defect(self) -> float:
        """max |(S S^dagger - I)_ij|"""
        s = self.matrix
        return float(np.max(np.abs(s @ s.conj().T - np.eye(2))))


@dataclass(frozen=True)
class PhaseShiftPair:
    k: float
    delta_plus: float
    delta_minus: float

    @property
    def total(self) -> float:
        return self.delta_plus + self.delta_minus


@dataclass(frozen=True)
class JostPair:
    """Even (J0) and odd (J1) channel factors; complex scalars or arrays"""
    J0: complex
    J1: complex


def _scalar_or_array(value):
    if np.ndim(value) == 0:
        return complex(value)
    return value


def nondimensionalize(alpha: float, beta: float, a: float, scale: float,
                      system: System = System.TWO_DELTA,
                      t: float = 0.0, x: float = 0.0) -> Tuple[DeltaPairParams, float, float]:
    """
    Rescale physical couplings and coordinates to the dimensionless problem

    Two-delta model (scale = Lambda): x + a -> (x + a)/Lambda, t -> t/Lambda,
    alpha -> Lambda*alpha, beta -> Lambda*beta.
    Kink model (scale = m): alpha -> m*alpha, beta -> m*beta, x -> x/m, t -> t/m.
    The half-separation a is carried over unchanged in both models.

    Args:
        alpha, beta: Physical couplings
        a: Half-separation
        scale: Mass scale Lambda or m
        system: Which model's rescaling to apply
        t, x: Physical time and position to rescale

    Returns:
        (params, t', x')
    """
    scale = require_positive("scale", scale)

    params = DeltaPairParams(scale * alpha, scale * beta, a)
    if system is System.TWO_DELTA:
        return params, t / scale, (x + a) / scale - a
    return params, t / scale, x / scale


def quadratic_coefficient(k, a: float):
    """e^{4iak} - 1, the coefficient of alpha*beta in the denominator"""
    phase = np.exp(2j * a * k)
    # written through sin(2ak) so the real-axis zeros k = n*pi/2a stay exact
    return 2j * phase * np.sin(2 * a * k)


def delta_denominator(params: DeltaPairParams, k):
    """
    Delta(k) = alpha*beta*(e^{4iak} - 1) + 4k^2 + 2ik(alpha + beta)

    Entire in k; accepts complex scalars or numpy arrays.
    """
    alpha, beta = params.alpha, params.beta
    value = alpha * beta * quadratic_coefficient(k, params.a) + 4 * k * k + 2j * k * (alpha + beta)
    return _scalar_or_array(value)


def single_delta_amplitudes(strength: float, k: float) -> Tuple[complex, complex]:
    """Transmission and reflection (sigma, rho) of one delta at the origin"""
    k = require_real_momentum(k)
    denominator = 2 * k + 1j * strength
    return 2 * k / denominator, -1j * strength / denominator


def double_delta_amplitudes(params: DeltaPairParams, k: float) -> Amplitudes:
    """
    All eight scattering coefficients of the two-delta potential

    Args:
        params: Couplings and half-separation
        k: Real momentum, k > 0

    Returns:
        Amplitudes at k
    """
    k = require_real_momentum(k)
    alpha, beta, a = params.alpha, params.beta, params.a

    delta = delta_denominator(params, k)
    if delta == 0:
        raise NumericDegeneracyError(f"Delta(k) vanished on the real axis at k={k!r} for {params}")

    e2 = cmath.exp(2j * a * k)
    e4 = e2 * e2
    sigma = 4 * k * k / delta
    rho_r = -1j * (beta * e4 * (2 * k - 1j * alpha) + alpha * (2 * k + 1j * beta)) / (e2 * delta)
    rho_l = -1j * (alpha * e4 * (2 * k - 1j * beta) + beta * (2 * k + 1j * alpha)) / (e2 * delta)

    return Amplitudes(
        k=k,
        sigma_r=sigma,
        sigma_l=sigma,
        rho_r=rho_r,
        rho_l=rho_l,
        A_r=2 * k * (2 * k + 1j * beta) / delta,
        B_r=-2j * k * beta * e2 / delta,
        A_l=-2j * k * alpha * e2 / delta,
        B_l=2 * k * (2 * k + 1j * alpha) / delta,
    )


def delta_transfer_matrix(strength: float, position: float, k: complex) -> np.ndarray:
    """
    Maps (c+, c-) on the left of a delta to the right, in the e^{+-ikx} basis
    """
    gamma = strength / (2j * k)
    shift = cmath.exp(2j * k * position)
    return np.array([[1 + gamma, gamma / shift], [-gamma * shift, 1 - gamma]], dtype=complex)


def transfer_matrix(params: DeltaPairParams, k: float) -> np.ndarray:
    k = require_real_momentum(k)
    return delta_transfer_matrix(params.beta, params.a, k) @ delta_transfer_matrix(params.alpha, -params.a, k)


def amplitudes_from_transfer_matrix(matrix: np.ndarray) -> Tuple[complex, complex, complex]:
    """(sigma, rho_r, rho_l) of a unimodular transfer matrix"""
    m22 = matrix[1, 1]
    if m22 == 0:
        raise NumericDegeneracyError("Transfer matrix has a vanishing (2,2) entry")
    return complex(1 / m22), complex(-matrix[1, 0] / m22), complex(matrix[0, 1] / m22)


def s_matrix(amp: Amplitudes) -> SMatrix2x2:
    return SMatrix2x2(sigma_r=amp.sigma_r, rho_l=amp.rho_l, rho_r=amp.rho_r, sigma_l=amp.sigma_l)


def phase_shifts(S: SMatrix2x2, previous: Optional[PhaseShiftPair] = None,
                 k: Optional[float] = None,
                 tolerance: float = UNITARITY_TOLERANCE) -> PhaseShiftPair:
    """
    Eigenphases e^{2i delta_+-} = sigma +- sqrt(rho_l*rho_r)

    Without `previous` the principal branches are used. With `previous` the
    square-root sign and the multiple of pi are chosen so that the pair is
    continuous with it.
    """
    defect = S.unitarity_defect()
    if defect > tolerance:
        raise InconsistentInputError(f"S-matrix is not unitary: defect {defect:.3e} > {tolerance:.1e}")

    root = cmath.sqrt(S.rho_l * S.rho_r)
    lam_plus, lam_minus = S.sigma_r + root, S.sigma_r - root
    if k is None:
        k = previous.k if previous is not None else float("nan")

    if previous is None:
        return PhaseShiftPair(k, 0.5 * cmath.phase(lam_plus), 0.5 * cmath.phase(lam_minus))

    target_plus = cmath.exp(2j * previous.delta_plus)
    target_minus = cmath.exp(2j * previous.delta_minus)
    straight = abs(lam_plus - target_plus) + abs(lam_minus - target_minus)
    swapped = abs(lam_minus - target_plus) + abs(lam_plus - target_minus)
    if swapped < straight:
        lam_plus, lam_minus = lam_minus, lam_plus

    return PhaseShiftPair(
        k,
        _nearest_branch(0.5 * cmath.phase(lam_plus), previous.delta_plus),
        _nearest_branch(0.5 * cmath.phase(lam_minus), previous.delta_minus),
    )


def _nearest_branch(phase: float, reference: float) -> float:
    # delta is defined modulo pi
    return phase + math.pi * round((reference - phase) / math.pi)


def track_phase_shifts(amplitudes_at: Callable[[float], Amplitudes],
                       ks: Sequence[float]) -> List[PhaseShiftPair]:
    """
    Unwrapped phase shifts along an ascending momentum grid

    The highest momentum is taken on the principal branch (S is close to the
    identity there) and continuity is tracked downward, so delta -> 0 at
    high energy.
    """
    ks = [float(k) for k in ks]
    if any(k2 <= k1 for k1, k2 in zip(ks, ks[1:])):
        raise InvalidArgumentError("Momentum grid must be strictly ascending")

    pairs: List[PhaseShiftPair] = []
    previous: Optional[PhaseShiftPair] = None
    for k in reversed(ks):
        previous = phase_shifts(s_matrix(amplitudes_at(k)), previous, k=k)
        pairs.append(previous)
    pairs.reverse()
    return pairs


def phase_shift_sweep(params: DeltaPairParams, ks: Sequence[float]) -> List[PhaseShiftPair]:
    return track_phase_shifts(lambda k: double_delta_amplitudes(params, k), ks)


def phase_shift_derivative(amplitudes_at: Callable[[float], Amplitudes], k: float,
                           step: float = DEFAULT_FD_STEP) -> Tuple[float, float]:
    """
    Central-difference derivatives (d delta_+/dk, d delta_-/dk) at k

    Raises:
        InvalidArgumentError: if k <= step
    """
    k = require_real_momentum(k)
    step = require_positive("step", step)
    if k <= step:
        raise InvalidArgumentError(f"k={k!r} is too close to 0 for finite-difference step {step!r}")

    centre = phase_shifts(s_matrix(amplitudes_at(k)), k=k)
    lower = phase_shifts(s_matrix(amplitudes_at(k - step)), centre, k=k - step)
    upper = phase_shifts(s_matrix(amplitudes_at(k + step)), centre, k=k + step)
    return (
        (upper.delta_plus - lower.delta_plus) / (2 * step),
        (upper.delta_minus - lower.delta_minus) / (2 * step),
    )


def density_prefactor(convention: DensityConvention) -> float:
    if convention is DensityConvention.HALF_LINE:
        return 1.0 / (2 * math.pi)
    return 1.0 / (4 * math.pi)


def spectral_density_shift(params: DeltaPairParams, k: float,
                           convention: DensityConvention = DensityConvention.HALF_LINE,
                           step: float = DEFAULT_FD_STEP) -> float:
    """Density of continuum states minus the free density"""
    d_plus, d_minus = phase_shift_derivative(lambda q: double_delta_amplitudes(params, q), k, step)
    return density_prefactor(convention) * (d_plus + d_minus)


def jost_factors(alpha: float, a: float, k) -> JostPair:
    """
    J0 = k + i*alpha*e^{ika}cos(ka), J1 = k + alpha*e^{ika}sin(ka)

    Valid for equal couplings; 4*J0*J1 equals delta_denominator.
    """
    phase = np.exp(1j * k * a)
    j0 = k + 1j * alpha * phase * np.cos(k * a)
    j1 = k + alpha * phase * np.sin(k * a)
    return JostPair(_scalar_or_array(j0), _scalar_or_array(j1))
