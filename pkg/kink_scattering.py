"""
Scattering off two delta walls enclosing a truncated Poschl-Teller well

U(x) = alpha*delta(x + a) + beta*delta(x - a) + 1 - theta(a - x)*theta(a + x)*2*sech^2(x)

Between the walls the solutions are the Jacobi modes
f_k(x) = e^{ikx}(tanh x - ik); outside the potential is the constant 1, so k is
the asymptotic momentum and omega^2 = k^2 + 1. A_*, B_* are the f_k / f_{-k}
coefficients in the window.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from scattering_core import (
    DEFAULT_FD_STEP,
    Amplitudes,
    DensityConvention,
    PhaseShiftPair,
    density_prefactor,
    phase_shift_derivative,
    track_phase_shifts,
)
from utils.errors import NumericDegeneracyError
from utils.validation import require_finite, require_positive, require_real_momentum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KinkDeltaParams:
    """Couplings, half-separation and the cached s = sech(a), t = tanh(a)"""
    alpha: float
    beta: float
    a: float
    s: float = field(init=False, repr=False)
    t: float = field(init=False, repr=False)

    def __post_init__(self):
        require_finite("alpha", self.alpha)
        require_finite("beta", self.beta)
        require_positive("a", self.a)
        decay = math.exp(-self.a)
        # sech written through e^{-a} so large windows do not overflow cosh
        object.__setattr__(self, "s", 2 * decay / (1 + decay * decay))
        object.__setattr__(self, "t", math.tanh(self.a))

    @property
    def symmetric(self) -> bool:
        return self.alpha == self.beta


@dataclass(frozen=True)
class KinkJostPair:
    """J0K carries the odd channel (and the basis zero k = i), J1K the even one"""
    J0K: complex
    J1K: complex


def _scalar_or_array(value):
    if np.ndim(value) == 0:
        return complex(value)
    return value


def pt_mode(k, x):
    """f_k(x) = e^{ikx}(tanh x - ik)"""
    return _scalar_or_array(np.exp(1j * k * x) * (np.tanh(x) - 1j * k))


def pt_mode_derivative(k, x):
    """f_k'(x) = e^{ikx}(ik tanh x + k^2 + sech^2 x)"""
    sech = 1.0 / np.cosh(x)
    return _scalar_or_array(np.exp(1j * k * x) * (1j * k * np.tanh(x) + k * k + sech * sech))


def _wall_factor_p(params: KinkDeltaParams, strength: float, k):
    """s^2 + (k - it)(2k + i*g)"""
    return params.s ** 2 + (k - 1j * params.t) * (2 * k + 1j * strength)


def _wall_factor_q(params: KinkDeltaParams, strength: float, k):
    """s^2 + g(t - ik)"""
    return params.s ** 2 + strength * (params.t - 1j * k)


def kink_denominator(params: KinkDeltaParams, k):
    """
    Delta^K(k) = P_alpha P_beta - e^{4iak} Q_alpha Q_beta

    with P_g = s^2 + (k - it)(2k + ig) and Q_g = s^2 + g(t - ik). Entire in k;
    accepts complex scalars or numpy arrays.
    """
    p_alpha = _wall_factor_p(params, params.alpha, k)
    p_beta = _wall_factor_p(params, params.beta, k)
    q_alpha = _wall_factor_q(params, params.alpha, k)
    q_beta = _wall_factor_q(params, params.beta, k)
    return _scalar_or_array(p_alpha * p_beta - np.exp(4j * params.a * k) * q_alpha * q_beta)


def kink_amplitudes(params: KinkDeltaParams, k: float) -> Amplitudes:
    """
    All eight scattering coefficients of the kink plus delta potential

    Args:
        params: Couplings and half-separation
        k: Asymptotic momentum, k > 0

    Returns:
        Amplitudes at k
    """
    k = require_real_momentum(k)
    alpha, beta = params.alpha, params.beta

    delta = kink_denominator(params, k)
    if delta == 0:
        raise NumericDegeneracyError(f"Delta^K(k) vanished on the real axis at k={k!r} for {params}")

    e2 = cmath.exp(2j * params.a * k)
    p_alpha, p_beta = _wall_factor_p(params, alpha, k), _wall_factor_p(params, beta, k)
    q_alpha, q_beta = _wall_factor_q(params, alpha, k), _wall_factor_q(params, beta, k)
    # mirrored factors, P_g(-k) and Q_g(-k)
    p_alpha_m, p_beta_m = _wall_factor_p(params, alpha, -k), _wall_factor_p(params, beta, -k)
    q_alpha_m, q_beta_m = _wall_factor_q(params, alpha, -k), _wall_factor_q(params, beta, -k)

    sigma = 4 * k * k * (k * k + 1) / delta
    rho_r = (e2 * q_beta * p_alpha_m - p_beta * q_alpha_m / e2) / delta
    rho_l = (e2 * q_alpha * p_beta_m - p_alpha * q_beta_m / e2) / delta

    return Amplitudes(
        k=k,
        sigma_r=sigma,
        sigma_l=sigma,
        rho_r=rho_r,
        rho_l=rho_l,
        A_r=2j * k * p_beta / delta,
        B_r=-2j * k * e2 * q_beta / delta,
        A_l=2j * k * e2 * q_alpha / delta,
        B_l=-2j * k * p_alpha / delta,
    )


def kink_jost_factors(alpha: float, a: float, k) -> KinkJostPair:
    """
    J0K = [P_alpha + e^{2iak} Q_alpha]/2, J1K = [P_alpha - e^{2iak} Q_alpha]/2

    Valid for equal couplings; 4*J0K*J1K equals kink_denominator.
    """
    params = KinkDeltaParams(alpha, alpha, a)
    p = _wall_factor_p(params, alpha, k)
    q = np.exp(2j * a * k) * _wall_factor_q(params, alpha, k)
    return KinkJostPair(_scalar_or_array(0.5 * (p + q)), _scalar_or_array(0.5 * (p - q)))


def kink_phase_shift_sweep(params: KinkDeltaParams, ks: Sequence[float]) -> List[PhaseShiftPair]:
    return track_phase_shifts(lambda k: kink_amplitudes(params, k), ks)


def kink_spectral_density_shift(params: KinkDeltaParams, k: float,
                                convention: DensityConvention = DensityConvention.HALF_LINE,
                                step: float = DEFAULT_FD_STEP) -> float:
    d_plus, d_minus = phase_shift_derivative(lambda q: kink_amplitudes(params, q), k, step)
    return density_prefactor(convention) * (d_plus + d_minus)

