"""
Vacuum (Casimir) energy quantities

Zeta-regularized Dirichlet energy between impenetrable walls, the regularized
mode sum E_d(s), the phase-shift integrand of the one-loop vacuum energy and a
diagnostic kink-minus-free Dirichlet mode sum.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import mpmath
import numpy as np
from scipy.integrate import trapezoid

from dirichlet_limit import kink_dirichlet_spectrum, kink_ground_state
from kink_scattering import KinkDeltaParams, kink_amplitudes
from scattering_core import (
    DEFAULT_FD_STEP,
    DeltaPairParams,
    System,
    double_delta_amplitudes,
    phase_shift_derivative,
)
from utils.errors import InvalidArgumentError, ZetaPoleError
from utils.sweep_pool import SweepPool
from utils.validation import require_positive, require_positive_int

logger = logging.getLogger(__name__)

MODE_SUM_CAVEAT = (
    "Partial sums of the kink-minus-free Dirichlet frequencies are not expected to "
    "converge without mass renormalization; the table is diagnostic only."
)


class Dispersion(Enum):
    MASSLESS = "massless"  # omega = |k|
    MASSIVE = "massive"    # omega = sqrt(k^2 + 1)

    def omega(self, k: float) -> float:
        if self is Dispersion.MASSLESS:
            return abs(k)
        return math.sqrt(k * k + 1.0)

    def bound_omega(self, kappa: float) -> float:
        """Frequency of an imaginary-momentum state k = i*kappa"""
        if self is Dispersion.MASSLESS:
            raise InvalidArgumentError("A massless field has no bound-state frequency")
        if not 0.0 < kappa <= 1.0:
            raise InvalidArgumentError(f"kappa must lie in (0, 1], got {kappa!r}")
        return math.sqrt(1.0 - kappa * kappa)


@dataclass(frozen=True)
class ZetaValue:
    s: complex
    value: complex


@dataclass(frozen=True)
class VacuumEnergyResult:
    bound_sum: float
    continuum_part: float
    total: float
    metadata: Dict[str, Any] = field(default_factory=dict)
    ks: List[float] = field(default_factory=list)
    integrand: List[float] = field(default_factory=list)


@dataclass(frozen=True)
class ModeSumTable:
    """Partial sums of omega_n^kink - omega_n^free for N = 1..n_max"""
    omega_b: Optional[float]
    n: List[int]
    partial_sums: List[float]
    caveat: str = MODE_SUM_CAVEAT


def zeta(s: complex) -> ZetaValue:
    """
    Riemann zeta through mpmath's analytic continuation

    Raises:
        ZetaPoleError: at s = 1
    """
    s = complex(s)
    if s == 1:
        raise ZetaPoleError("zeta(s) has its pole at s = 1")
    value = mpmath.zeta(mpmath.mpc(s.real, s.imag))
    return ZetaValue(s=s, value=complex(value))


def default_dispersion(system: System) -> Dispersion:
    return Dispersion.MASSLESS if system is System.TWO_DELTA else Dispersion.MASSIVE


def zeta_regularized_mode_sum(a: float, s: complex) -> complex:
    """
    E_d(s) = (1/2) (pi/2a)^{-2s} zeta(2s)

    Args:
        a: Half-separation of the Dirichlet walls
        s: Regulator, 2s != 1

    Returns:
        The regularized sum (1/2) sum_n k_n^{-2s}
    """
    a = require_positive("a", a)
    s = complex(s)
    if 2 * s == 1:
        raise ZetaPoleError("E_d(s) is singular at 2s = 1")
    scale = mpmath.pi / (2 * mpmath.mpf(a))
    value = mpmath.mpf(0.5) * mpmath.power(scale, -2 * mpmath.mpc(s.real, s.imag)) \
        * mpmath.zeta(2 * mpmath.mpc(s.real, s.imag))
    return complex(value)


def dirichlet_casimir_energy(a: float) -> float:
    """E = (pi/4a) zeta(-1) = -pi/(48a)"""
    a = require_positive("a", a)
    return math.pi / (4 * a) * zeta(-1).value.real


def _amplitude_function(system: System, params):
    if system is System.TWO_DELTA:
        if not isinstance(params, DeltaPairParams):
            raise InvalidArgumentError("two-delta integrand needs DeltaPairParams")
        return lambda q: double_delta_amplitudes(params, q)
    if not isinstance(params, KinkDeltaParams):
        raise InvalidArgumentError("kink integrand needs KinkDeltaParams")
    return lambda q: kink_amplitudes(params, q)


def vacuum_energy_integrand(system: System, params, k: float,
                            dispersion: Optional[Dispersion] = None,
                            step: float = DEFAULT_FD_STEP) -> float:
    """omega(k) (d delta_+/dk + d delta_-/dk) / (4 pi)"""
    dispersion = dispersion or default_dispersion(system)
    d_plus, d_minus = phase_shift_derivative(_amplitude_function(system, params), k, step)
    return dispersion.omega(k) * (d_plus + d_minus) / (4 * math.pi)


def continuum_vacuum_energy(system: System, params, k_min: float, k_max: float, samples: int,
                            bound_frequencies: Sequence[float] = (),
                            dispersion: Optional[Dispersion] = None,
                            step: float = DEFAULT_FD_STEP,
                            pool: Optional[SweepPool] = None) -> VacuumEnergyResult:
    """
    Trapezoidal quadrature of the integrand on [k_min, k_max] plus sum of bound frequencies

    Only the free density is subtracted; no further renormalization is applied.
    """
    k_min = require_positive("k_min", k_min)
    k_max = require_positive("k_max", k_max)
    samples = require_positive_int("samples", samples)
    if k_max <= k_min or samples < 2:
        raise InvalidArgumentError("Need k_min < k_max and at least two samples")
    dispersion = dispersion or default_dispersion(system)

    ks = np.linspace(k_min, k_max, samples)
    pool = pool or SweepPool()
    values = pool.map(lambda k: vacuum_energy_integrand(system, params, float(k), dispersion, step), ks)
    continuum = float(trapezoid(values, ks))
    bound_sum = float(sum(bound_frequencies))

    return VacuumEnergyResult(
        bound_sum=bound_sum,
        continuum_part=continuum,
        total=bound_sum + continuum,
        metadata={
            "convention": "full-line",
            "dispersion": dispersion.value,
            "k_min": k_min,
            "k_max": k_max,
            "samples": samples,
            "fd_step": step,
        },
        ks=ks.tolist(),
        integrand=[float(v) for v in values],
    )


def mode_sum_difference(kink_momenta: Sequence[float], free_momenta: Sequence[float],
                        omega_b: Optional[float] = None) -> ModeSumTable:
    """Partial sums of sqrt(k^2 + 1) differences over paired momenta"""
    if len(kink_momenta) != len(free_momenta):
        raise InvalidArgumentError("Momentum lists must have equal length")
    differences = [Dispersion.MASSIVE.omega(k) - Dispersion.MASSIVE.omega(q)
                   for k, q in zip(kink_momenta, free_momenta)]
    partial = np.cumsum(differences).tolist() if differences else []
    return ModeSumTable(omega_b=omega_b, n=list(range(1, len(differences) + 1)), partial_sums=partial)


def kink_dirichlet_mode_sum_difference(a: float, n_max: int) -> ModeSumTable:
    """
    Diagnostic kink-minus-free Dirichlet mode sums with the bound-state frequency

    Raises:
        OutOfRegimeError: for a <= a_c
    """
    modes = kink_dirichlet_spectrum(a, n_max, with_wavefunctions=False)
    free = [math.pi * n / (2 * a) for n in range(1, n_max + 1)]
    ground = kink_ground_state(a)
    omega_b = Dispersion.MASSIVE.bound_omega(ground.kappa_b) if ground else None
    table = mode_sum_difference([m.k for m in modes], free, omega_b)
    logger.info(MODE_SUM_CAVEAT)
    return table
