"""
Impenetrable-wall limit (alpha, beta -> infinity)

Two-delta walls leave the box modes k_n = pi*n/(2a). With the Poschl-Teller
well between the walls the allowed momenta solve h_odd(k) = 0 or h_even(k) = 0,
where

    h_odd(k)  = e^{2iak}(k + it) - (k - it) = 2i e^{iak} (k sin ak + t cos ak)
    h_even(k) = e^{2iak}(k + it) + (k - it) = 2  e^{iak} (k cos ak - t sin ak)

and t = tanh(a). The real brackets in parentheses are the one-dimensional
reductions used for root isolation.
"""

import functools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import brentq

from kink_scattering import KinkDeltaParams
from pole_analysis import refine_root
from scattering_core import System, quadratic_coefficient
from utils.errors import (
    InvalidArgumentError,
    NumericDegeneracyError,
    OutOfRegimeError,
    RootIsolationError,
)
from utils.validation import require_positive, require_positive_int

logger = logging.getLogger(__name__)

ROOT_TOLERANCE = 1e-10
GROUND_STATE_EPSILON = 1e-8
DEFAULT_GRID_POINTS = 801


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"


class Normalization(Enum):
    UNNORMALIZED = "unnormalized"
    L2 = "l2"


@dataclass(frozen=True)
class SampledWaveFunction:
    """Complex samples of a wave function on a real grid"""
    x: np.ndarray
    values: np.ndarray
    normalization: Normalization = Normalization.UNNORMALIZED

    def norm(self) -> float:
        return float(np.sqrt(trapezoid(np.abs(self.values) ** 2, self.x)))

    def normalized(self) -> 'SampledWaveFunction':
        norm = self.norm()
        if norm == 0.0:
            raise NumericDegeneracyError("Cannot L2-normalize an identically null wave function")
        return SampledWaveFunction(self.x, self.values / norm, Normalization.L2)

    def boundary_values(self) -> Tuple[complex, complex]:
        return complex(self.values[0]), complex(self.values[-1])


@dataclass(frozen=True)
class DirichletMode:
    n: int
    k: float
    parity: Parity
    system: System
    wavefunction: Optional[SampledWaveFunction] = None

    @property
    def omega(self) -> float:
        """Mode frequency: |k| for the two-delta box, sqrt(k^2 + 1) with the kink"""
        if self.system is System.TWO_DELTA:
            return abs(self.k)
        return math.sqrt(self.k * self.k + 1.0)


@dataclass(frozen=True)
class GroundStateRoot:
    kappa_b: float
    a: float
    omega: float


def _tanh(a: float) -> float:
    return KinkDeltaParams(0.0, 0.0, a).t


def _box_grid(a: float, grid_points: int) -> np.ndarray:
    return np.linspace(-a, a, grid_points)


def delta_dirichlet_momenta(a: float, n_max: int, grid_points: int = DEFAULT_GRID_POINTS,
                            normalization: Normalization = Normalization.UNNORMALIZED) -> List[DirichletMode]:
    """
    Box modes k_n = pi*n/(2a), n = 1..n_max

    Even n are sine (odd) modes, odd n cosine (even) modes.
    """
    a = require_positive("a", a)
    n_max = require_positive_int("n_max", n_max)
    x = _box_grid(a, grid_points)

    modes = []
    for n in range(1, n_max + 1):
        k = math.pi * n / (2 * a)
        if n % 2 == 0:
            parity, values = Parity.ODD, np.sin(k * x)
        else:
            parity, values = Parity.EVEN, np.cos(k * x)
        psi = SampledWaveFunction(x, values.astype(complex))
        if normalization is Normalization.L2:
            psi = psi.normalized()
        modes.append(DirichletMode(n, k, parity, System.TWO_DELTA, psi))
    return modes


def dirichlet_spectral_function(k, a: float):
    """h_D(k) = 4i sin(2ak), so that e^{4iak} - 1 = e^{2iak} h_D(k) / 2"""
    return 4j * np.sin(2 * a * k)


def strong_coupling_roots(alpha: float, beta: float, a: float, n_max: int) -> List[complex]:
    """
    Zeros of Delta(k) near the box momenta for large couplings

    Newton runs on Delta/(alpha*beta), seeded at each k_n, which keeps the
    iteration well scaled for couplings of order 1e8.
    """
    if alpha * beta == 0:
        raise InvalidArgumentError("Strong-coupling roots need two non-zero couplings")
    a = require_positive("a", a)
    n_max = require_positive_int("n_max", n_max)

    def scaled_denominator(k):
        return quadratic_coefficient(k, a) + (4 * k * k + 2j * k * (alpha + beta)) / (alpha * beta)

    return [refine_root(scaled_denominator, complex(math.pi * n / (2 * a))) for n in range(1, n_max + 1)]


def h_odd(k, a: float):
    t = _tanh(a)
    value = np.exp(2j * a * k) * (k + 1j * t) - (k - 1j * t)
    return complex(value) if np.ndim(value) == 0 else value


def h_even(k, a: float):
    t = _tanh(a)
    value = np.exp(2j * a * k) * (k + 1j * t) + (k - 1j * t)
    return complex(value) if np.ndim(value) == 0 else value


def _odd_reduction(k, a: float, t: float):
    return k * np.sin(a * k) + t * np.cos(a * k)


def _even_reduction(k, a: float, t: float):
    return k * np.cos(a * k) - t * np.sin(a * k)


def _odd_reduction_derivative(k: float, a: float, t: float) -> float:
    return math.sin(a * k) + a * k * math.cos(a * k) - a * t * math.sin(a * k)


def _even_reduction_derivative(k: float, a: float, t: float) -> float:
    return math.cos(a * k) - a * k * math.sin(a * k) - a * t * math.cos(a * k)


def kink_quadratic_coefficient(k, a: float):
    """
    Coefficient of alpha^2 in Delta^K at equal couplings

    (t + ik)^2 - e^{4iak}(t - ik)^2, which factorises as h_odd(k)*h_even(k).
    """
    t = _tanh(a)
    return (t + 1j * k) ** 2 - np.exp(4j * a * k) * (t - 1j * k) ** 2


def first_order_denominator(k, a: float):
    """
    Delta_1^K(k), fixing the finite zone amplitudes at the Dirichlet roots

    s^2 (t(e^{4iak} - 1) - ik(3 + e^{4iak})) - 2ik(k^2 - 2ikt - 1)
    """
    params = KinkDeltaParams(0.0, 0.0, a)
    s, t = params.s, params.t
    e4 = np.exp(4j * a * k)
    return s * s * (t * (e4 - 1) - 1j * k * (3 + e4)) - 2j * k * (k * k - 2j * k * t - 1)


def limiting_zone_amplitudes(k: float, a: float) -> Tuple[complex, complex]:
    """
    (A, B) in the window as alpha = beta -> infinity at a Dirichlet root

    A = k(k - it)/Delta_1^K, B = k e^{2iak}(k + it)/Delta_1^K; A = B at odd
    roots and A = -B at even roots.
    """
    t = _tanh(a)
    denominator = complex(first_order_denominator(k, a))
    if denominator == 0:
        raise NumericDegeneracyError(f"Delta_1^K vanished at k={k!r}")
    return (
        k * (k - 1j * t) / denominator,
        k * np.exp(2j * a * k) * (k + 1j * t) / denominator,
    )


@functools.lru_cache(maxsize=1)
def critical_separation() -> float:
    """Separation a_c solving a*tanh(a) = 1, below which the imaginary root disappears"""
    return brentq(lambda a: a * math.tanh(a) - 1.0, 0.5, 2.0, xtol=1e-15)


def _ground_state_function(kappa: float, a: float, t: float) -> float:
    """-i*h_even(i*kappa) = (kappa + t)e^{-2a kappa} + kappa - t"""
    return (kappa + t) * math.expm1(-2 * a * kappa) + 2 * kappa


def kink_ground_state(a: float) -> Optional[GroundStateRoot]:
    """
    Imaginary root k = i*kappa_b of h_even in the long-separation regime

    Args:
        a: Half-separation

    Returns:
        GroundStateRoot, or None when a <= a_c
    """
    a = require_positive("a", a)
    if a <= critical_separation():
        logger.debug(f"No imaginary root below the critical separation (a={a})")
        return None

    t = _tanh(a)
    lower = _ground_state_function(GROUND_STATE_EPSILON, a, t)
    if lower >= 0:
        # threshold so close that the root is not resolvable above epsilon
        logger.warning(f"Imaginary root at a={a} lies below kappa={GROUND_STATE_EPSILON}")
        return None

    if _ground_state_function(1.0, a, t) <= 0:
        kappa_b = 1.0
    else:
        kappa_b = brentq(_ground_state_function, GROUND_STATE_EPSILON, 1.0, args=(a, t), xtol=1e-15)

    return GroundStateRoot(kappa_b=kappa_b, a=a, omega=math.sqrt(max(0.0, 1.0 - kappa_b * kappa_b)))


def kink_mode_wavefunction(k, parity: Parity, grid: Sequence[float],
                           normalization: Normalization = Normalization.UNNORMALIZED,
                           a: Optional[float] = None) -> SampledWaveFunction:
    """
    Window shape of a Dirichlet mode

    Odd: k sin kx + tanh x cos kx; Even: k cos kx - tanh x sin kx. The
    amplitude prefactor is not applied.
    """
    x = np.asarray(grid, dtype=float)
    if a is not None and (x.min() < -a - 1e-12 or x.max() > a + 1e-12):
        raise InvalidArgumentError(f"Grid leaves the window [-{a}, {a}]")

    if parity is Parity.ODD:
        values = k * np.sin(k * x) + np.tanh(x) * np.cos(k * x)
    else:
        values = k * np.cos(k * x) - np.tanh(x) * np.sin(k * x)

    psi = SampledWaveFunction(x, np.asarray(values, dtype=complex))
    if normalization is Normalization.L2:
        psi = psi.normalized()
    return psi


def _polish(root: float, reduction, derivative, a: float, t: float) -> float:
    slope = derivative(root, a, t)
    if slope == 0:
        return root
    return root - float(reduction(root, a, t)) / slope


def kink_dirichlet_spectrum(a: float, count: int, with_wavefunctions: bool = True,
                            grid_points: int = DEFAULT_GRID_POINTS,
                            normalization: Normalization = Normalization.UNNORMALIZED) -> List[DirichletMode]:
    """
    The `count` smallest positive momenta with h_odd(k) = 0 or h_even(k) = 0

    Args:
        a: Half-separation, must exceed the critical separation
        count: Number of modes
        with_wavefunctions: Attach sampled window shapes
        grid_points: Samples on [-a, a]
        normalization: Shape normalization

    Returns:
        Modes sorted by momentum, numbered from 1
    """
    a = require_positive("a", a)
    count = require_positive_int("count", count)
    a_c = critical_separation()
    if a <= a_c:
        raise OutOfRegimeError(f"Short-separation spectrum (a={a} <= a_c={a_c:.7f}) is not supported")

    t = _tanh(a)
    step = min(0.01, math.pi / (20 * a))
    chunk = 2000
    k_limit = 4.0 * math.pi * (count + 2) / a + 10.0

    families = (
        (Parity.ODD, _odd_reduction, _odd_reduction_derivative),
        (Parity.EVEN, _even_reduction, _even_reduction_derivative),
    )
    roots: List[Tuple[float, Parity]] = []
    start = step

    while True:
        grid = start + step * np.arange(chunk + 1)
        for parity, reduction, derivative in families:
            values = reduction(grid, a, t)
            for i in np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) <= 0)[0]:
                left, right = grid[i], grid[i + 1]
                if values[i] == 0 and i > 0:
                    continue  # already caught as the right end of the previous bracket
                if values[i + 1] == 0:
                    root = float(right)
                elif values[i] == 0:
                    root = float(left)
                else:
                    root = brentq(reduction, left, right, args=(a, t), xtol=1e-15)
                root = _polish(root, reduction, derivative, a, t)
                roots.append((root, parity))

        roots.sort(key=lambda item: item[0])
        edge = float(grid[-1])
        if len(roots) >= count:
            break
        if edge > k_limit:
            raise RootIsolationError(
                f"Found {len(roots)} of {count} roots below k={edge:.3f} for a={a}",
                grid=grid.tolist(), values=_even_reduction(grid, a, t).tolist()
            )
        start = edge

    modes = []
    x = _box_grid(a, grid_points)
    for n, (k, parity) in enumerate(roots[:count], start=1):
        residual = abs(h_odd(k, a) if parity is Parity.ODD else h_even(k, a))
        if residual >= ROOT_TOLERANCE:
            raise RootIsolationError(f"Root k={k} ({parity.value}) has residual {residual:.2e}")
        psi = kink_mode_wavefunction(k, parity, x, normalization) if with_wavefunctions else None
        modes.append(DirichletMode(n, k, parity, System.KINK_DELTA, psi))

    logger.debug(f"Kink Dirichlet spectrum a={a}: {[round(m.k, 6) for m in modes]}")
    return modes
