"""
Direct numerical solution of -psi'' + U(x) psi = omega^2 psi

Independent of the closed forms: fixed-step RK4 through the smooth parts,
exact jump conditions psi'(p+) - psi'(p-) = g psi(p) at each delta, plane-wave
matching outside the support. Bound states come from a shooting method on the
Wronskian of the two decaying solutions.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from dirichlet_limit import SampledWaveFunction
from kink_scattering import pt_mode, pt_mode_derivative
from scattering_core import Amplitudes
from utils.errors import AccuracyError, InvalidArgumentError, InvalidGridError
from utils.validation import require_finite, require_positive, require_real_momentum

logger = logging.getLogger(__name__)

MAX_STEP = 1e-3
DEFAULT_STEP = 5e-4
DEFAULT_MARGIN = 12.0
DEFAULT_KAPPA_RANGE = (1e-3, 10.0)


class SmoothTerm(Enum):
    NONE = "none"
    TRUNCATED_PT = "truncated-pt"  # 1 - 2 sech^2 x inside [-window, window], 1 outside
    FULL_LINE_PT = "full-line-pt"  # -2 sech^2 x everywhere


@dataclass(frozen=True)
class PotentialSpec:
    """Delta terms (strength, position) plus an optional smooth term"""
    deltas: Tuple[Tuple[float, float], ...] = ()
    smooth: SmoothTerm = SmoothTerm.NONE
    window: float = 0.0
    x_max: Optional[float] = None

    def __post_init__(self):
        deltas = tuple((require_finite("strength", g), require_finite("position", p)) for g, p in self.deltas)
        object.__setattr__(self, "deltas", deltas)
        if self.smooth is SmoothTerm.TRUNCATED_PT:
            require_positive("window", self.window)

        extent = max([abs(p) for _, p in deltas] + [self.window])
        x_max = self.x_max if self.x_max is not None else extent + DEFAULT_MARGIN
        require_positive("x_max", x_max)
        if any(abs(p) >= x_max for _, p in deltas) or self.window > x_max:
            raise InvalidArgumentError(f"Potential features must lie strictly inside (-{x_max}, {x_max})")
        object.__setattr__(self, "x_max", float(x_max))

    @classmethod
    def free(cls) -> 'PotentialSpec':
        return cls()

    @classmethod
    def single_delta(cls, strength: float, position: float = 0.0) -> 'PotentialSpec':
        return cls(deltas=((strength, position),))

    @classmethod
    def two_delta(cls, alpha: float, beta: float, a: float) -> 'PotentialSpec':
        return cls(deltas=((alpha, -a), (beta, a)))

    @classmethod
    def kink_delta(cls, alpha: float, beta: float, a: float) -> 'PotentialSpec':
        return cls(deltas=((alpha, -a), (beta, a)), smooth=SmoothTerm.TRUNCATED_PT, window=a)

    @classmethod
    def truncated_pt(cls, a: float) -> 'PotentialSpec':
        return cls(smooth=SmoothTerm.TRUNCATED_PT, window=a)

    @classmethod
    def full_line_pt(cls, x_max: float = DEFAULT_MARGIN) -> 'PotentialSpec':
        return cls(smooth=SmoothTerm.FULL_LINE_PT, x_max=x_max)

    @property
    def offset(self) -> float:
        """Constant value of U outside the support"""
        return 1.0 if self.smooth is SmoothTerm.TRUNCATED_PT else 0.0

    @property
    def support(self) -> Optional[Tuple[float, float]]:
        if self.smooth is SmoothTerm.FULL_LINE_PT:
            return -self.x_max, self.x_max
        features = [p for _, p in self.deltas]
        if self.smooth is SmoothTerm.TRUNCATED_PT:
            features += [-self.window, self.window]
        if not features:
            return None
        return min(features), max(features)

    def jumps(self) -> Dict[float, float]:
        table: Dict[float, float] = {}
        for strength, position in self.deltas:
            table[position] = table.get(position, 0.0) + strength
        return table

    def breakpoints(self) -> List[float]:
        points = [p for _, p in self.deltas]
        if self.smooth is SmoothTerm.TRUNCATED_PT:
            points += [-self.window, self.window]
        return points

    def smooth_value(self, x: np.ndarray, inside: Optional[bool] = None) -> np.ndarray:
        """
        Smooth part of U at x (offset included)

        `inside` pins the truncated well's branch for samples on a window edge.
        """
        x = np.asarray(x, dtype=float)
        if self.smooth is SmoothTerm.NONE:
            return np.zeros_like(x)
        sech_sq = 1.0 / np.cosh(x) ** 2
        if self.smooth is SmoothTerm.FULL_LINE_PT:
            return -2.0 * sech_sq
        if inside is None:
            inside_mask = np.abs(x) <= self.window
        else:
            inside_mask = np.full(x.shape, inside)
        return np.where(inside_mask, 1.0 - 2.0 * sech_sq, 1.0)


@dataclass(frozen=True)
class OracleScatteringResult:
    k: float
    sigma_r: complex
    sigma_l: complex
    rho_r: complex
    rho_l: complex
    step: float
    x_max: float
    A_r: Optional[complex] = None
    B_r: Optional[complex] = None
    A_l: Optional[complex] = None
    B_l: Optional[complex] = None
    sample_point: Optional[float] = field(default=None)

    @property
    def sigma(self) -> complex:
        return self.sigma_r

    def flux_defect(self) -> float:
        return max(abs(abs(self.sigma_r) ** 2 + abs(self.rho_r) ** 2 - 1.0),
                   abs(abs(self.sigma_l) ** 2 + abs(self.rho_l) ** 2 - 1.0))

    def as_amplitudes(self) -> Amplitudes:
        if self.A_r is None:
            raise InvalidArgumentError("Zone amplitudes were not sampled for this potential")
        return Amplitudes(k=self.k, sigma_r=self.sigma_r, sigma_l=self.sigma_l,
                          rho_r=self.rho_r, rho_l=self.rho_l,
                          A_r=self.A_r, B_r=self.B_r, A_l=self.A_l, B_l=self.B_l)


def _check_step(step: float) -> float:
    step = require_positive("step", step)
    if step > MAX_STEP:
        raise AccuracyError(f"RK4 step {step} exceeds the accuracy limit {MAX_STEP}")
    return step


def _segment_potential(potential: PotentialSpec, x0: float, x1: float) -> Callable[[np.ndarray], np.ndarray]:
    inside = abs(0.5 * (x0 + x1)) < potential.window
    return lambda x: potential.smooth_value(x, inside=inside)


def _rk4_segment(u_of_x, x0: float, x1: float, psi, dpsi, omega_sq, step: float):
    """psi'' = (U - omega^2) psi from x0 to x1; psi may be scalar or array"""
    n = max(1, math.ceil(abs(x1 - x0) / step - 1e-9))
    h = (x1 - x0) / n
    u = u_of_x(x0 + 0.5 * h * np.arange(2 * n + 1)).tolist()
    hh, h6 = 0.5 * h, h / 6.0

    for i in range(n):
        q0 = u[2 * i] - omega_sq
        qm = u[2 * i + 1] - omega_sq
        q1 = u[2 * i + 2] - omega_sq
        k1p, k1d = dpsi, q0 * psi
        k2p, k2d = dpsi + hh * k1d, qm * (psi + hh * k1p)
        k3p, k3d = dpsi + hh * k2d, qm * (psi + hh * k2p)
        k4p, k4d = dpsi + h * k3d, q1 * (psi + h * k3p)
        psi = psi + h6 * (k1p + 2 * k2p + 2 * k3p + k4p)
        dpsi = dpsi + h6 * (k1d + 2 * k2d + 2 * k3d + k4d)
    return psi, dpsi


def _integrate(potential: PotentialSpec, x_from: float, x_to: float, psi, dpsi, omega_sq, step: float,
               jumps: Dict[float, float], record: Optional[float] = None, rightward: Optional[bool] = None):
    """
    Carry (psi, psi') from x_from to x_to

    Jumps listed in `jumps` are applied at every position in the closed
    interval, the start point included. Returns (psi, psi', recorded) where
    recorded holds the values at `record`. `rightward` fixes the direction
    when x_from == x_to.
    """
    lo, hi = min(x_from, x_to), max(x_from, x_to)
    points = {x_from, x_to}
    points.update(p for p in potential.breakpoints() if lo < p < hi)
    if record is not None and lo < record < hi:
        points.add(record)
    if rightward is None:
        rightward = x_to > x_from
    ordered = sorted(points, reverse=not rightward)

    def apply_jump(x, psi, dpsi):
        strength = jumps.get(x)
        if strength is None:
            return dpsi
        return dpsi + strength * psi if rightward else dpsi - strength * psi

    recorded = None
    dpsi = apply_jump(ordered[0], psi, dpsi)
    for x0, x1 in zip(ordered, ordered[1:]):
        psi, dpsi = _rk4_segment(_segment_potential(potential, x0, x1), x0, x1, psi, dpsi, omega_sq, step)
        if record is not None and x1 == record:
            recorded = (psi, dpsi)
        dpsi = apply_jump(x1, psi, dpsi)
    return psi, dpsi, recorded


def _plane_wave_split(psi: complex, dpsi: complex, k: float, x: float) -> Tuple[complex, complex]:
    """Coefficients (c+, c-) of e^{ikx}, e^{-ikx} matching (psi, psi') at x"""
    ratio = dpsi / (1j * k)
    return 0.5 * (psi + ratio) * cmath.exp(-1j * k * x), 0.5 * (psi - ratio) * cmath.exp(1j * k * x)


def _zone_split(potential: PotentialSpec, psi: complex, dpsi: complex, k: float, x: float) -> Tuple[complex, complex]:
    """Coefficients of the window basis (f_k, f_{-k}) or plane waves at x"""
    if potential.smooth is SmoothTerm.NONE:
        return _plane_wave_split(psi, dpsi, k, x)
    basis = np.array([[pt_mode(k, x), pt_mode(-k, x)],
                      [pt_mode_derivative(k, x), pt_mode_derivative(-k, x)]], dtype=complex)
    a_coef, b_coef = np.linalg.solve(basis, np.array([psi, dpsi], dtype=complex))
    return complex(a_coef), complex(b_coef)


def _window_sample_point(potential: PotentialSpec, left: float, right: float) -> Optional[float]:
    if left < 0.0 < right and 0.0 not in potential.jumps():
        return 0.0
    return None


def solve_scattering_numeric(potential: PotentialSpec, k: float, step: float = DEFAULT_STEP) -> OracleScatteringResult:
    """
    Transmission and reflection amplitudes by direct integration

    Args:
        potential: Potential description
        k: Asymptotic momentum (omega^2 = k^2 + offset)
        step: RK4 step, at most 1e-3

    Returns:
        Amplitudes for both incidences; window amplitudes when x = 0 is sampled
    """
    k = require_real_momentum(k)
    step = _check_step(step)
    support = potential.support
    if support is None:
        return OracleScatteringResult(k, 1 + 0j, 1 + 0j, 0j, 0j, step, potential.x_max,
                                      1 + 0j, 0j, 0j, 1 + 0j, None)

    if potential.smooth is SmoothTerm.FULL_LINE_PT and 4.0 * math.exp(-2.0 * potential.x_max) > 1e-9:
        logger.warning(f"x_max={potential.x_max} truncates the Poschl-Teller tail noticeably")

    left, right = support
    omega_sq = k * k + potential.offset
    jumps = potential.jumps()
    sample_point = _window_sample_point(potential, left, right)

    # incident from the left: sigma e^{ikx} beyond the right edge
    psi0 = cmath.exp(1j * k * right)
    psi, dpsi, at_sample_r = _integrate(potential, right, left, psi0, 1j * k * psi0, omega_sq, step,
                                       jumps, sample_point, rightward=False)
    c_plus, c_minus = _plane_wave_split(psi, dpsi, k, left)
    sigma_r, rho_r = 1 / c_plus, c_minus / c_plus

    # incident from the right: sigma e^{-ikx} beyond the left edge
    psi0 = cmath.exp(-1j * k * left)
    psi, dpsi, at_sample_l = _integrate(potential, left, right, psi0, -1j * k * psi0, omega_sq, step,
                                       jumps, sample_point, rightward=True)
    d_plus, d_minus = _plane_wave_split(psi, dpsi, k, right)
    sigma_l, rho_l = 1 / d_minus, d_plus / d_minus

    zone: List[Optional[complex]] = [None] * 4
    if sample_point is not None:
        a_r, b_r = _zone_split(potential, *at_sample_r, k, sample_point)
        a_l, b_l = _zone_split(potential, *at_sample_l, k, sample_point)
        zone = [a_r * sigma_r, b_r * sigma_r, a_l * sigma_l, b_l * sigma_l]

    result = OracleScatteringResult(k, sigma_r, sigma_l, rho_r, rho_l, step, potential.x_max, *zone, sample_point)
    logger.debug(f"Oracle k={k}: flux defect {result.flux_defect():.2e}")
    return result


def _wronskian(potential: PotentialSpec, kappa, step: float):
    """Wronskian of the solutions decaying to the left and to the right, matched mid-support"""
    left, right = potential.support
    middle = 0.5 * (left + right)
    jumps = potential.jumps()
    left_jumps = {p: g for p, g in jumps.items() if p <= middle}
    right_jumps = {p: g for p, g in jumps.items() if p > middle}
    omega_sq = potential.offset - kappa * kappa

    one = np.ones_like(kappa) if np.ndim(kappa) else 1.0
    psi_l, dpsi_l, _ = _integrate(potential, left, middle, one, kappa * one, omega_sq, step, left_jumps, rightward=True)
    psi_r, dpsi_r, _ = _integrate(potential, right, middle, one, -kappa * one, omega_sq, step, right_jumps, rightward=False)
    return psi_l * dpsi_r - dpsi_l * psi_r


def solve_bound_states_numeric(potential: PotentialSpec,
                               kappa_range: Tuple[float, float] = DEFAULT_KAPPA_RANGE,
                               samples: int = 1000, step: float = DEFAULT_STEP) -> List[float]:
    """
    Decay constants kappa of the bound states (omega^2 = offset - kappa^2)

    Args:
        potential: Potential description
        kappa_range: Search interval inside (0, inf)
        samples: Scan points for bracketing
        step: RK4 step

    Returns:
        Ascending kappa values; empty when no sign change is found
    """
    step = _check_step(step)
    lo, hi = kappa_range
    lo, hi = require_positive("kappa_min", lo), require_positive("kappa_max", hi)
    if lo >= hi:
        raise InvalidArgumentError(f"Empty kappa range {kappa_range}")
    if potential.support is None:
        return []
    if potential.smooth is SmoothTerm.FULL_LINE_PT and lo * potential.x_max < 18.0:
        logger.warning(f"x_max={potential.x_max} is short for decay constants near kappa={lo}")

    grid = np.linspace(lo, hi, samples)
    values = _wronskian(potential, grid, step)

    roots = []
    for i in np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)[0]:
        roots.append(brentq(lambda q: float(_wronskian(potential, q, step)), grid[i], grid[i + 1], xtol=1e-12))
    roots.extend(float(grid[i]) for i in np.nonzero(values == 0)[0])

    logger.debug(f"Oracle bound states: {roots}")
    return sorted(roots)


def ode_residual(psi: SampledWaveFunction, potential: PotentialSpec, omega_sq: float) -> float:
    """
    max |-psi'' + U psi - omega^2 psi| over interior points, central differences

    Raises:
        InvalidGridError: non-uniform grid, too few points or a delta inside the span
    """
    x = np.asarray(psi.x, dtype=float)
    if x.size < 3:
        raise InvalidGridError("Need at least three grid points")
    spacing = np.diff(x)
    h = spacing.mean()
    if h <= 0 or not np.allclose(spacing, h, rtol=1e-6, atol=0.0):
        raise InvalidGridError("Grid must be uniform and ascending")
    interior = x[1:-1]
    if any(interior[0] <= p <= interior[-1] for _, p in potential.deltas):
        raise InvalidGridError("A delta lies inside the sampled span")

    values = np.asarray(psi.values)
    second = (values[2:] - 2 * values[1:-1] + values[:-2]) / (h * h)
    residual = -second + (potential.smooth_value(interior) - omega_sq) * values[1:-1]
    return float(np.max(np.abs(residual)))
