"""
Zeros of the scattering denominators in the complex momentum plane

Zeros are counted with the argument principle on rectangles (Gauss-Legendre
quadrature per edge), isolated by recursive subdivision, seeded with the first
moment of f'/f and polished by Newton iteration. Upper half plane zeros on the
imaginary axis are bound states, lower imaginary-axis zeros antibound
(virtual) states, and lower half plane mirror pairs k, -conj(k) resonances.

Functions handed to count_zeros must accept numpy arrays of complex momenta.
"""

import cmath
import functools
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from scipy.special import roots_legendre

from kink_scattering import KinkDeltaParams, kink_denominator, kink_jost_factors
from scattering_core import DeltaPairParams, System, delta_denominator, jost_factors
from utils.errors import (
    ContourProximityError,
    InvalidArgumentError,
    RefinementError,
    RootIsolationError,
    UnphysicalRootError,
)

logger = logging.getLogger(__name__)

AnalyticFunction = Callable[[Union[complex, np.ndarray]], Union[complex, np.ndarray]]

ORIGIN_GUARD = 1e-9
AXIS_TOLERANCE = 1e-9
DEDUP_TOLERANCE = 1e-8
BASIS_ZERO_TOLERANCE = 1e-7
NEWTON_TOLERANCE = 1e-12
MAX_NEWTON_ITERATIONS = 100
SPLIT_FRACTIONS = (0.5137, 0.4787, 0.5371, 0.4543, 0.5619)


class PoleKind(Enum):
    BOUND = "bound"
    ANTIBOUND = "antibound"
    RESONANCE = "resonance"


class Channel(Enum):
    J0 = "J0"
    J1 = "J1"
    FULL = "full"


_KIND_ORDER = {PoleKind.BOUND: 0, PoleKind.ANTIBOUND: 1, PoleKind.RESONANCE: 2}


@dataclass(frozen=True)
class Pole:
    """A classified zero of a scattering denominator

    basis_zero marks the k = +-i zeros of Delta^K coming from the degenerate
    window basis rather than from a normalizable state.
    """
    k: complex
    kind: PoleKind
    residual: float
    channel: Channel
    basis_zero: bool = False


@dataclass(frozen=True)
class SearchRegion:
    re_min: float = -1.8
    re_max: float = 1.8
    im_min: float = -0.8
    im_max: float = 2.5
    max_depth: int = 40
    nodes: int = 64
    max_nodes: int = 1024
    min_cell: float = 1e-6
    proximity_threshold: float = 1e8

    def __post_init__(self):
        values = (self.re_min, self.re_max, self.im_min, self.im_max)
        if not all(math.isfinite(v) for v in values):
            raise InvalidArgumentError(f"Search region bounds must be finite: {values}")
        if self.re_min >= self.re_max or self.im_min >= self.im_max:
            raise InvalidArgumentError(f"Search region is empty: {values}")
        if self.nodes < 2 or self.max_nodes < self.nodes:
            raise InvalidArgumentError("Quadrature node counts are inconsistent")

    @property
    def corners(self) -> Tuple[complex, complex, complex, complex]:
        return (complex(self.re_min, self.im_min), complex(self.re_max, self.im_min),
                complex(self.re_max, self.im_max), complex(self.re_min, self.im_max))

    @property
    def size(self) -> float:
        return max(self.re_max - self.re_min, self.im_max - self.im_min)

    def contains(self, k: complex, margin: float = 0.0) -> bool:
        return (self.re_min - margin <= k.real <= self.re_max + margin
                and self.im_min - margin <= k.imag <= self.im_max + margin)

    def split(self, fraction: float) -> Tuple['SearchRegion', 'SearchRegion']:
        """Cut the longer side at the given fraction of its length"""
        if self.re_max - self.re_min >= self.im_max - self.im_min:
            cut = self.re_min + fraction * (self.re_max - self.re_min)
            return replace(self, re_max=cut), replace(self, re_min=cut)
        cut = self.im_min + fraction * (self.im_max - self.im_min)
        return replace(self, im_max=cut), replace(self, im_min=cut)

    def nudged(self, amount: float) -> 'SearchRegion':
        return replace(self, re_min=self.re_min - amount, re_max=self.re_max + amount,
                       im_min=self.im_min - amount, im_max=self.im_max + amount)


@dataclass(frozen=True)
class ContourGrid:
    """Denominator samples on a rectangular grid, for plotting Re = 0 / Im = 0 curves"""
    re: np.ndarray
    im: np.ndarray
    values: np.ndarray  # shape (len(im), len(re))


@functools.lru_cache(maxsize=16)
def _gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_legendre(n)
    return (nodes + 1) / 2, weights / 2


def _derivative(f: AnalyticFunction, z):
    h = 1e-6 * np.maximum(1.0, np.abs(z))
    return (f(z + h) - f(z - h)) / (2 * h)


def _contour_moments(f: AnalyticFunction, region: SearchRegion, n: int) -> Tuple[complex, complex]:
    """(1/2 pi i) * (closed integral of f'/f, closed integral of z f'/f)"""
    u, w = _gauss_legendre(n)
    corners = region.corners
    zeroth, first = 0j, 0j
    for start, end in zip(corners, corners[1:] + corners[:1]):
        z = start + (end - start) * u
        values = f(z)
        if not np.all(np.isfinite(values)) or np.any(values == 0):
            raise ContourProximityError(f"Denominator vanishes or overflows on the contour of {region}")
        log_derivative = _derivative(f, z) / values
        if np.max(np.abs(log_derivative)) * abs(end - start) > region.proximity_threshold:
            raise ContourProximityError(f"Zero too close to the contour of {region}")
        zeroth += np.sum(w * log_derivative) * (end - start)
        first += np.sum(w * z * log_derivative) * (end - start)
    return zeroth / (2j * math.pi), first / (2j * math.pi)


def _winding(f: AnalyticFunction, region: SearchRegion) -> Tuple[int, complex]:
    """Converged winding number and the first moment, doubling the node count"""
    previous: Optional[complex] = None
    n = region.nodes
    while n <= region.max_nodes:
        zeroth, first = _contour_moments(f, region, n)
        if not (cmath.isfinite(zeroth) and cmath.isfinite(first)):
            raise ContourProximityError(f"Non-finite contour integral on {region}")
        near_integer = abs(zeroth.real - round(zeroth.real)) < 0.05 and abs(zeroth.imag) < 0.05
        if previous is not None and near_integer and abs(zeroth - previous) < 0.05:
            return int(round(zeroth.real)), first
        previous = zeroth
        n *= 2
    raise ContourProximityError(f"Winding number did not converge on {region} (last {previous})")


def count_zeros(f: AnalyticFunction, region: SearchRegion) -> int:
    """
    Number of zeros of f inside the rectangle, with multiplicity

    Raises:
        ContourProximityError: if a zero sits on or next to the contour
    """
    count, _ = _winding(f, region)
    if count < 0:
        raise ContourProximityError(f"Negative winding number {count} on {region}; f has poles inside?")
    return count


def refine_root(f: AnalyticFunction, seed: complex, tolerance: float = NEWTON_TOLERANCE,
                max_iterations: int = MAX_NEWTON_ITERATIONS) -> complex:
    """
    Newton iteration with a central-difference derivative

    Raises:
        RefinementError: when |f| < tolerance is not reached
    """
    z = complex(seed)
    for iteration in range(max_iterations + 1):
        value = complex(f(z))
        if abs(value) < tolerance:
            logger.debug(f"Newton converged to {z} after {iteration} iteration(s)")
            return z
        if iteration == max_iterations:
            break
        slope = complex(_derivative(f, z))
        if slope == 0 or not cmath.isfinite(slope):
            raise RefinementError(f"Vanishing derivative at {z}", z)
        z -= value / slope
        if not cmath.isfinite(z):
            raise RefinementError("Newton iteration diverged", z)
    raise RefinementError(f"Newton did not reach |f| < {tolerance:g} in {max_iterations} iterations", z)


def classify(k: complex) -> PoleKind:
    """Bound / antibound / resonance from the position of a zero"""
    k = complex(k)
    if abs(k) <= ORIGIN_GUARD:
        raise InvalidArgumentError("The origin is not classified")
    if abs(k.real) < AXIS_TOLERANCE:
        return PoleKind.BOUND if k.imag > 0 else PoleKind.ANTIBOUND
    if k.imag < 0:
        return PoleKind.RESONANCE
    raise UnphysicalRootError(f"Zero at {k} lies off the imaginary axis in the closed upper half plane")


def _count_in_cell(f: AnalyticFunction, cell: SearchRegion) -> Tuple[int, complex]:
    count, first = _winding(f, cell)
    if count < 0:
        raise ContourProximityError(f"Negative winding number on {cell}")
    return count, first


def _isolate(f: AnalyticFunction, cell: SearchRegion, count: int, first: complex,
             depth: int) -> List[complex]:
    if count == 0:
        return []
    if count == 1 or cell.size < cell.min_cell:
        # first moment / count is the root (or the centroid of a cluster)
        seed = first / count
        root = refine_root(f, seed)
        if not cell.contains(root, margin=1e-6):
            root = refine_root(f, complex((cell.re_min + cell.re_max) / 2, (cell.im_min + cell.im_max) / 2))
        return [root]
    if depth >= cell.max_depth:
        raise RootIsolationError(f"Could not separate {count} zeros inside {cell}")

    for fraction in SPLIT_FRACTIONS:
        low, high = cell.split(fraction)
        try:
            low_count, low_first = _count_in_cell(f, low)
            high_count, high_first = _count_in_cell(f, high)
        except ContourProximityError:
            continue
        if low_count + high_count != count:
            continue
        return (_isolate(f, low, low_count, low_first, depth + 1)
                + _isolate(f, high, high_count, high_first, depth + 1))

    raise ContourProximityError(f"Every trial split of {cell} passes too close to a zero")


def _nudged_count(f: AnalyticFunction, region: SearchRegion) -> Tuple[SearchRegion, int, complex]:
    last_error: Optional[ContourProximityError] = None
    for attempt in range(6):
        candidate = region if attempt == 0 else region.nudged(1e-3 * region.size * attempt * 1.37)
        try:
            count, first = _count_in_cell(f, candidate)
            if attempt:
                logger.info(f"Search region nudged outward to {candidate}")
            return candidate, count, first
        except ContourProximityError as e:
            last_error = e
    raise last_error


def find_zeros(f: AnalyticFunction, region: SearchRegion) -> List[complex]:
    """All zeros of f inside the region (after any outward nudge), deduplicated"""
    region, count, first = _nudged_count(f, region)
    roots = _isolate(f, region, count, first, 0)
    return _deduplicate(roots)


def _deduplicate(roots: List[complex]) -> List[complex]:
    unique: List[complex] = []
    for root in roots:
        if all(abs(root - other) > DEDUP_TOLERANCE for other in unique):
            unique.append(root)
    return unique


def denominator_function(system: System, params) -> AnalyticFunction:
    if system is System.TWO_DELTA:
        return lambda k: delta_denominator(params, k)
    return lambda k: kink_denominator(params, k)


def channel_functions(system: System, params) -> Dict[Channel, AnalyticFunction]:
    """Jost channels for equal couplings, otherwise the full denominator"""
    if not params.symmetric:
        return {Channel.FULL: denominator_function(system, params)}
    alpha, a = params.alpha, params.a
    if system is System.TWO_DELTA:
        return {
            Channel.J0: lambda k: jost_factors(alpha, a, k).J0,
            Channel.J1: lambda k: jost_factors(alpha, a, k).J1,
        }
    return {
        Channel.J0: lambda k: kink_jost_factors(alpha, a, k).J0K,
        Channel.J1: lambda k: kink_jost_factors(alpha, a, k).J1K,
    }


def _check_params(system: System, params) -> None:
    expected = DeltaPairParams if system is System.TWO_DELTA else KinkDeltaParams
    if not isinstance(params, expected):
        raise InvalidArgumentError(f"{system.value} needs {expected.__name__}, got {type(params).__name__}")


def find_poles(system: System, params, region: Optional[SearchRegion] = None) -> List[Pole]:
    """
    Locate and classify the zeros of a scattering denominator

    Args:
        system: Two-delta or kink plus delta
        params: DeltaPairParams or KinkDeltaParams
        region: Rectangle in the complex k plane

    Returns:
        Poles sorted bound, antibound, resonance; resonances come as mirror pairs
    """
    _check_params(system, params)
    region = region or SearchRegion()
    full = denominator_function(system, params)

    found: List[Tuple[complex, Channel]] = []
    for channel, f in channel_functions(system, params).items():
        for root in find_zeros(f, region):
            if abs(root) < ORIGIN_GUARD:
                continue
            if abs(root.real) < AXIS_TOLERANCE:
                root = complex(0.0, root.imag)
            if all(abs(root - other) > DEDUP_TOLERANCE for other, _ in found):
                found.append((root, channel))

    channel_of = dict(found)
    for root, channel in list(found):
        if classify(root) is not PoleKind.RESONANCE:
            continue
        mirror = -root.conjugate()
        if all(abs(mirror - other) > AXIS_TOLERANCE for other in channel_of):
            f = channel_functions(system, params)[channel]
            mirror = refine_root(f, mirror)
            found.append((mirror, channel))
            channel_of[mirror] = channel

    poles = []
    for root, channel in found:
        basis_zero = system is System.KINK_DELTA and min(abs(root - 1j), abs(root + 1j)) < BASIS_ZERO_TOLERANCE
        poles.append(Pole(
            k=root,
            kind=classify(root),
            residual=float(abs(full(root))),
            channel=channel,
            basis_zero=basis_zero,
        ))

    poles.sort(key=lambda p: (_KIND_ORDER[p.kind], -p.k.imag, p.k.real))
    logger.info(f"Found {len(poles)} poles for {system.value} {params}")
    return poles


def physical_bound_states(poles: List[Pole]) -> List[float]:
    """kappa of the bound states that are not window-basis artefacts, ascending"""
    return sorted(p.k.imag for p in poles if p.kind is PoleKind.BOUND and not p.basis_zero)


def zero_contour_grid(system: System, params, region: SearchRegion,
                      nx: int = 161, ny: int = 161) -> ContourGrid:
    _check_params(system, params)
    re = np.linspace(region.re_min, region.re_max, nx)
    im = np.linspace(region.im_min, region.im_max, ny)
    grid = re[np.newaxis, :] + 1j * im[:, np.newaxis]
    return ContourGrid(re=re, im=im, values=np.asarray(denominator_function(system, params)(grid)))
