"""
Precondition checks shared by the numeric modules
"""

import math
from numbers import Integral, Real

from utils.errors import InvalidArgumentError


def require_finite(name: str, value: float) -> float:
    """Reject NaN/inf and non-numeric values"""
    if isinstance(value, bool) or not isinstance(value, Real) or not math.isfinite(value):
        raise InvalidArgumentError(f"{name} must be a finite real number, got {value!r}")
    return float(value)


def require_positive(name: str, value: float) -> float:
    value = require_finite(name, value)
    if value <= 0.0:
        raise InvalidArgumentError(f"{name} must be > 0, got {value!r}")
    return value


def require_positive_int(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral) or value < 1:
        raise InvalidArgumentError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def require_real_momentum(k: float) -> float:
    """Real-axis evaluations need k > 0 (all amplitudes are ratios vanishing at k = 0)"""
    return require_positive("k", k)
