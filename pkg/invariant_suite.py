"""
Cross-module invariant checks behind `qscatter verify`

Each check compares an observed error against a threshold scaled by a
user-supplied factor; the report lists every check with its outcome.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np

from dirichlet_limit import critical_separation, kink_ground_state
from kink_scattering import KinkDeltaParams, kink_amplitudes, kink_denominator, kink_jost_factors
from numeric_oracle import PotentialSpec, solve_bound_states_numeric, solve_scattering_numeric
from pole_analysis import PoleKind, find_poles, physical_bound_states
from scattering_core import (
    DeltaPairParams,
    System,
    delta_denominator,
    double_delta_amplitudes,
    jost_factors,
    s_matrix,
)
from utils.errors import VerificationError
from vacuum_energy import dirichlet_casimir_energy, zeta

logger = logging.getLogger(__name__)

FIGURE_SEPARATION = 1.0
FIGURE_COUPLINGS = (-0.1, -2.0, 0.1, 2.0)
# (bound, antibound, resonance pairs) expected at a = 1; None means not asserted
FIGURE_EXPECTED = {
    (System.TWO_DELTA, -0.1): (1, None, None),
    (System.TWO_DELTA, -2.0): (2, None, None),
    (System.TWO_DELTA, 0.1): (0, 1, None),
    (System.TWO_DELTA, 2.0): (0, None, 1),
    (System.KINK_DELTA, -0.1): (2, None, None),
    (System.KINK_DELTA, -2.0): (3, None, None),
    (System.KINK_DELTA, 0.1): (2, None, None),
    (System.KINK_DELTA, 2.0): (2, None, None),
}
KAPPA_AGREEMENT = 1e-6
DEFAULT_ORACLE_SAMPLES = 20


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    observed: float
    threshold: float
    detail: str = ""


@dataclass
class SuiteReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failed

    def raise_for_failures(self) -> None:
        if self.failed:
            raise VerificationError(self.failed)


class InvariantSuite:
    def __init__(self, tolerance_scale: float = 1.0, seed: int = 20240521,
                 oracle_samples: int = DEFAULT_ORACLE_SAMPLES, oracle_step: float = 5e-4):
        self.logger = logging.getLogger(__name__)
        self.tolerance_scale = tolerance_scale
        self.seed = seed
        self.oracle_samples = oracle_samples
        self.oracle_step = oracle_step
        self.report = SuiteReport()
        self.logger.info(f"Invariant suite initialized (tolerance scale {tolerance_scale})")

    def _record(self, name: str, observed: float, threshold: float, detail: str = "") -> None:
        limit = threshold * self.tolerance_scale
        passed = bool(np.isfinite(observed)) and observed <= limit
        self.report.checks.append(CheckResult(name, passed, float(observed), limit, detail))
        if not passed:
            self.logger.warning(f"Check {name} failed: {observed:.3e} > {limit:.3e}")

    def _run(self, name: str, threshold: float, check: Callable[[], Tuple[float, str]]) -> None:
        try:
            observed, detail = check()
        except Exception as e:
            self.logger.error(f"Check {name} raised: {str(e)}")
            self.report.checks.append(CheckResult(name, False, math.inf, threshold * self.tolerance_scale, str(e)))
            return
        self._record(name, observed, threshold, detail)

    def run_default(self, alpha: float = 0.0, beta: float = 0.0, a: float = 1.0) -> SuiteReport:
        """Unitarity, Jost identities, oracle equivalence and the closed-form constants"""
        rng = np.random.default_rng(self.seed)
        two = DeltaPairParams(alpha, beta, a)
        kink = KinkDeltaParams(alpha, beta, a)
        ks = np.linspace(0.01, 20.0, 1000)

        self._run("two_delta_unitarity", 1e-12,
                  lambda: (max(s_matrix(double_delta_amplitudes(two, k)).unitarity_defect() for k in ks), "1000-point sweep"))
        self._run("kink_flux_conservation", 1e-10,
                  lambda: (max(s_matrix(kink_amplitudes(kink, k)).unitarity_defect() for k in ks), "1000-point sweep"))

        points = rng.uniform(-10, 10, 100) + 1j * rng.uniform(-10, 10, 100)
        self._run("two_delta_jost_identity", 1e-12, lambda: (_jost_error(
            delta_denominator(DeltaPairParams(alpha, alpha, a), points),
            4 * jost_factors(alpha, a, points).J0 * jost_factors(alpha, a, points).J1), f"alpha=beta={alpha}"))
        self._run("kink_jost_identity", 1e-12, lambda: (_jost_error(
            kink_denominator(KinkDeltaParams(alpha, alpha, a), points),
            4 * kink_jost_factors(alpha, a, points).J0K * kink_jost_factors(alpha, a, points).J1K), f"alpha=beta={alpha}"))

        samples = [(alpha, beta, a, 1.3)] + [
            (rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.5, 2.0), rng.uniform(0.2, 3.0))
            for _ in range(self.oracle_samples)
        ]
        self._run("two_delta_oracle_equivalence", 1e-8, lambda: self._oracle_error(System.TWO_DELTA, samples))
        self._run("kink_oracle_equivalence", 1e-8, lambda: self._oracle_error(System.KINK_DELTA, samples))

        self._run("zeta_values", 1e-14, lambda: (max(abs(zeta(-1).value + 1 / 12),
                                                     abs(zeta(2).value - math.pi ** 2 / 6)), ""))
        self._run("dirichlet_casimir_energy", 1e-12, lambda: (max(
            abs(dirichlet_casimir_energy(w) / (-math.pi / (48 * w)) - 1) for w in (0.5, 1.0, 2.0)), "relative"))
        self._run("critical_separation", 1e-6, lambda: (abs(critical_separation() - 1.1996786), ""))
        self._run("critical_separation_residual", 1e-12,
                  lambda: (abs(critical_separation() * math.tanh(critical_separation()) - 1), ""))
        self._run("kink_ground_state", 5e-4, lambda: (abs(kink_ground_state(4.0).kappa_b - 0.9986), "a=4"))
        return self.report

    def _oracle_error(self, system: System, samples) -> Tuple[float, str]:
        worst, where = 0.0, ""
        for alpha, beta, a, k in samples:
            if system is System.TWO_DELTA:
                exact = double_delta_amplitudes(DeltaPairParams(alpha, beta, a), k)
                potential = PotentialSpec.two_delta(alpha, beta, a)
            else:
                exact = kink_amplitudes(KinkDeltaParams(alpha, beta, a), k)
                potential = PotentialSpec.kink_delta(alpha, beta, a)
            numeric = solve_scattering_numeric(potential, k, self.oracle_step).as_amplitudes()
            error = max(abs(x - y) for x, y in zip(exact.values(), numeric.values()))
            if error > worst:
                worst, where = error, f"alpha={alpha:.4g} beta={beta:.4g} a={a:.4g} k={k:.4g}"
        return worst, where

    def run_figures(self) -> SuiteReport:
        """Pole taxonomy at a = 1 against expected counts and the shooting oracle"""
        for (system, coupling), expected in FIGURE_EXPECTED.items():
            name = f"poles_{system.value}_{coupling:g}"
            self._run(name, KAPPA_AGREEMENT, lambda s=system, c=coupling, e=expected: self._figure_case(s, c, e))
        return self.report

    def _figure_case(self, system: System, coupling: float, expected) -> Tuple[float, str]:
        a = FIGURE_SEPARATION
        if system is System.TWO_DELTA:
            params = DeltaPairParams(coupling, coupling, a)
            potential = PotentialSpec.two_delta(coupling, coupling, a)
        else:
            params = KinkDeltaParams(coupling, coupling, a)
            potential = PotentialSpec.kink_delta(coupling, coupling, a)

        poles = find_poles(system, params)
        counts = (
            sum(p.kind is PoleKind.BOUND for p in poles),
            sum(p.kind is PoleKind.ANTIBOUND for p in poles),
            sum(p.kind is PoleKind.RESONANCE for p in poles) // 2,
        )
        detail = f"bound={counts[0]} antibound={counts[1]} resonance_pairs={counts[2]}"
        for want, got in zip(expected, counts):
            if want is not None and want != got:
                return math.inf, f"expected {expected}, found {detail}"

        analytic = physical_bound_states(poles)
        numeric = solve_bound_states_numeric(potential, step=self.oracle_step)
        if len(analytic) != len(numeric):
            return math.inf, f"pole kappas {analytic} vs oracle {numeric}"
        disagreement = max((abs(x - y) for x, y in zip(analytic, numeric)), default=0.0)
        return disagreement, detail


def _jost_error(direct, factored) -> float:
    direct = np.asarray(direct)
    return float(np.max(np.abs(direct - np.asarray(factored)) / np.maximum(np.abs(direct), 1e-300)))


def run_suite(alpha: float = 0.0, beta: float = 0.0, a: float = 1.0, figures: bool = False,
              tolerance_scale: float = 1.0, seed: int = 20240521,
              oracle_samples: int = DEFAULT_ORACLE_SAMPLES, oracle_step: float = 5e-4) -> SuiteReport:
    suite = InvariantSuite(tolerance_scale, seed, oracle_samples, oracle_step)
    suite.run_default(alpha, beta, a)
    if figures:
        suite.run_figures()
    return suite.report
