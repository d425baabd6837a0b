#!/usr/bin/env python3
"""
qscatter command-line front end

Subcommands emit JSON or CSV tables:
    amplitudes  scattering coefficients on a momentum grid
    spectrum    Dirichlet-limit spectra, kink ground state, critical separation
    poles       classified denominator zeros, or zero-curve sample grids
    casimir     Dirichlet Casimir energy, zeta mode sums, vacuum-energy integrand
    verify      cross-module invariant suite

Exit codes: 0 success, 2 invalid arguments, 3 computation error, 4 failed verification.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from dirichlet_limit import critical_separation, delta_dirichlet_momenta, kink_dirichlet_spectrum, kink_ground_state
from invariant_suite import DEFAULT_ORACLE_SAMPLES, FIGURE_SEPARATION, run_suite
from kink_scattering import KinkDeltaParams, kink_amplitudes
from pole_analysis import SearchRegion, find_poles, zero_contour_grid
from scattering_core import (
    DeltaPairParams,
    System,
    double_delta_amplitudes,
    s_matrix,
    track_phase_shifts,
)
from utils.config import Settings
from utils.errors import InvalidArgumentError, QScatterError, VerificationError
from utils.logger import log_performance, setup_logger
from utils.sweep_pool import SweepPool
from utils.table_writer import ResultTable
from vacuum_energy import (
    continuum_vacuum_energy,
    default_dispersion,
    dirichlet_casimir_energy,
    kink_dirichlet_mode_sum_difference,
    zeta_regularized_mode_sum,
)

__version__ = "0.1.0"

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID_ARGUMENTS = 2
EXIT_COMPUTATION_ERROR = 3
EXIT_VERIFICATION_FAILED = 4

BASIS_ZERO_NOTE = "basis_zero rows are zeros of the window basis at k = +-i, not normalizable bound states"


class RunConfig(BaseModel):
    """Validated parameters of one invocation"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    subcommand: Literal["amplitudes", "spectrum", "poles", "casimir", "verify"]
    system: Literal["two-delta", "kink"] = "two-delta"
    alpha: float = Field(0.0, allow_inf_nan=False)
    beta: float = Field(0.0, allow_inf_nan=False)
    a: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    k: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    k_min: float = Field(0.05, gt=0, allow_inf_nan=False)
    k_max: float = Field(10.0, gt=0, allow_inf_nan=False)
    samples: int = Field(200, ge=2)
    phases: bool = False
    count: int = Field(6, ge=1)
    critical: bool = False
    re_min: float = -1.8
    re_max: float = 1.8
    im_min: float = -0.8
    im_max: float = 2.5
    contours: bool = False
    grid: int = Field(101, ge=2)
    mode: Optional[Literal["dirichlet", "zeta", "integrand", "mode-sum"]] = None
    s: Optional[str] = None
    n_max: int = Field(20, ge=1)
    figures: bool = False
    tolerance_scale: float = Field(1.0, gt=0)
    oracle_samples: int = Field(DEFAULT_ORACLE_SAMPLES, ge=0)
    output_format: Literal["csv", "json"] = "json"
    output: Optional[str] = None

    @field_validator("s")
    @classmethod
    def _parse_s(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            complex(value.replace(" ", ""))
        return value

    @model_validator(mode="after")
    def _check_ranges(self) -> 'RunConfig':
        if self.k_min >= self.k_max:
            raise ValueError("k_min must be smaller than k_max")
        if self.re_min >= self.re_max or self.im_min >= self.im_max:
            raise ValueError("pole search region is empty")
        if self.mode == "zeta" and self.s is None:
            raise ValueError("--zeta needs --s")
        return self

    @property
    def s_value(self) -> complex:
        return complex(self.s.replace(" ", ""))

    @property
    def system_enum(self) -> System:
        return System(self.system)

    def separation(self, default: float = 1.0) -> float:
        return self.a if self.a is not None else default

    def params(self, default_a: float = 1.0):
        if self.system_enum is System.TWO_DELTA:
            return DeltaPairParams(self.alpha, self.beta, self.separation(default_a))
        return KinkDeltaParams(self.alpha, self.beta, self.separation(default_a))

    def echo(self) -> Dict:
        data = self.model_dump(mode="json")
        data.pop("output", None)
        return data


def _new_table(config: RunConfig, columns: List[str], **extra) -> ResultTable:
    params = {"version": __version__, "config": config.echo()}
    params.update(extra)
    return ResultTable(command=config.subcommand, params=params, columns=columns)


def _momentum_grid(config: RunConfig) -> List[float]:
    if config.k is not None:
        return [config.k]
    return np.linspace(config.k_min, config.k_max, config.samples).tolist()


@log_performance
def cmd_amplitudes(config: RunConfig, settings: Settings) -> ResultTable:
    params = config.params()
    if config.system_enum is System.TWO_DELTA:
        def amplitudes_at(k): return double_delta_amplitudes(params, k)
    else:
        def amplitudes_at(k): return kink_amplitudes(params, k)

    ks = _momentum_grid(config)
    results = SweepPool(settings.threads).map(amplitudes_at, ks)

    columns = ["k"]
    for name in results[0].FIELDS:
        columns += [f"re_{name}", f"im_{name}"]
    columns += ["abs_sigma_sq", "abs_rho_r_sq", "unitarity_defect"]
    if config.phases:
        columns += ["delta_plus", "delta_minus"]
        phases = track_phase_shifts(amplitudes_at, ks)

    table = _new_table(config, columns)
    for i, amp in enumerate(results):
        row = [amp.k]
        for value in amp.values():
            row += [value.real, value.imag]
        row += [abs(amp.sigma_r) ** 2, abs(amp.rho_r) ** 2, s_matrix(amp).unitarity_defect()]
        if config.phases:
            row += [phases[i].delta_plus, phases[i].delta_minus]
        table.add_row(row)
    return table


@log_performance
def cmd_spectrum(config: RunConfig, settings: Settings) -> ResultTable:
    if config.critical:
        table = _new_table(config, ["quantity", "value"])
        table.add_row(["a_c", critical_separation()])
        return table

    a = config.separation()
    columns = ["n", "kind", "re_k", "im_k", "parity", "omega"]
    if config.system_enum is System.TWO_DELTA:
        table = _new_table(config, columns)
        for mode in delta_dirichlet_momenta(a, config.count):
            table.add_row([mode.n, "mode", mode.k, 0.0, mode.parity.value, mode.omega])
        return table

    table = _new_table(config, columns, a_c=critical_separation())
    for mode in kink_dirichlet_spectrum(a, config.count, with_wavefunctions=False):
        table.add_row([mode.n, "mode", mode.k, 0.0, mode.parity.value, mode.omega])
    ground = kink_ground_state(a)
    if ground is not None:
        table.add_row([0, "ground", 0.0, ground.kappa_b, "even", ground.omega])
    return table


@log_performance
def cmd_poles(config: RunConfig, settings: Settings) -> ResultTable:
    params = config.params(default_a=FIGURE_SEPARATION)
    region = SearchRegion(config.re_min, config.re_max, config.im_min, config.im_max)
    stamp = {"assumed_a": FIGURE_SEPARATION} if config.a is None else {}

    if config.contours:
        grid = zero_contour_grid(config.system_enum, params, region, config.grid, config.grid)
        table = _new_table(config, ["re_k", "im_k", "re_denominator", "im_denominator"], **stamp)
        for i, im in enumerate(grid.im):
            for j, re in enumerate(grid.re):
                value = grid.values[i, j]
                table.add_row([float(re), float(im), float(value.real), float(value.imag)])
        return table

    poles = find_poles(config.system_enum, params, region)
    if any(pole.basis_zero for pole in poles):
        stamp["basis_zero_note"] = BASIS_ZERO_NOTE
    table = _new_table(config, ["re_k", "im_k", "kind", "channel", "residual", "basis_zero"], **stamp)
    for pole in poles:
        table.add_row([pole.k.real, pole.k.imag, pole.kind.value, pole.channel.value,
                       pole.residual, pole.basis_zero])
    return table


@log_performance
def cmd_casimir(config: RunConfig, settings: Settings) -> ResultTable:
    a = config.separation()
    if config.mode == "dirichlet":
        table = _new_table(config, ["a", "energy"])
        table.add_row([a, dirichlet_casimir_energy(a)])
        return table

    if config.mode == "zeta":
        s = config.s_value
        value = zeta_regularized_mode_sum(a, s)
        table = _new_table(config, ["a", "re_s", "im_s", "re_energy", "im_energy"])
        table.add_row([a, s.real, s.imag, value.real, value.imag])
        return table

    if config.mode == "mode-sum":
        result = kink_dirichlet_mode_sum_difference(a, config.n_max)
        table = _new_table(config, ["n", "partial_sum"], omega_b=result.omega_b, caveat=result.caveat)
        for n, total in zip(result.n, result.partial_sums):
            table.add_row([n, total])
        return table

    if config.mode == "integrand":
        system = config.system_enum
        dispersion = default_dispersion(system)
        result = continuum_vacuum_energy(system, config.params(), config.k_min, config.k_max, config.samples,
                                         dispersion=dispersion, step=settings.fd_step,
                                         pool=SweepPool(settings.threads))
        table = _new_table(config, ["k", "integrand"],
                           continuum_part=result.continuum_part, metadata=result.metadata)
        for k, value in zip(result.ks, result.integrand):
            table.add_row([k, value])
        return table

    raise InvalidArgumentError("casimir needs one of --dirichlet, --zeta, --integrand, --mode-sum")


@log_performance
def cmd_verify(config: RunConfig, settings: Settings) -> ResultTable:
    report = run_suite(config.alpha, config.beta, config.separation(), config.figures,
                       config.tolerance_scale, settings.seed, config.oracle_samples, settings.oracle_step)
    table = _new_table(config, ["check", "status", "observed", "threshold", "detail"],
                       failed_checks=report.failed)
    for check in report.checks:
        table.add_row([check.name, "pass" if check.passed else "fail", check.observed, check.threshold,
                       check.detail])
    return table


COMMANDS: Dict[str, Callable[[RunConfig, Settings], ResultTable]] = {
    "amplitudes": cmd_amplitudes,
    "spectrum": cmd_spectrum,
    "poles": cmd_poles,
    "casimir": cmd_casimir,
    "verify": cmd_verify,
}


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", dest="output_format", choices=["csv", "json"], default="json")
    parser.add_argument("--output", "-o", default=None, help="Output file (default: stdout)")


def _add_potential_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--system", choices=["two-delta", "kink"], default="two-delta")
    parser.add_argument("--alpha", type=float, default=0.0)
    parser.add_argument("--beta", type=float, default=0.0)
    parser.add_argument("--a", type=float, default=None, help="Half-separation of the walls")


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=float, default=None, help="Single momentum instead of a grid")
    parser.add_argument("--k-min", dest="k_min", type=float, default=0.05)
    parser.add_argument("--k-max", dest="k_max", type=float, default=10.0)
    parser.add_argument("--samples", type=int, default=200)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qscatter", description=__doc__.splitlines()[1])
    parser.add_argument("--version", action="version", version=f"qscatter {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    amplitudes = sub.add_parser("amplitudes", help="Scattering coefficients on a momentum grid")
    _add_potential_flags(amplitudes)
    _add_grid_flags(amplitudes)
    amplitudes.add_argument("--phases", action="store_true", help="Append unwrapped phase shifts")
    _add_output_flags(amplitudes)

    spectrum = sub.add_parser("spectrum", help="Dirichlet-limit spectra")
    spectrum.add_argument("--system", choices=["two-delta", "kink"], default="two-delta")
    spectrum.add_argument("--a", type=float, default=None)
    spectrum.add_argument("--count", type=int, default=6)
    spectrum.add_argument("--critical", action="store_true", help="Only report the critical separation")
    _add_output_flags(spectrum)

    poles = sub.add_parser("poles", help="Bound, antibound and resonance poles")
    _add_potential_flags(poles)
    poles.add_argument("--re-min", dest="re_min", type=float, default=-1.8)
    poles.add_argument("--re-max", dest="re_max", type=float, default=1.8)
    poles.add_argument("--im-min", dest="im_min", type=float, default=-0.8)
    poles.add_argument("--im-max", dest="im_max", type=float, default=2.5)
    poles.add_argument("--contours", action="store_true", help="Emit Re/Im denominator samples instead")
    poles.add_argument("--grid", type=int, default=101, help="Contour grid points per axis")
    _add_output_flags(poles)

    casimir = sub.add_parser("casimir", help="Casimir and vacuum-energy quantities")
    which = casimir.add_mutually_exclusive_group(required=True)
    which.add_argument("--dirichlet", dest="mode", action="store_const", const="dirichlet")
    which.add_argument("--zeta", dest="mode", action="store_const", const="zeta")
    which.add_argument("--integrand", dest="mode", action="store_const", const="integrand")
    which.add_argument("--mode-sum", dest="mode", action="store_const", const="mode-sum")
    _add_potential_flags(casimir)
    _add_grid_flags(casimir)
    casimir.add_argument("--s", default=None, help="Regulator for --zeta, e.g. 1 or -0.5 or 1+2j")
    casimir.add_argument("--n-max", dest="n_max", type=int, default=20)
    _add_output_flags(casimir)

    verify = sub.add_parser("verify", help="Run the invariant suite")
    _add_potential_flags(verify)
    verify.add_argument("--figures", action="store_true", help="Include the pole taxonomy suite at a = 1")
    verify.add_argument("--tolerance-scale", dest="tolerance_scale", type=float, default=1.0)
    verify.add_argument("--oracle-samples", dest="oracle_samples", type=int, default=DEFAULT_ORACLE_SAMPLES)
    _add_output_flags(verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and write its table

    Returns:
        Process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    options = {key: value for key, value in vars(args).items() if value is not None}
    try:
        settings = Settings.from_env()
        setup_logger("", settings.log_file, settings.log_level)
        config = RunConfig(**options)
    except (ValidationError, InvalidArgumentError, OSError) as e:
        logger.error("Invalid arguments: %s", str(e))
        sys.stderr.write(f"qscatter: invalid arguments\n{e}\n")
        return EXIT_INVALID_ARGUMENTS

    try:
        table = COMMANDS[config.subcommand](config, settings)
        table.write(config.output_format, config.output)
        failed = table.params.get("failed_checks")
        if failed:
            raise VerificationError(failed)
    except VerificationError as e:
        logger.error("Verification failed: %s", str(e))
        sys.stderr.write(f"qscatter: {e}\n")
        return EXIT_VERIFICATION_FAILED
    except (InvalidArgumentError, OSError) as e:
        logger.error("Invalid arguments: %s", str(e))
        sys.stderr.write(f"qscatter: {e}\n")
        return EXIT_INVALID_ARGUMENTS
    except QScatterError as e:
        logger.error("Computation failed: %s", str(e))
        sys.stderr.write(f"qscatter: {e}\n")
        return EXIT_COMPUTATION_ERROR
    except Exception as e:
        logger.exception("Unexpected failure in %s", config.subcommand)
        sys.stderr.write(f"qscatter: unexpected error: {e}\n")
        return EXIT_COMPUTATION_ERROR

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
