"""Run configuration and execution of the verify, flow, jacobian and periodic commands."""
import json
import logging
import os
import sys
from typing import Dict, List, Literal, Optional, TextIO

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from . import __version__
from .core import ConfigError, JacobiParams, OpBracketError, VerblunskyParams
from .flows import (FlowSpec, compare_exact, conserved_report, flow_rhs_check, integrate_flow,
                    is_schur, isospectral_report, opuc_ode_check, oprl_ode_check, schur_rhs_check)
from .periodic import PeriodicOprl, PeriodicOpuc, dos_moments, theta_laws, verify_periodic_brackets
from .poisson import (BracketReport, OprlFiniteTensor, OpucFiniteTensor, Tolerances, circle_grid,
                      first_failure, jacobian_report, make_report, real_grid, spectral_symplectic_check,
                      symplectic_check, verify_fundamental, verify_identity_suite)

logger = logging.getLogger(__name__)

Command = Literal["verify", "flow", "jacobian", "periodic"]
DEFAULT_FLOW = {"oprl": "toda", "opuc": "schur"}
JACOBIAN_VARIANTS = {"oprl": ("fixed_trace", "full"), "opuc": ("fixed_beta", "free_beta")}
DISK_RADIUS = 0.8


def parse_sizes(text: str) -> List[int]:
    """``a..b`` (inclusive), ``a,b,c`` or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
            if high < low:
                raise ConfigError(f"empty size range {text!r}")
            return list(range(low, high + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise ConfigError(f"cannot parse sizes {text!r}") from err


class RunConfig(BaseModel):
    command: Command
    family: Literal["oprl", "opuc"] = "oprl"
    seed: int = 0
    sizes: Optional[List[int]] = None
    instances: int = 1
    tolerance: Optional[float] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)
    grid: Optional[int] = None
    flow: Optional[FlowSpec] = None  # None means the family's preset (toda or schur)
    t_final: Optional[float] = None
    dt: Optional[float] = None
    compare: Literal["exact", "none"] = "exact"
    out: Optional[str] = None
    csv_out: Optional[str] = None

    @field_validator("tolerance")
    @classmethod
    def _positive_tolerance(cls, value):
        if value is not None and not value > 0:
            raise ValueError("tolerance must be positive")
        return value

    @field_validator("instances")
    @classmethod
    def _positive_instances(cls, value):
        if value < 1:
            raise ValueError("instances must be >= 1")
        return value

    @field_validator("grid")
    @classmethod
    def _grid_points(cls, value):
        if value is not None and value < 2:
            raise ValueError("grid needs at least 2 points")
        return value

    @model_validator(mode="after")
    def _check_sizes(self):
        if self.sizes is None:
            self.sizes = [2, 4] if self.command == "periodic" and self.family == "opuc" else [2, 3, 4]
        if not self.sizes:
            raise ValueError("at least one size is required")
        if self.command in ("verify", "jacobian") and min(self.sizes) < 2:
            raise ValueError(f"{self.command} needs sizes >= 2")
        if min(self.sizes) < 1:
            raise ValueError("sizes must be >= 1")
        if self.command == "periodic" and self.family == "opuc" and any(p % 2 for p in self.sizes):
            raise ValueError("OPUC periods must be even")
        if self.flow is not None and self.flow.kind != self.family:
            raise ValueError(f"flow kind {self.flow.kind} does not match family {self.family}")
        return self

    @classmethod
    def build(cls, **fields) -> "RunConfig":
        """Validated construction; pydantic errors become ConfigError."""
        try:
            return cls(**fields)
        except ValidationError as err:
            raise ConfigError(str(err)) from err

    def tolerance_table(self) -> Tolerances:
        return Tolerances.build(self.tolerance, self.tolerances)

    def flow_spec(self) -> FlowSpec:
        """The configured flow, or the family's default preset, with t_final/dt overrides."""
        overrides = {key: value for key, value in (("t_final", self.t_final), ("dt", self.dt)) if value is not None}
        try:
            if self.flow is None:
                return FlowSpec.from_preset(DEFAULT_FLOW[self.family], **overrides)
            return self.flow.model_copy(update=overrides) if overrides else self.flow
        except ValidationError as err:
            raise ConfigError(str(err)) from err


def instance_rng(seed: int, size: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, size, index])


def random_jacobi(rng: np.random.Generator, N: int) -> JacobiParams:
    """b ~ U[−2, 2], a ~ U[0.2, 2]."""
    return JacobiParams(rng.uniform(-2.0, 2.0, N), rng.uniform(0.2, 2.0, N - 1))


def _disk(rng: np.random.Generator, count: int) -> np.ndarray:
    radius = DISK_RADIUS * np.sqrt(rng.uniform(0.0, 1.0, count))
    return radius * np.exp(1j * rng.uniform(-np.pi, np.pi, count))


def random_verblunsky(rng: np.random.Generator, N: int) -> VerblunskyParams:
    """α uniform on the disk of radius 0.8, β uniform on the circle."""
    alpha = _disk(rng, N - 1)
    return VerblunskyParams(alpha, np.exp(1j * rng.uniform(-np.pi, np.pi)))


def random_instance(family: str, rng: np.random.Generator, N: int):
    return random_jacobi(rng, N) if family == "oprl" else random_verblunsky(rng, N)


def random_periodic(family: str, rng: np.random.Generator, p: int):
    if family == "oprl":
        return PeriodicOprl(rng.uniform(-2.0, 2.0, p), rng.uniform(0.2, 2.0, p))
    return PeriodicOpuc(_disk(rng, p))


def _grid(config: RunConfig):
    if config.grid is None:
        return None
    return real_grid(config.grid) if config.family == "oprl" else circle_grid(config.grid)


def _verify(config: RunConfig, params, table: Tolerances) -> List[BracketReport]:
    tensor = OprlFiniteTensor(params.N) if config.family == "oprl" else OpucFiniteTensor(params.N, params.beta)
    reports = verify_fundamental(params, tolerances=table)
    reports += verify_identity_suite(params, _grid(config), tolerances=table)
    reports.append(symplectic_check(params.to_vector(), tensor, tolerances=table))
    reports.append(spectral_symplectic_check(params, tolerances=table))
    return reports


def _flow(config: RunConfig, params, table: Tolerances, size_count: int) -> List[BracketReport]:
    spec = config.flow_spec()
    trajectory = integrate_flow(spec, params)
    if config.csv_out:
        path = config.csv_out
        if size_count > 1:
            root, ext = os.path.splitext(path)
            path = f"{root}_N{params.N}{ext or '.csv'}"
        trajectory.to_csv(path)
    reports = [conserved_report(trajectory, spec, tolerances=table),
               isospectral_report(trajectory, spec, tolerances=table)]
    if config.compare == "exact":
        exact = compare_exact(spec, params, trajectory, tolerances=table)
        logger.info("max deviation from exact flow at N=%d: %.3e", params.N, exact.max_residual)
        reports.append(exact)
    if params.N >= 2:
        reports.append(flow_rhs_check(params, spec, tolerances=table))
        if spec.kind == "oprl":
            reports += oprl_ode_check(params, spec, tolerances=table)
        else:
            reports += opuc_ode_check(params, spec, tolerances=table)
            if is_schur(spec):
                reports += schur_rhs_check(params, tolerances=table)
    return reports


def _jacobian(config: RunConfig, params, table: Tolerances) -> List[BracketReport]:
    return [jacobian_report(params, variant, tolerances=table) for variant in JACOBIAN_VARIANTS[config.family]]


def _dos_report(params, table: Tolerances) -> BracketReport:
    top = params.p if params.kind == "OPRL" else params.p // 2
    residuals = [dos_moments(params, k).residual for k in range(1, top + 1)]
    prefix = "oprl.periodic" if params.kind == "OPRL" else "opuc.periodic"
    identity_id = f"{prefix}.dos_moments"
    return make_report(identity_id, residuals, table.resolve(identity_id, "periodic_laws"),
                       "64 theta nodes", f"moments k = 1..{top}", params.p)


def _periodic(config: RunConfig, params, table: Tolerances) -> List[BracketReport]:
    reports = verify_periodic_brackets(params, tolerances=table)
    reports += theta_laws(params, tolerances=table)
    reports.append(_dos_report(params, table))
    return reports


def _worse(report: BracketReport, current: Optional[BracketReport]) -> bool:
    if current is None:
        return True
    if (report.passed is False) != (current.passed is False):
        return report.passed is False
    return report.max_residual > current.max_residual


def _merge(reports: List[BracketReport], instances: int) -> List[BracketReport]:
    """Worst report per (identity_id, size) over the random instances; failures win."""
    worst: Dict[tuple, BracketReport] = {}
    for report in reports:
        key = (report.identity_id, report.size)
        if _worse(report, worst.get(key)):
            worst[key] = report
    merged = list(worst.values())
    if instances > 1:
        merged = [report.model_copy(update={"notes": f"worst of {instances} instances; {report.notes}".rstrip("; ")})
                  for report in merged]
    return sorted(merged, key=lambda report: (report.identity_id, report.size or 0))


def collect_reports(config: RunConfig) -> List[BracketReport]:
    """Every report of the configured command over the seeded random instances.

    Raises:
        OpBracketError: if a numerical step fails.
    """
    table = config.tolerance_table()
    reports: List[BracketReport] = []
    for size in config.sizes:
        for index in range(config.instances):
            rng = instance_rng(config.seed, size, index)
            if config.command == "periodic":
                reports += _periodic(config, random_periodic(config.family, rng, size), table)
                continue
            params = random_instance(config.family, rng, size)
            if config.command == "verify":
                reports += _verify(config, params, table)
            elif config.command == "flow":
                reports += _flow(config, params, table, len(config.sizes))
            else:
                reports += _jacobian(config, params, table)
    return _merge(reports, config.instances)


def render(config: RunConfig, reports: List[BracketReport]) -> str:
    payload = {
        "version": __version__,
        "config_echo": config.model_dump(mode="json"),
        "reports": [report.to_json_dict() for report in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def run(config: RunConfig, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Execute a run and write the JSON report to ``config.out`` or stdout.

    Returns 0 if every asserted report passes, 1 on a failing report or a numerical
    error, 2 on a configuration error.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        reports = collect_reports(config)
    except ConfigError as err:
        print(f"configuration error: {err}", file=stderr)
        return 2
    except OpBracketError as err:
        logger.error("%s failed: %s", config.command, err)
        print(f"error: {type(err).__name__}: {err}", file=stderr)
        return 1

    text = render(config, reports)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info("report with %d entries written to %s", len(reports), config.out)
    else:
        stdout.write(text + "\n")

    for report in reports:
        if report.identity_id.endswith("exact_vs_rk4"):
            print(f"max deviation N={report.size}: {report.max_residual:.3e}", file=stderr)
        elif config.command == "jacobian":
            print(f"{report.identity_id} N={report.size}: {report.notes}", file=stderr)
    failing = first_failure(reports)
    if failing is not None:
        print(f"FAILED {failing.identity_id} (N={failing.size}): residual {failing.max_residual:.3e} "
              f"> tolerance {failing.tolerance:.1e}", file=stderr)
        return 1
    return 0
