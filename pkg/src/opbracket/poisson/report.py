import logging
import math
from typing import Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES: Dict[str, float] = {
    "fundamental": 1e-7,
    "fundamental_rho": 1e-6,
    "polynomial": 1e-8,
    "antisymmetry": 1e-12,
    "leibniz": 1e-10,
    "jacobi_identity": 1e-8,
    "casimir": 1e-11,
    "symmetry": 1e-10,
    "dual_vs_fd": 1e-6,
    "symplectic": 1e-10,
    "symplectic_spectral": 1e-7,
    "jacobian": 1e-6,
    "stripping": 1e-12,
    "roundtrip": 1e-9,
    "periodic_det": 1e-10,
    "periodic_laws": 1e-8,
    "periodic_brackets": 1e-7,
    "flow_exact": 1e-6,
    "flow_conserved": 1e-9,
    "flow_isospectral": 1e-8,
    "ode": 1e-5,
    "ode_degree": 1e-10,
}


class BracketReport(BaseModel):
    """Outcome of one verified (or reported) identity.

    ``passed`` is serialized as ``pass``; it is None for items that are reported
    but never asserted (alternative sign and kernel forms, determinant conventions).
    """

    model_config = ConfigDict(populate_by_name=True)

    identity_id: str
    grid: str = ""
    max_residual: float
    tolerance: float
    passed: Optional[bool] = Field(default=None, alias="pass")
    notes: str = ""
    size: Optional[int] = None

    @property
    def asserted(self) -> bool:
        return self.passed is not None

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)


class Tolerances(BaseModel):
    """Global tolerance override plus per-identity overrides; unset means the category default."""

    default: Optional[float] = None
    overrides: Dict[str, float] = Field(default_factory=dict)

    @field_validator("default")
    @classmethod
    def _positive_default(cls, value):
        if value is not None and not value > 0:
            raise ValueError("tolerance must be positive")
        return value

    @field_validator("overrides")
    @classmethod
    def _positive_overrides(cls, value):
        for key, tol in value.items():
            if not tol > 0:
                raise ValueError(f"tolerance for {key} must be positive")
        return value

    @classmethod
    def build(cls, tol: Optional[float] = None,
              tolerances=None) -> "Tolerances":
        if isinstance(tolerances, Tolerances):
            if tol is None:
                return tolerances
            return cls(default=tol, overrides=tolerances.overrides)
        return cls(default=tol, overrides=dict(tolerances or {}))

    def resolve(self, identity_id: str, category: str) -> float:
        if identity_id in self.overrides:
            return self.overrides[identity_id]
        if self.default is not None:
            return self.default
        return DEFAULT_TOLERANCES[category]


def make_report(identity_id: str, residual, tolerance: float, grid: str = "", notes: str = "",
                size: Optional[int] = None, asserted: bool = True) -> BracketReport:
    """Reduce a residual (scalar or array) to its maximum and build the report."""
    values = np.asarray(residual, dtype=float)
    worst = float(np.max(values)) if values.size else 0.0
    if np.any(np.isnan(values)):
        worst = math.inf
    passed = bool(worst <= tolerance) if asserted else None
    report = BracketReport(identity_id=identity_id, grid=grid, max_residual=worst,
                           tolerance=tolerance, passed=passed, notes=notes, size=size)
    if asserted:
        logger.info("%s (N=%s): residual %.3e tol %.1e %s", identity_id, size, worst, tolerance,
                    "ok" if passed else "FAILED")
    else:
        logger.warning("%s (N=%s): reported residual %.3e %s", identity_id, size, worst, notes)
    return report


def normalized_residual(lhs, rhs, scale=0.0) -> np.ndarray:
    """|lhs − rhs| / max(1, |lhs|, |rhs|, scale), elementwise."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    denom = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), np.maximum(1.0, np.asarray(scale, dtype=float)))
    return np.abs(lhs - rhs) / denom


def first_failure(reports) -> Optional[BracketReport]:
    for report in reports:
        if report.passed is False:
            return report
    return None
