"""Flow specifications and recorded trajectories.

An OPRL flow is given by real c_0..c_k with ½f′(x) = Σ c_j x^j; an OPUC flow by complex
b_0..b_K of the real symbol g(e^{iθ}) = Σ_{|j|≤K} b_j e^{ijθ}, b_{−j} = conj(b_j).
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, field_validator, model_validator

from ..core import ArgumentError, ConfigError

logger = logging.getLogger(__name__)

PRESETS = {
    "toda": {"kind": "oprl", "coeffs": [0.0, 2.0], "coeffs_imag": []},
    "schur": {"kind": "opuc", "coeffs": [0.0, 1.0], "coeffs_imag": [0.0, 0.0]},
}


class FlowSpec(BaseModel):
    """A generalized Toda (OPRL) or Schur (OPUC) flow.

    ``coeffs`` holds c_0..c_k for OPRL and the real parts of b_0..b_K for OPUC;
    ``coeffs_imag`` the imaginary parts of b_0..b_K (b_0 must be real).
    """

    kind: Literal["oprl", "opuc"]
    coeffs: List[float]
    coeffs_imag: List[float] = []
    t_final: float = 1.0
    dt: float = 1e-3
    preset: Literal["toda", "schur", "custom"] = "custom"

    @field_validator("dt")
    @classmethod
    def _positive_step(cls, value):
        if not value > 0:
            raise ValueError("dt must be positive")
        return value

    @field_validator("t_final")
    @classmethod
    def _finite_time(cls, value):
        if not math.isfinite(value) or value < 0:
            raise ValueError("t_final must be finite and >= 0")
        return value

    @model_validator(mode="after")
    def _check_coefficients(self):
        if not self.coeffs:
            raise ValueError("at least one coefficient is required")
        if self.kind == "oprl" and any(self.coeffs_imag):
            raise ValueError("OPRL flows take real coefficients only")
        if self.kind == "opuc":
            if len(self.coeffs_imag) > len(self.coeffs):
                raise ValueError("more imaginary parts than coefficients")
            if self.coeffs_imag and self.coeffs_imag[0] != 0.0:
                raise ValueError("b_0 must be real for g to be real on the circle")
        return self

    @classmethod
    def from_preset(cls, name: str, **overrides) -> "FlowSpec":
        """``toda``: ½f′(x) = 2x, H = 2Tr J²; ``schur``: g = z + 1/z, H = 2 Im Tr C.

        Raises:
            ConfigError: for an unknown preset name.
        """
        if name not in PRESETS:
            raise ConfigError(f"unknown flow preset {name!r}")
        fields = dict(PRESETS[name], preset=name)
        fields.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**fields)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def steps(self) -> int:
        """Number of RK4 steps; the step is t_final/steps, at most ``dt``."""
        return int(math.ceil(self.t_final / self.dt - 1e-9)) if self.t_final > 0 else 0

    def symbol_coeffs(self) -> np.ndarray:
        """b_0..b_K as complex numbers (OPUC)."""
        imag = np.zeros(len(self.coeffs))
        imag[: len(self.coeffs_imag)] = self.coeffs_imag
        return np.asarray(self.coeffs, dtype=float) + 1j * imag

    def half_derivative(self, x) -> np.ndarray:
        """½f′(x) = Σ c_j x^j (OPRL)."""
        return np.polynomial.polynomial.polyval(np.asarray(x, dtype=float), self.coeffs)

    def symbol(self, theta) -> np.ndarray:
        """g(e^{iθ}) = b_0 + 2 Σ_{k≥1} Re(b_k e^{ikθ}) (OPUC)."""
        theta = np.asarray(theta, dtype=float)
        b = self.symbol_coeffs()
        total = np.full(theta.shape, b[0].real)
        for k in range(1, b.size):
            total = total + 2.0 * np.real(b[k] * np.exp(1j * k * theta))
        return total


@dataclass
class Trajectory:
    """States at each recorded time with the monitored quantities per row of ``conserved``."""

    times: np.ndarray
    states: list
    conserved: np.ndarray
    names: List[str] = field(default_factory=list)
    coordinates: List[str] = field(default_factory=list)

    def drift(self) -> np.ndarray:
        """max_t |m(t) − m(0)| / max(1, |m(0)|) per monitored quantity."""
        if self.conserved.shape[0] == 0:
            return np.zeros(0)
        start = self.conserved[0]
        return np.max(np.abs(self.conserved - start), axis=0) / np.maximum(1.0, np.abs(start))

    def final(self):
        return self.states[-1]

    def to_csv(self, path: str, precision: Optional[int] = 17):
        """time, parameter coordinates, monitored quantities; one row per recorded time."""
        if not self.states:
            raise ArgumentError("empty trajectory")
        params = np.array([np.asarray(state.to_vector(), dtype=float) for state in self.states])
        data = np.column_stack([self.times, params, self.conserved])
        header = ",".join(["time"] + self.coordinates + self.names)
        np.savetxt(path, data, delimiter=",", header=header, comments="", fmt=f"%.{precision}g")
        logger.info("trajectory with %d rows written to %s", data.shape[0], path)
