from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError

WEIGHT_BAND = 1e-9


def normalize_angle(theta):
    """Reduce angles to (−π, π]; −π maps to +π."""
    return np.pi - np.mod(np.pi - np.asarray(theta, dtype=float), 2 * np.pi)


def _check_weights(weights: np.ndarray, name: str) -> np.ndarray:
    if np.any(weights <= 0):
        raise ArgumentError(f"all {name} must be positive")
    total = weights.sum()
    if abs(total - 1.0) > WEIGHT_BAND:
        raise ArgumentError(f"{name} sum to {total!r}, outside [1-{WEIGHT_BAND}, 1+{WEIGHT_BAND}]")
    return weights / total


@dataclass(frozen=True, eq=False)
class RealDiscreteMeasure:
    """dρ = Σ ρ_j δ_{x_j} with x ascending."""

    x: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float).ravel()
        rho = np.asarray(self.rho, dtype=float).ravel()
        if x.size == 0 or x.size != rho.size:
            raise ArgumentError("nodes and weights must be nonempty and of equal length")
        order = np.argsort(x, kind="stable")
        x, rho = x[order], rho[order]
        if np.any(np.diff(x) <= 0):
            raise ArgumentError("nodes must be distinct")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "rho", _check_weights(rho, "weights"))

    @property
    def N(self) -> int:
        return self.x.size


@dataclass(frozen=True, eq=False)
class CircleDiscreteMeasure:
    """dμ = Σ μ_j δ_{z_j}, z_j = exp(iθ_j), θ in (−π, π] ascending."""

    theta: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        theta = normalize_angle(np.asarray(self.theta, dtype=float).ravel())
        mu = np.asarray(self.mu, dtype=float).ravel()
        if theta.size == 0 or theta.size != mu.size:
            raise ArgumentError("nodes and weights must be nonempty and of equal length")
        order = np.argsort(theta, kind="stable")
        theta, mu = theta[order], mu[order]
        if np.any(np.diff(theta) <= 0):
            raise ArgumentError("nodes must be distinct")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "mu", _check_weights(mu, "weights"))

    @property
    def N(self) -> int:
        return self.theta.size

    @property
    def nodes(self) -> np.ndarray:
        return np.exp(1j * self.theta)
