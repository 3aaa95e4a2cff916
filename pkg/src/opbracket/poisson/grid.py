from dataclasses import dataclass

import numpy as np

from ..core import ArgumentError

DEFAULT_POINTS = 8
POLE_EXCLUSION = 1e-3


@dataclass(frozen=True, eq=False)
class Grid:
    """Evaluation points for two-variable identities: pairs (z_i, w_j)."""

    z: np.ndarray
    w: np.ndarray
    description: str

    @property
    def shape(self):
        return self.z.size, self.w.size


def real_grid(points: int = DEFAULT_POINTS, low: float = -3.0, high: float = 3.0) -> Grid:
    """x on a uniform grid of [low, high]; y shifted by half a spacing so x_i != y_j."""
    if points < 2:
        raise ArgumentError("a grid needs at least two points")
    x = np.linspace(low, high, points)
    shift = 0.5 * (high - low) / (points - 1)
    return Grid(x, x + shift, f"{points}x{points} real grid, x in [{low:g}, {high:g}], y = x + {shift:.4f}")


def circle_grid(points: int = DEFAULT_POINTS, radius: float = 1.3) -> Grid:
    """z_k = r·exp(i(2πk/n + 0.1)); w_k is rotated by a further π/n."""
    if points < 2:
        raise ArgumentError("a grid needs at least two points")
    angles = 2.0 * np.pi * np.arange(points) / points + 0.1
    z = radius * np.exp(1j * angles)
    w = radius * np.exp(1j * (angles + np.pi / points))
    return Grid(z, w, f"{points}x{points} grid on |z| = {radius:g}, w rotated by pi/{points}")


def away_from(points: np.ndarray, poles, distance: float = POLE_EXCLUSION) -> np.ndarray:
    """Mask of the points farther than ``distance`` from every pole."""
    points = np.asarray(points)
    poles = np.asarray(poles)
    if poles.size == 0:
        return np.ones(points.size, dtype=bool)
    return np.min(np.abs(points[:, None] - poles[None, :]), axis=1) > distance
