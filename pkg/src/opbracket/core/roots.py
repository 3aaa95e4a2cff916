import logging
from typing import Optional, Sequence

import numpy as np

from .errors import ArgumentError, ConvergenceError

logger = logging.getLogger(__name__)


def _horner_with_derivative(coeffs: np.ndarray, z: np.ndarray):
    p = np.full_like(z, coeffs[-1], dtype=complex)
    dp = np.zeros_like(z, dtype=complex)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth_roots(coeffs: Sequence, seeds: Optional[Sequence] = None, tol: float = 1e-14,
                 max_iter: int = 500) -> np.ndarray:
    """Simultaneous Aberth–Ehrlich iteration for all roots of a polynomial.

    Args:
        coeffs: ascending coefficients, leading coefficient nonzero.
        seeds: starting approximations; defaults to a rotated circle whose radius is
            the geometric mean of the root moduli.
        tol: stop when every correction is below ``tol * max(1, |z|)``.
        max_iter: iteration cap.

    Returns:
        np.ndarray: complex roots, in the order of the seeds.

    Raises:
        ConvergenceError: if the corrections do not settle within ``max_iter`` sweeps.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.size == 0 or coeffs[-1] == 0:
        raise ArgumentError("aberth_roots needs a nonzero leading coefficient")
    n = coeffs.size - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    coeffs = coeffs / coeffs[-1]
    if n == 1:
        return np.array([-coeffs[0]])

    if seeds is None:
        radius = abs(coeffs[0]) ** (1.0 / n) if coeffs[0] != 0 else 1.0
        radius = max(radius, 1e-3)
        seeds = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    z = np.array(seeds, dtype=complex)
    if z.size != n:
        raise ArgumentError(f"expected {n} seeds, got {z.size}")

    previous = np.inf
    for iteration in range(max_iter):
        p, dp = _horner_with_derivative(coeffs, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        repulsion = (1.0 / diff).sum(axis=1) - 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dp != 0, p / dp, p)
            step = ratio / (1.0 - ratio * repulsion)
        step = np.where(np.isfinite(step), step, 1e-8)
        z = z - step
        scaled = float(np.max(np.abs(step) / np.maximum(1.0, np.abs(z))))
        # roundoff floor: corrections stopped shrinking while already tiny
        if scaled <= tol or (scaled < 1e-9 and scaled >= previous):
            logger.debug("aberth converged after %d sweeps (degree %d)", iteration + 1, n)
            return z
        previous = scaled
    raise ConvergenceError(f"Aberth iteration did not converge in {max_iter} sweeps (degree {n})")
