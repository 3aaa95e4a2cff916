"""Verblunsky coefficients <-> circle measure.

Forward: zeros of P_N (Aberth, seeded on the circle, projected back to |z| = 1) and the
residue weights μ_j = Q_N(z_j)/(2z_jP_N'(z_j)). Inverse: the Schur algorithm run on the
coefficient vectors of the rational Schur function built from the nodes and weights.
"""
import logging

import numpy as np

from ..core import (CircleDiscreteMeasure, CoeffPoly, ConsistencyError,
                    IllConditionedMeasureError, VerblunskyParams, aberth_roots, poly_from_roots)
from .para import para_family

logger = logging.getLogger(__name__)

IMAG_LIMIT = 1e-8
SCHUR_LIMIT = 1.0 - 1e-13


def _circle_seeds(n: int) -> np.ndarray:
    return np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.3))


def unit_circle_roots(poly: CoeffPoly) -> np.ndarray:
    """Roots of a polynomial whose zeros are known to be unimodular, projected to |z| = 1."""
    coeffs = np.asarray(poly.values(), dtype=complex)
    roots = aberth_roots(coeffs, seeds=_circle_seeds(coeffs.size - 1))
    drift = np.max(np.abs(np.abs(roots) - 1.0)) if roots.size else 0.0
    logger.debug("unimodular roots: degree %d, max modulus drift %.3e", roots.size, drift)
    return roots / np.abs(roots)


def second_kind_roots(v: VerblunskyParams) -> np.ndarray:
    """Zeros of Q_N, sorted by argument in (−π, π]."""
    roots = unit_circle_roots(para_family(v.values()).q)
    return roots[np.argsort(np.angle(roots))]


def cmv_to_measure(v: VerblunskyParams) -> CircleDiscreteMeasure:
    """Spectral measure of the CMV matrix.

    Raises:
        ConvergenceError: if the root finder does not converge.
        ConsistencyError: if a residue weight has imaginary part above 1e-8.
    """
    family = para_family(v.values())
    nodes = unit_circle_roots(family.p)
    dp = family.p.derivative()
    weights = np.array([family.q(z) / (2.0 * z * dp(z)) for z in nodes], dtype=complex)
    worst = float(np.max(np.abs(weights.imag)))
    if worst > IMAG_LIMIT:
        raise ConsistencyError(f"residue weight with imaginary part {worst:.3e}")
    return CircleDiscreteMeasure(np.angle(nodes), weights.real)


def caratheodory_from_measure(measure: CircleDiscreteMeasure, z: complex) -> complex:
    """Σ μ_j (z_j + z)/(z_j − z)."""
    nodes = measure.nodes
    return complex(np.sum(measure.mu * (nodes + z) / (nodes - z)))


def node_beta(measure: CircleDiscreteMeasure) -> complex:
    """β = (−1)^{N+1} Π conj(z_j)."""
    beta = (-1) ** (measure.N + 1) * np.prod(np.conj(measure.nodes))
    return complex(beta / abs(beta))


def measure_to_verblunsky(measure: CircleDiscreteMeasure) -> VerblunskyParams:
    """Inverse spectral map via the Schur algorithm.

    With P = Π(z − z_j) and Q = Σ μ_j (z + z_j)Π_{ℓ≠j}(z − z_ℓ), the Schur function is
    f = A/B with A = −C/z, B = S. Each step takes γ = A(0)/B(0) and replaces
    (A, B) by ((A − γB)/z, B − γ̄A).

    Raises:
        IllConditionedMeasureError: if some |γ_j| >= 1 − 1e-13.
    """
    nodes = measure.nodes
    N = measure.N
    beta = node_beta(measure)
    if N == 1:
        return VerblunskyParams(np.zeros(0, dtype=complex), beta)

    p = poly_from_roots(nodes).values()
    q = np.zeros(N + 1, dtype=complex)
    for j in range(N):
        others = poly_from_roots(np.delete(nodes, j)).values()
        q += measure.mu[j] * np.convolve(others, np.array([nodes[j], 1.0]))
    c = 0.5 * (p + q)
    s = 0.5 * (p - q)
    A = -c[1:]
    B = s[:N].copy()

    alphas = np.zeros(N - 1, dtype=complex)
    for j in range(N - 1):
        gamma = A[0] / B[0]
        if abs(gamma) >= SCHUR_LIMIT:
            raise IllConditionedMeasureError(f"Schur parameter {j} has modulus {abs(gamma)!r}")
        alphas[j] = gamma
        A_next = (A - gamma * B)[1:]
        B = (B - np.conj(gamma) * A)[: A_next.size]
        A = A_next
    terminal = A[0] / B[0]
    if abs(terminal - beta) > 1e-8:
        logger.warning("Schur terminal parameter %s differs from node-product beta %s", terminal, beta)
    return VerblunskyParams(alphas, beta)


def interlace_check(v: VerblunskyParams) -> bool:
    """Zeros of P_N and Q_N alternate around the circle."""
    p_angles = np.angle(unit_circle_roots(para_family(v.values()).p))
    q_angles = np.angle(second_kind_roots(v))
    labels = np.concatenate([np.zeros(p_angles.size), np.ones(q_angles.size)])
    order = np.argsort(np.concatenate([p_angles, q_angles]), kind="stable")
    sequence = labels[order]
    return bool(np.all(sequence != np.roll(sequence, 1)))
