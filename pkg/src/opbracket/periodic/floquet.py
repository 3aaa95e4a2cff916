"""Floquet eigenvalues: the p roots of Δ(z) = 2cosθ.

OPRL roots come from the real polynomial Πa_j·(Δ(x) − 2cosθ) and are cross-checked with
the eigenvalues of the Hermitian matrix J(θ) (J restricted to one period, a_p e^{±iθ} in
the corners). OPUC roots come from Πρ_j·(Tr T(z) − 2cosθ·z^{p/2}) and lie on the circle.

Gradients of the eigenvalues with respect to the parameters use implicit
differentiation of Δ(λ) = 2cosθ: ∇λ = −∇Δ(λ)/Δ′(λ), with ∇Δ from one dual evaluation.
"""
import logging
from typing import Tuple

import numpy as np
from scipy.linalg import eigvalsh

from ..core import (CoeffPoly, ConsistencyError, DegenerateSpectrumError, aberth_roots,
                    gradient_of, seed)
from ..opuc import unit_circle_roots
from ..poisson.tensors import OprlPeriodicTensor, OpucPeriodicTensor
from .newton import power_sums_to_elementary
from .transfer import discriminant, trace_poly

logger = logging.getLogger(__name__)

CROSSCHECK_LIMIT = 1e-8
GAP_LIMIT = 1e-6


def jacobi_theta(params, theta: float) -> np.ndarray:
    """p × p Hermitian Floquet matrix with the corner terms a_p e^{±iθ}."""
    params = params.values()
    p = params.p
    M = np.diag(params.b).astype(complex)
    for k in range(p - 1):
        M[k, k + 1] += params.a[k]
        M[k + 1, k] += params.a[k]
    M[p - 1, 0] += params.a[p - 1] * np.exp(1j * theta)
    M[0, p - 1] += params.a[p - 1] * np.exp(-1j * theta)
    return M


def floquet_polynomial(params, theta: float) -> CoeffPoly:
    """Πa·(Δ − 2cosθ) (OPRL) or Πρ·(Tr T − 2cosθ z^{p/2}) (OPUC); monic."""
    params = params.values()
    coeffs = np.array(trace_poly(params).coeffs, dtype=complex)
    coeffs = np.pad(coeffs, (0, max(0, params.p + 1 - coeffs.size)))
    shift = 0 if params.kind == "OPRL" else params.p // 2
    coeffs[shift] -= 2.0 * np.cos(theta)
    norm = params.product_a() if params.kind == "OPRL" else params.product_rho()
    return CoeffPoly.of(coeffs * norm)


def floquet_spectrum(params, theta: float) -> np.ndarray:
    """Sorted real eigenvalues (OPRL) or unimodular eigenvalues sorted by argument (OPUC).

    Raises:
        ConvergenceError: if the root finder does not converge.
    """
    params = params.values()
    poly = floquet_polynomial(params, theta)
    if params.kind == "OPUC":
        roots = unit_circle_roots(poly)
        return roots[np.argsort(np.angle(roots))]
    roots = np.sort(aberth_roots(poly.values()).real)
    gap = floquet_crosscheck(params, theta, roots)
    if gap > CROSSCHECK_LIMIT:
        logger.warning("Floquet roots differ from eig J(theta) by %.3e at theta=%.4f", gap, theta)
    return roots


def floquet_crosscheck(params, theta: float, roots=None) -> float:
    """max |root − eigenvalue of J(θ)|, relative to max(1, |λ|)."""
    if roots is None:
        roots = floquet_spectrum(params, theta)
    direct = eigvalsh(jacobi_theta(params, theta))
    return float(np.max(np.abs(np.sort(roots) - direct) / np.maximum(1.0, np.abs(direct))))


def min_gap(eigs: np.ndarray) -> float:
    eigs = np.asarray(eigs)
    if eigs.size < 2:
        return np.inf
    diff = np.abs(eigs[:, None] - eigs[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(np.min(diff))


def floquet_gradients(params, theta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues λ_j(θ) and their gradients (p × D) in periodic tensor coordinates.

    Raises:
        DegenerateSpectrumError: if two eigenvalues are closer than 1e-6.
        ConsistencyError: if Δ′ vanishes at an eigenvalue.
    """
    params = params.values()
    eigs = floquet_spectrum(params, theta)
    gap = min_gap(eigs)
    if gap < GAP_LIMIT:
        raise DegenerateSpectrumError(f"Floquet eigenvalues at theta={theta:.4f} have gap {gap:.2e}")
    point = params.to_vector()
    D = point.size
    dual_params = _dual_params(params, point)
    trace_derivative = trace_poly(params).derivative()
    trace = trace_poly(params)
    half = params.p // 2
    grads = []
    for lam in eigs:
        lam = complex(lam) if params.kind == "OPUC" else float(lam)
        grad_delta = gradient_of(discriminant(dual_params, lam), D)
        if params.kind == "OPRL":
            slope = complex(trace_derivative(lam)).real
        else:
            slope = lam ** (-half) * (complex(trace_derivative(lam)) - half * complex(trace(lam)) / lam)
        if abs(slope) < np.finfo(float).eps:
            raise ConsistencyError(f"discriminant is stationary at eigenvalue {lam}")
        grads.append(-grad_delta / slope)
    return eigs, np.array(grads)


def _dual_params(params, point):
    tensor = OprlPeriodicTensor(params.p) if params.kind == "OPRL" else OpucPeriodicTensor(params.p)
    return tensor.params_of(seed(point))


def symmetric_functions(params, theta: float) -> Tuple[np.ndarray, np.ndarray]:
    """(s_0..s_p, t_0..t_p): elementary symmetric functions and power sums of λ_j(θ)."""
    eigs = floquet_spectrum(params, theta)
    p = eigs.size
    t = np.array([np.sum(eigs ** k) for k in range(p + 1)])
    s = np.concatenate([[1.0], power_sums_to_elementary(t[1:])])
    if params.kind == "OPRL":
        return s.real, t.real
    return s, t
