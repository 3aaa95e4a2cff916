"""Moments of the density of states dγ.

∫λ^k dγ is the θ-average of (1/p)Σ_j λ_j(θ)^k; the integrand is a trigonometric
polynomial in θ, so the trapezoidal rule on 64 equispaced nodes is exact for the degrees
used here. At θ = 0 the power sums pick up one correction at the top degree:

    OPRL  t_p(0) = p∫λ^p dγ + 2pΠa_j
    OPUC  t_{p/2}(0) = p∫λ^{p/2} dγ + pΠρ_j

and t_k(0) = p∫λ^k dγ below it.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..core import ArgumentError
from ..opuc import cmv_matrix
from ..oprl import jacobi_matrix
from .floquet import floquet_spectrum

logger = logging.getLogger(__name__)

THETA_SAMPLES = 64


@dataclass(frozen=True)
class DosMoment:
    """``residual`` is |t_k(0) − (p·moment + correction)|, None above the checked degree."""

    k: int
    moment: complex
    trace_at_zero: complex
    correction: float
    residual: Optional[float]


def theta_nodes(samples: int = THETA_SAMPLES) -> np.ndarray:
    return 2.0 * np.pi * np.arange(samples) / samples


def dos_moments(params, k: int, samples: int = THETA_SAMPLES) -> DosMoment:
    if k < 0:
        raise ArgumentError("moment order must be >= 0")
    params = params.values()
    p = params.p
    spectra = [floquet_spectrum(params, theta) for theta in theta_nodes(samples)]
    moment = np.mean([np.mean(eigs ** k) for eigs in spectra])
    trace_at_zero = np.sum(spectra[0] ** k)

    if params.kind == "OPRL":
        top, correction = p, 2.0 * p * params.product_a()
    else:
        top, correction = p // 2, float(p * params.product_rho())
    if k > top:
        return DosMoment(k, _scalar(moment, params), _scalar(trace_at_zero, params), 0.0, None)
    correction = correction if k == top else 0.0
    residual = float(abs(trace_at_zero - (p * moment + correction)))
    logger.debug("moment k=%d: %.12g, t_k(0) residual %.2e", k, abs(moment), residual)
    return DosMoment(k, _scalar(moment, params), _scalar(trace_at_zero, params), correction, residual)


def _scalar(value, params):
    return float(np.real(value)) if params.kind == "OPRL" else complex(value)


def finite_section_moments(params, k: int, ms: Sequence[int]) -> List[complex]:
    """(2m+1)^{−1}Tr J_m^k (OPRL, sites −m..m) or (2m)^{−1}Tr C_m^k (OPUC) for each m."""
    params = params.values()
    out = []
    for m in ms:
        if m < 1:
            raise ArgumentError("section half-width must be >= 1")
        if params.kind == "OPRL":
            size = 2 * m + 1
            mat = jacobi_matrix(params.section(size, start=-m % params.p))
        else:
            size = 2 * m
            mat = np.asarray(cmv_matrix(params.section(size)), dtype=complex)
        trace = np.trace(np.linalg.matrix_power(mat, k)) / size
        out.append(_scalar(trace, params))
    return out
