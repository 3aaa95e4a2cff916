"""Jacobians of the maps from recursion coefficients to spectral data.

OPRL:  |det ∂(a, b)/∂(x, ρ)| = 2^{−(N−1)} Π a_j / Π ρ_j
OPUC:  |det ∂(u, v)/∂(θ, μ)| = 2^{−(N−1)} Π ρ_j² / Π μ_j

The numeric side differentiates the forward spectral map and inverts its determinant.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from ..core import ArgumentError, JacobiParams, NumericError, VerblunskyParams
from ..oprl import jacobi_to_measure
from ..opuc import cmv_to_measure
from .backend import spectral_jacobian
from .report import BracketReport, Tolerances, make_report

logger = logging.getLogger(__name__)

OPRL_VARIANTS = ("fixed_trace", "full")
OPUC_VARIANTS = ("fixed_beta", "free_beta")


def _inverse_det(jac: np.ndarray, what: str) -> float:
    det = float(np.linalg.det(jac))
    if not np.isfinite(det) or abs(det) < np.finfo(float).tiny:
        raise NumericError(f"{what}: singular Jacobian (det = {det:.3e})")
    return 1.0 / abs(det)


def jacobian_oprl(J: JacobiParams, variant: str = "fixed_trace") -> Tuple[float, float]:
    """(numeric, formula) values of |det ∂(a, b)/∂(x, ρ)|.

    ``fixed_trace`` differentiates in (a_1..a_{N−1}, b_1..b_{N−1}) with b_N = Tr J − Σ b_j,
    onto (x_1..x_{N−1}, ρ_1..ρ_{N−1}); ``full`` uses all b_j onto (x_1..x_N, ρ_1..ρ_{N−1}).

    Raises:
        NumericError: if the Jacobian is singular.
    """
    if variant not in OPRL_VARIANTS:
        raise ArgumentError(f"unknown OPRL Jacobian variant {variant!r}")
    J = J.values()
    N = J.N
    if N < 2:
        raise ArgumentError("Jacobian formulas need N >= 2")
    trace = float(np.sum(J.b))

    if variant == "fixed_trace":
        point = np.concatenate([J.a, J.b[:-1]])

        def spectral_map(q):
            b = np.append(q[N - 1:], trace - np.sum(q[N - 1:]))
            measure = jacobi_to_measure(JacobiParams(b, q[: N - 1]))
            return measure.x, measure.rho

        rows = list(range(N - 1)) + list(range(N, 2 * N - 1))
    else:
        point = np.concatenate([J.a, J.b])

        def spectral_map(q):
            measure = jacobi_to_measure(JacobiParams(q[N - 1:], q[: N - 1]))
            return measure.x, measure.rho

        rows = list(range(2 * N - 1))

    _, rho, jac = spectral_jacobian(spectral_map, point, name=f"jacobi_to_measure ({variant})")
    numeric = _inverse_det(jac[rows], f"OPRL {variant}")
    formula = 2.0 ** (-(N - 1)) * float(np.prod(J.a)) / float(np.prod(rho))
    logger.debug("OPRL Jacobian %s N=%d: numeric %.12g formula %.12g", variant, N, numeric, formula)
    return numeric, formula


def jacobian_opuc(v: VerblunskyParams, variant: str = "fixed_beta") -> Tuple[float, float]:
    """(numeric, formula) values of |det ∂(u, v)/∂(θ, μ)|.

    ``free_beta`` adds ψ with β = e^{iψ} as a coordinate and all N angles as outputs.
    """
    if variant not in OPUC_VARIANTS:
        raise ArgumentError(f"unknown OPUC Jacobian variant {variant!r}")
    v = v.values()
    N = v.N
    if N < 2:
        raise ArgumentError("Jacobian formulas need N >= 2")

    if variant == "fixed_beta":
        point = v.to_vector()

        def spectral_map(q):
            measure = cmv_to_measure(VerblunskyParams.from_vector(q, v.beta))
            return measure.theta, measure.mu

        rows = list(range(N - 1)) + list(range(N, 2 * N - 1))
    else:
        point = np.append(v.to_vector(), np.angle(v.beta))

        def spectral_map(q):
            measure = cmv_to_measure(VerblunskyParams.from_vector(q[:-1], np.exp(1j * q[-1])))
            return measure.theta, measure.mu

        rows = list(range(2 * N - 1))

    _, mu, jac = spectral_jacobian(spectral_map, point, circle=True, name=f"cmv_to_measure ({variant})")
    numeric = _inverse_det(jac[rows], f"OPUC {variant}")
    formula = 2.0 ** (-(N - 1)) * float(np.prod(np.asarray(v.rhos(), dtype=float) ** 2)) / float(np.prod(mu))
    logger.debug("OPUC Jacobian %s N=%d: numeric %.12g formula %.12g", variant, N, numeric, formula)
    return numeric, formula


def jacobian_report(params, variant: Optional[str] = None, tol: Optional[float] = None,
                    tolerances=None) -> BracketReport:
    """Relative gap |numeric − formula|/|formula| as a report."""
    table = Tolerances.build(tol, tolerances)
    if isinstance(params, JacobiParams):
        variant = variant or "fixed_trace"
        numeric, formula = jacobian_oprl(params, variant)
        identity_id = f"oprl.jacobian.{variant}"
    elif isinstance(params, VerblunskyParams):
        variant = variant or "fixed_beta"
        numeric, formula = jacobian_opuc(params, variant)
        identity_id = f"opuc.jacobian.{variant}"
    else:
        raise ArgumentError(f"unsupported parameters {type(params).__name__}")
    gap = abs(numeric - formula) / abs(formula)
    return make_report(identity_id, gap, table.resolve(identity_id, "jacobian"), "",
                       f"numeric {numeric:.12g}, formula {formula:.12g}", params.N)
