"""Brackets of the spectral coordinates.

OPRL, with x_j the eigenvalues of J and ρ_j the weights:

    {x_j, x_k} = 0,   {x_j, ρ_k} = ½(δ_jk ρ_j − ρ_j ρ_k),
    {ρ_j, ρ_k} = ρ_jρ_k [1/(x_j − x_k) − Σ_{m≠j} ρ_m/(x_j − x_m) + Σ_{m≠k} ρ_m/(x_k − x_m)],  j ≠ k.

OPUC with β frozen, z_j = e^{iθ_j} and weights μ_j:

    {θ_j, θ_k} = 0,   {θ_j, μ_k} = δ_jk μ_j − μ_j μ_k.
"""
from typing import List, Optional

import numpy as np

from ..core import ArgumentError, JacobiParams, VerblunskyParams
from ..oprl import jacobi_to_measure
from ..opuc import cmv_to_measure
from .backend import spectral_jacobian
from .report import BracketReport, Tolerances, make_report, normalized_residual
from .tensors import OprlFiniteTensor, OpucFiniteTensor


def _pair_brackets(grad_f: np.ndarray, grad_g: np.ndarray, pi: np.ndarray):
    return grad_f @ pi @ grad_g.T, np.abs(grad_f) @ np.abs(pi) @ np.abs(grad_g).T


def rho_rho_bracket(x: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Closed form of {ρ_j, ρ_k} for distinct nodes."""
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, np.inf)
    inv = 1.0 / diff
    t = inv @ rho
    out = np.outer(rho, rho) * (inv - t[:, None] + t[None, :])
    np.fill_diagonal(out, 0.0)
    return out


def oprl_spectral_gradients(J: JacobiParams):
    """x, ρ and their gradients (N × D each) in the tensor coordinates of J."""
    N = J.N
    tensor = OprlFiniteTensor(N)

    def spectral_map(point):
        measure = jacobi_to_measure(tensor.params_of(point))
        return measure.x, measure.rho

    x, rho, jac = spectral_jacobian(spectral_map, J.to_vector(), name="jacobi_to_measure")
    return x, rho, jac[:N], jac[N:]


def opuc_spectral_gradients(v: VerblunskyParams):
    """θ, μ and their gradients in (u_0, v_0, ...) coordinates with β frozen."""
    N = v.N
    tensor = OpucFiniteTensor(N, v.beta)

    def spectral_map(point):
        measure = cmv_to_measure(tensor.params_of(point))
        return measure.theta, measure.mu

    theta, mu, jac = spectral_jacobian(spectral_map, v.to_vector(), circle=True, name="cmv_to_measure")
    return theta, mu, jac[:N], jac[N:]


def verify_fundamental_oprl(J: JacobiParams, tol: Optional[float] = None,
                            tolerances=None) -> List[BracketReport]:
    """One report each for {x,x}, {x,ρ} and {ρ,ρ}, over all index pairs."""
    J = J.values()
    N = J.N
    if N < 2:
        raise ArgumentError("fundamental brackets need N >= 2")
    table = Tolerances.build(tol, tolerances)
    pi = OprlFiniteTensor(N).matrix(J.to_vector())
    x, rho, grad_x, grad_rho = oprl_spectral_gradients(J)
    grid = f"all index pairs j, k in 1..{N}"

    xx, xx_scale = _pair_brackets(grad_x, grad_x, pi)
    xr, xr_scale = _pair_brackets(grad_x, grad_rho, pi)
    rr, rr_scale = _pair_brackets(grad_rho, grad_rho, pi)
    expected_xr = 0.5 * (np.diag(rho) - np.outer(rho, rho))

    row_sums = float(np.max(np.abs(xr.sum(axis=1))))
    reports = [
        make_report("oprl.fundamental.x_x", normalized_residual(xx, 0.0, xx_scale),
                    table.resolve("oprl.fundamental.x_x", "fundamental"), grid, size=N),
        make_report("oprl.fundamental.x_rho", normalized_residual(xr, expected_xr, xr_scale),
                    table.resolve("oprl.fundamental.x_rho", "fundamental"), grid,
                    notes=f"max |sum_k {{x_j, rho_k}}| = {row_sums:.2e}", size=N),
        make_report("oprl.fundamental.rho_rho", normalized_residual(rr, rho_rho_bracket(x, rho), rr_scale),
                    table.resolve("oprl.fundamental.rho_rho", "fundamental_rho"), grid, size=N),
    ]
    return reports


def verify_fundamental_opuc(v: VerblunskyParams, tol: Optional[float] = None,
                            tolerances=None) -> List[BracketReport]:
    """Reports for {θ,θ} and {θ,μ} with β frozen."""
    v = v.values()
    N = v.N
    if N < 2:
        raise ArgumentError("fundamental brackets need N >= 2")
    table = Tolerances.build(tol, tolerances)
    pi = OpucFiniteTensor(N, v.beta).matrix(v.to_vector())
    theta, mu, grad_theta, grad_mu = opuc_spectral_gradients(v)
    grid = f"all index pairs j, k in 1..{N}"

    tt, tt_scale = _pair_brackets(grad_theta, grad_theta, pi)
    tm, tm_scale = _pair_brackets(grad_theta, grad_mu, pi)
    expected_tm = np.diag(mu) - np.outer(mu, mu)
    total_theta = float(np.max(np.abs(tm.sum(axis=0))))
    return [
        make_report("opuc.fundamental.theta_theta", normalized_residual(tt, 0.0, tt_scale),
                    table.resolve("opuc.fundamental.theta_theta", "fundamental"), grid, size=N),
        make_report("opuc.fundamental.theta_mu", normalized_residual(tm, expected_tm, tm_scale),
                    table.resolve("opuc.fundamental.theta_mu", "fundamental"), grid,
                    notes=f"max |{{sum_j theta_j, mu_k}}| = {total_theta:.2e}", size=N),
    ]
