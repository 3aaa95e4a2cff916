"""Symplectic forms inverse to the Poisson tensors.

Orientation: ω(v, H_f) = df(v), so {ζ_j, ζ_k} = (Ω^{−1})_{kj}, i.e. π = −Ω^{−1}.

On the fixed-trace leaf of the OPRL manifold, in coordinates (a_1..a_{N−1}, b_1..b_{N−1}),
Ω = [[0, W], [−Wᵀ, 0]] with W lower triangular and W_kl = 4/a_k for l ≤ k. For OPUC with β
frozen Ω is block diagonal with blocks (2/ρ_j²)[[0, 1], [−1, 0]] in (u_j, v_j).
"""
import logging
from typing import Optional

import numpy as np

from ..core import ArgumentError, DegeneracyError, JacobiParams, VerblunskyParams
from .base import PoissonTensor
from .fundamental import oprl_spectral_gradients, opuc_spectral_gradients
from .report import BracketReport, Tolerances, make_report, normalized_residual
from .tensors import OprlFiniteTensor, OpucFiniteTensor

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12


def _inverse(mat: np.ndarray, what: str) -> np.ndarray:
    mat = np.asarray(mat, dtype=float)
    if mat.size == 0:
        return mat
    cond = np.linalg.cond(mat)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise DegeneracyError(f"{what} is singular (condition number {cond:.2e})")
    return np.linalg.inv(mat)


def _max_normalized(lhs, rhs) -> float:
    res = normalized_residual(lhs, rhs)
    return float(np.max(res)) if res.size else 0.0


def triangular_w(a: np.ndarray) -> np.ndarray:
    """W_kl = 4/a_k for l ≤ k, zero above the diagonal."""
    a = np.asarray(a, dtype=float)
    return np.tril(np.repeat((4.0 / a)[:, None], a.size, axis=1))


def block_matrix(U: np.ndarray, W: np.ndarray) -> np.ndarray:
    n = W.shape[0]
    return np.block([[U, W], [-W.T, np.zeros((n, n))]])


def block_inverse(U: np.ndarray, W: np.ndarray) -> np.ndarray:
    """[[U, W], [−Wᵀ, 0]]^{−1} = [[0, −W^{−T}], [W^{−1}, W^{−1} U W^{−T}]]."""
    W_inv = _inverse(W, "W")
    n = W.shape[0]
    return np.block([[np.zeros((n, n)), -W_inv.T], [W_inv, W_inv @ U @ W_inv.T]])


def block_inverse_residual(U: np.ndarray, W: np.ndarray) -> float:
    """Closed-form block inverse against direct numerical inversion."""
    U, W = np.asarray(U, dtype=float), np.asarray(W, dtype=float)
    direct = _inverse(block_matrix(U, W), "block matrix")
    return _max_normalized(direct, block_inverse(U, W))


def _oprl_leaf(tensor: OprlFiniteTensor, point):
    N = tensor.N
    order = [tensor.a_index(k) for k in range(N - 1)] + [tensor.b_index(k) for k in range(N - 1)]
    pi = tensor.matrix(point)
    return pi[np.ix_(order, order)], np.asarray(point, dtype=float)[N:]


def symplectic_check(point, tensor: PoissonTensor, tol: Optional[float] = None,
                     tolerances=None) -> BracketReport:
    """Invert the closed-form two-form and compare with the tensor, entry by entry.

    Raises:
        DegeneracyError: for tensors with Casimirs on their full space, or a singular Ω.
    """
    table = Tolerances.build(tol, tolerances)
    if tensor.kind == "OPRL_finite":
        return _oprl_symplectic(point, tensor, table)
    if tensor.kind == "OPUC_finite":
        return _opuc_symplectic(point, tensor, table)
    raise DegeneracyError(f"{tensor.kind} tensor is degenerate; no symplectic form on the full space")


def _oprl_symplectic(point, tensor: OprlFiniteTensor, table: Tolerances) -> BracketReport:
    N = tensor.N
    if N < 2:
        raise ArgumentError("the fixed-trace leaf needs N >= 2")
    identity_id = "oprl.symplectic.triangular"
    P, a = _oprl_leaf(tensor, point)
    W = triangular_w(a)
    n = N - 1
    omega = block_matrix(np.zeros((n, n)), W)
    omega_inv = _inverse(omega, "Omega")

    inverse_relation = _max_normalized(P, omega_inv.T)
    numeric_omega = -_inverse(P, "restricted Poisson matrix")
    pattern = max(_max_normalized(numeric_omega[:n, n:], W),
                  _max_normalized(numeric_omega[:n, :n], 0.0),
                  _max_normalized(numeric_omega[n:, n:], 0.0))
    block = block_inverse_residual(W - W.T, W)
    residual = max(inverse_relation, pattern, block)

    opposite_orientation = _max_normalized(P, -omega_inv.T)
    column_constant = np.tril(np.repeat((4.0 / a)[None, :], n, axis=0))
    column_variant = _max_normalized(numeric_omega[:n, n:], column_constant)
    notes = (f"coordinates (a1..a{n}, b1..b{n}); pi = (Omega^-1)^T residual {inverse_relation:.2e}, "
             f"W pattern {pattern:.2e}, block inverse {block:.2e}; "
             f"pi = -(Omega^-1)^T gives {opposite_orientation:.2e}; "
             f"column-constant W (4/a_l) gives {column_variant:.2e}")
    logger.debug("%s N=%d: %s", identity_id, N, notes)
    return make_report(identity_id, residual, table.resolve(identity_id, "symplectic"),
                       "fixed-trace leaf", notes, N)


def _opuc_symplectic(point, tensor: OpucFiniteTensor, table: Tolerances) -> BracketReport:
    identity_id = "opuc.symplectic.block_diagonal"
    N = tensor.N
    if N < 2:
        raise ArgumentError("the OPUC form needs N >= 2")
    P = tensor.matrix(point)
    rho2 = tensor.rho_squared(point)
    omega = np.zeros_like(P)
    for j, r2 in enumerate(rho2):
        omega[2 * j, 2 * j + 1] = 2.0 / r2
        omega[2 * j + 1, 2 * j] = -2.0 / r2
    omega_inv = _inverse(omega, "Omega")
    inverse_relation = _max_normalized(P, omega_inv.T)
    numeric_omega = -_inverse(P, "Poisson matrix")
    structure = _max_normalized(numeric_omega, omega)
    residual = max(inverse_relation, structure)
    notes = (f"blocks (2/rho_j^2)[[0,1],[-1,0]]; pi = (Omega^-1)^T residual {inverse_relation:.2e}, "
             f"block structure {structure:.2e}; pi = -(Omega^-1)^T gives "
             f"{_max_normalized(P, -omega_inv.T):.2e}")
    return make_report(identity_id, residual, table.resolve(identity_id, "symplectic"),
                       "beta frozen", notes, N)


def spectral_symplectic_check(params, tol: Optional[float] = None, tolerances=None) -> BracketReport:
    """The form in spectral coordinates (nodes, log weight ratios) has constant W.

    OPRL: (x_1..x_{N−1}, y_k = log(ρ_k/ρ_N)) gives {x_j, y_k} = ½δ_jk, {x_j, x_k} = 0, W = 2I.
    OPUC: (θ_1..θ_{N−1}, log(μ_k/μ_N)) gives {θ_j, y_k} = δ_jk, {θ_j, θ_k} = 0, W = I.
    """
    table = Tolerances.build(tol, tolerances)
    if isinstance(params, JacobiParams):
        params = params.values()
        if params.N < 2:
            raise ArgumentError("spectral coordinates need N >= 2")
        _, weights, grad_nodes, grad_weights = oprl_spectral_gradients(params)
        pi = OprlFiniteTensor(params.N).matrix(params.to_vector())
        identity_id, constant = "oprl.symplectic.spectral", 0.5
    elif isinstance(params, VerblunskyParams):
        params = params.values()
        if params.N < 2:
            raise ArgumentError("spectral coordinates need N >= 2")
        _, weights, grad_nodes, grad_weights = opuc_spectral_gradients(params)
        pi = OpucFiniteTensor(params.N, params.beta).matrix(params.to_vector())
        identity_id, constant = "opuc.symplectic.spectral", 1.0
    else:
        raise ArgumentError(f"unsupported parameters {type(params).__name__}")

    N = params.N
    n = N - 1
    grad_log = grad_weights / weights[:, None]
    grad_y = grad_log[:n] - grad_log[n][None, :]
    grads = np.vstack([grad_nodes[:n], grad_y])
    P = grads @ pi @ grads.T

    nodes_nodes = _max_normalized(P[:n, :n], 0.0)
    nodes_y = _max_normalized(P[:n, n:], constant * np.eye(n))
    numeric_omega = -_inverse(P, "spectral Poisson matrix")
    W = numeric_omega[:n, n:]
    U = numeric_omega[:n, :n]
    w_residual = max(_max_normalized(W, np.eye(n) / constant), _max_normalized(numeric_omega[n:, n:], 0.0))
    u_consistency = _max_normalized(U, -P[n:, n:] / constant ** 2)
    residual = max(nodes_nodes, nodes_y, w_residual, u_consistency)
    notes = (f"W = {1.0 / constant:g} I residual {w_residual:.2e}; "
             f"U = -{{y,y}}/{constant ** 2:g}, max |U| = {float(np.max(np.abs(U))) if U.size else 0.0:.3e}")
    return make_report(identity_id, residual, table.resolve(identity_id, "symplectic_spectral"),
                       "spectral coordinates", notes, N)
