"""Differential equations induced on the polynomials by the trace flows.

Every check differentiates along the exact flow at t = 0 (central differences with one
Richardson step, h = 1e-5) and compares coefficient vectors with the right-hand sides
built from powers of J or C at the start point.

OPRL, with M = Σ_j c_j J^j and 1-based indices:

    Ṗ_n = −Σ_{ℓ=1}^{min(k,n)} M_{n+1,n−ℓ+1} (a_{n−ℓ+1}⋯a_n) P_{n−ℓ}
    d/dt log(a_1⋯a_n) = ½(M_{n+1,n+1} − M_{11})
    ṗ_n = −½(M_{n+1,n+1} − M_{11}) p_n − Σ_ℓ M_{n+1,n−ℓ+1} p_{n−ℓ}

OPUC, with G = Σ_{k≥1} (b_k C^k + conj(b_k) C^{−k}) and the unnormalized CMV bases:

    Ẏ_n = −Σ_{m<n} G_{mn} (ρ_m⋯ρ_{n−1}) Y_m,   Ẋ_n = −Σ_{m<n} G_{nm} (ρ_m⋯ρ_{n−1}) X_m

Schur flow (g = z + 1/z), α_{−1} = −1, α_{N−1} = β, Φ_N = P_N:

    Φ̇_n = Φ_{n+1} − (z + ᾱ_n α_{n−1})Φ_n − ρ²_{n−1}Φ_{n−1}
        = −ᾱ_n ρ²_{n−1} Φ*_{n−1} − ρ²_{n−1} Φ_{n−1}
    α̇_j = ρ_j²(α_{j+1} − α_{j−1})
"""
import logging
from typing import Callable, List, Optional

import numpy as np

from ..core import ArgumentError, CoeffPoly, JacobiParams, VerblunskyParams
from ..opuc import cmv_basis, cmv_matrix, matrix_power, para_family, szego_sequence
from ..oprl import jacobi_matrix, oprl_family
from ..poisson import BracketReport, Tolerances
from ..poisson.backend import richardson_derivative
from ..poisson.collect import SuiteCollector, worst_residual
from .exact import exact_flow
from .hamiltonian import flow_hamiltonian, flow_tensor, hamiltonian_rhs
from .spec import FlowSpec

logger = logging.getLogger(__name__)

TIME_STEP = 1e-5


def time_derivative(start, spec: FlowSpec, state: Callable) -> np.ndarray:
    """d/dt state(exact_flow(start, t)) at t = 0."""
    derivative = richardson_derivative(lambda t: np.asarray(state(exact_flow(start, spec, t[0]))),
                                       [0.0], TIME_STEP, f"{spec.preset} flow")
    return derivative[..., 0]


def _padded(poly: CoeffPoly, size: int) -> np.ndarray:
    coeffs = np.asarray(poly.values())
    out = np.zeros(size, dtype=np.result_type(coeffs, float))
    out[: coeffs.size] = coeffs
    return out


def _check_kind(spec: FlowSpec, params, kind: str, expected):
    if spec.kind != kind or not isinstance(params, expected):
        raise ArgumentError(f"{kind} check needs a {kind} flow and {expected.__name__}")
    if params.N < 2:
        raise ArgumentError("induced equations need N >= 2")


def _oprl_state(J: JacobiParams) -> np.ndarray:
    N = J.N
    family = oprl_family(J)
    norms = np.concatenate([[1.0], np.cumprod(J.a)])
    monic = [_padded(family.P(n), N) for n in range(1, N)]
    orthonormal = [_padded(family.P(n), N) / norms[n] for n in range(1, N)]
    return np.concatenate(monic + [np.log(norms[1:])] + orthonormal)


def oprl_ode_check(J: JacobiParams, spec: FlowSpec, tol: Optional[float] = None,
                   tolerances=None) -> List[BracketReport]:
    """Monic, norm and orthonormal equations for n = 1..N−1."""
    _check_kind(spec, J, "oprl", JacobiParams)
    J = J.values()
    N, k = J.N, spec.degree
    table = Tolerances.build(tol, tolerances)
    suite = SuiteCollector(table, f"fd along exact flow, h={TIME_STEP:g}", N)

    fd = time_derivative(J, spec, _oprl_state)
    fd_monic = fd[: (N - 1) * N].reshape(N - 1, N)
    fd_norm = fd[(N - 1) * N: (N - 1) * (N + 1)]
    fd_orthonormal = fd[(N - 1) * (N + 1):].reshape(N - 1, N)

    Jm = jacobi_matrix(J)
    M = sum(c * np.linalg.matrix_power(Jm, j) for j, c in enumerate(spec.coeffs))
    family = oprl_family(J)
    norms = np.concatenate([[1.0], np.cumprod(J.a)])
    for n in range(1, N):
        monic = np.zeros(N)
        orthonormal = np.zeros(N)
        for ell in range(1, min(k, n) + 1):
            lower = _padded(family.P(n - ell), N)
            monic -= M[n, n - ell] * np.prod(J.a[n - ell:n]) * lower
            orthonormal -= M[n, n - ell] * lower / norms[n - ell]
        rate = 0.5 * (M[n, n] - M[0, 0])
        orthonormal -= rate * _padded(family.P(n), N) / norms[n]
        suite.add("oprl.ode.monic", "ode", worst_residual(fd_monic[n - 1], monic))
        suite.add("oprl.ode.norm", "ode", worst_residual(fd_norm[n - 1], rate))
        suite.add("oprl.ode.orthonormal", "ode", worst_residual(fd_orthonormal[n - 1], orthonormal))
    return suite.reports()


def _opuc_state(v: VerblunskyParams) -> np.ndarray:
    N = v.N
    basis = cmv_basis(v)
    pairs = szego_sequence(v, N - 1)
    Y = [basis.Y[n].window(-N, N) for n in range(1, N)]
    X = [basis.X[n].window(-N, N) for n in range(1, N)]
    phi = [_padded(pairs[n].phi, N + 1) for n in range(1, N)]
    return np.concatenate(Y + X + phi)


def _generator(v: VerblunskyParams, spec: FlowSpec) -> np.ndarray:
    C = np.asarray(cmv_matrix(v), dtype=complex)
    b = spec.symbol_coeffs()
    G = np.zeros_like(C)
    for k in range(1, b.size):
        if b[k] != 0:
            G += b[k] * matrix_power(C, k) + np.conj(b[k]) * matrix_power(C, -k)
    return G


def is_schur(spec: FlowSpec) -> bool:
    """g = b_0 + z + 1/z; b_0 only rescales the weights."""
    b = spec.symbol_coeffs()
    return spec.kind == "opuc" and b.size == 2 and b[1] == 1.0


def _alpha(v: VerblunskyParams, j: int) -> complex:
    if j == -1:
        return -1.0
    if j == v.N - 1:
        return v.beta
    return complex(v.alpha[j])


def opuc_ode_check(v: VerblunskyParams, spec: FlowSpec, tol: Optional[float] = None,
                   tolerances=None) -> List[BracketReport]:
    """CMV basis equations for n = 1..N−1, plus Φ_n equations for the Schur flow."""
    _check_kind(spec, v, "opuc", VerblunskyParams)
    v = v.values()
    N = v.N
    width = 2 * N + 1
    table = Tolerances.build(tol, tolerances)
    suite = SuiteCollector(table, f"fd along exact flow, h={TIME_STEP:g}", N)

    fd = time_derivative(v, spec, _opuc_state)
    fd_Y = fd[: (N - 1) * width].reshape(N - 1, width)
    fd_X = fd[(N - 1) * width: 2 * (N - 1) * width].reshape(N - 1, width)
    fd_phi = fd[2 * (N - 1) * width:].reshape(N - 1, N + 1)

    G = _generator(v, spec)
    basis = cmv_basis(v)
    rhos = np.sqrt(1.0 - np.abs(v.alpha) ** 2)
    for n in range(1, N):
        Y = np.zeros(width, dtype=complex)
        X = np.zeros(width, dtype=complex)
        for m in range(n):
            weight = np.prod(rhos[m:n])
            Y -= G[m, n] * weight * basis.Y[m].window(-N, N)
            X -= G[n, m] * weight * basis.X[m].window(-N, N)
        suite.add("opuc.ode.y_basis", "ode", worst_residual(fd_Y[n - 1], Y))
        suite.add("opuc.ode.x_basis", "ode", worst_residual(fd_X[n - 1], X))

    if is_schur(spec):
        _ismail(suite, v, fd_phi)
    return suite.reports()


def _ismail(suite: SuiteCollector, v: VerblunskyParams, fd_phi: np.ndarray):
    N = v.N
    pairs = szego_sequence(v, N - 1)
    phi = [pair.phi for pair in pairs] + [para_family(v).p]
    z = CoeffPoly.of([0.0 + 0j, 1.0 + 0j])
    for n in range(1, N):
        rho_sq = 1.0 - abs(_alpha(v, n - 1)) ** 2
        alpha_n_bar = np.conj(_alpha(v, n))
        rhs = phi[n + 1] - (z + alpha_n_bar * _alpha(v, n - 1)) * phi[n] - rho_sq * phi[n - 1]
        reduced = pairs[n - 1].phi_star * (-alpha_n_bar * rho_sq) - pairs[n - 1].phi * rho_sq
        rhs_coeffs = _padded(rhs, N + 1)
        suite.add("opuc.ode.ismail", "ode", worst_residual(fd_phi[n - 1], rhs_coeffs))
        suite.add("opuc.ode.ismail_reduced", "ode_degree",
                  worst_residual(rhs_coeffs, _padded(reduced, N + 1)))
        suite.add("opuc.ode.ismail_degree", "ode_degree", float(np.max(np.abs(rhs_coeffs[n:]))))


def schur_rhs(v: VerblunskyParams) -> np.ndarray:
    """ρ_j²(α_{j+1} − α_{j−1}) for j = 0..N−2."""
    v = v.values()
    return np.array([(1.0 - abs(v.alpha[j]) ** 2) * (_alpha(v, j + 1) - _alpha(v, j - 1))
                     for j in range(v.N - 1)], dtype=complex)


def schur_rhs_check(v: VerblunskyParams, tol: Optional[float] = None,
                    tolerances=None) -> List[BracketReport]:
    """α̇ of the Schur flow from the exact solution and from the bracket with H = 2 Im Tr C."""
    spec = FlowSpec.from_preset("schur")
    _check_kind(spec, v, "opuc", VerblunskyParams)
    v = v.values()
    table = Tolerances.build(tol, tolerances)
    suite = SuiteCollector(table, "t = 0", v.N)
    expected = schur_rhs(v)
    fd = time_derivative(v, spec, lambda w: w.alpha)
    suite.add("opuc.schur.rhs", "ode", worst_residual(fd, expected))
    tensor = flow_tensor(spec, v)
    field = hamiltonian_rhs(flow_hamiltonian(spec, tensor), v.to_vector(), tensor)
    suite.add("opuc.schur.hamiltonian_rhs", "ode", worst_residual(field[0::2] + 1j * field[1::2], expected))
    return suite.reports()


def flow_rhs_check(start, spec: FlowSpec, tol: Optional[float] = None,
                   tolerances=None) -> BracketReport:
    """The bracket vector field of the trace Hamiltonian against d/dt of the exact flow."""
    start = start.values()
    table = Tolerances.build(tol, tolerances)
    tensor = flow_tensor(spec, start)
    field = hamiltonian_rhs(flow_hamiltonian(spec, tensor), tensor.point_of(start), tensor)
    fd = time_derivative(start, spec, lambda params: np.asarray(params.to_vector(), dtype=float))
    suite = SuiteCollector(table, "t = 0", start.N)
    suite.add(f"{spec.kind}.flow.hamiltonian_vs_exact", "ode", worst_residual(fd, field))
    return suite.reports()[0]
