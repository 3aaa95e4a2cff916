"""Commutation of the discriminant and of the Floquet eigenvalues under the periodic tensor,
and the θ-dependence laws of their symmetric functions.
"""
import logging
from typing import List, Optional, Sequence

import numpy as np

from ..core import DegenerateSpectrumError, abs2, gradient_of, seed, value_of
from ..poisson.backend import jacobi_identity_residual
from ..poisson.collect import SuiteCollector, worst_residual
from ..poisson.grid import Grid, circle_grid, real_grid
from ..poisson.report import BracketReport, Tolerances
from ..poisson.sampled import bracket_matrix, sample_poly
from ..poisson.tensors import OprlPeriodicTensor, OpucPeriodicTensor
from .floquet import floquet_crosscheck, floquet_gradients, floquet_spectrum, symmetric_functions
from .newton import elementary_to_power_sums
from .transfer import det_residual, discriminant, leading_residual, trace_poly

logger = logging.getLogger(__name__)

THETA_SAMPLES = (0.0, 0.4, 1.1, 1.9, 2.6, np.pi)
GRID_POINTS = 6


def _tensor(params):
    if params.kind == "OPRL":
        return OprlPeriodicTensor(params.p)
    return OpucPeriodicTensor(params.p)


def discriminant_from_bands(params, z):
    """Δ rebuilt from the θ = 0 and θ = π spectra.

    OPRL: [Π(x − λ_j(0)) + Π(x − λ_j(π))]/(2Πa_j);
    OPUC: the same sum divided by 2Πρ_j z^{p/2}.
    """
    params = params.values()
    z = np.asarray(z)
    periodic = np.prod(z[..., None] - floquet_spectrum(params, 0.0), axis=-1)
    antiperiodic = np.prod(z[..., None] - floquet_spectrum(params, np.pi), axis=-1)
    total = periodic + antiperiodic
    if params.kind == "OPRL":
        return total / (2.0 * params.product_a())
    return total / (2.0 * params.product_rho() * z ** (params.p // 2))


def _eigen_samples(params, thetas):
    """(θ, λ, ∇λ) for every θ sample with a simple spectrum."""
    samples = []
    for theta in thetas:
        try:
            eigs, grads = floquet_gradients(params, theta)
        except DegenerateSpectrumError as err:
            logger.warning("skipping theta=%.4f: %s", theta, err)
            continue
        samples.append((theta, eigs, grads))
    return samples


def verify_periodic_brackets(params, grid: Optional[Grid] = None, tol: Optional[float] = None,
                             tolerances=None, thetas: Sequence[float] = THETA_SAMPLES) -> List[BracketReport]:
    """{Δ(z), Δ(w)} = 0, {λ_j(θ), λ_k(θ′)} = 0 and the structural checks of the periodic tensor."""
    params = params.values()
    table = Tolerances.build(tol, tolerances)
    tensor = _tensor(params)
    point = params.to_vector()
    D = tensor.dimension
    pi = tensor.matrix(point)
    dual_params = tensor.params_of(seed(point))
    prefix = "oprl.periodic" if params.kind == "OPRL" else "opuc.periodic"
    if grid is None:
        grid = real_grid(GRID_POINTS) if params.kind == "OPRL" else circle_grid(GRID_POINTS)
    suite = SuiteCollector(table, grid.description, params.p)
    z, w = grid.z, grid.w

    trace = trace_poly(dual_params)
    delta_z, delta_w = sample_poly(trace, z, D), sample_poly(trace, w, D)
    if params.kind == "OPUC":
        half = params.p // 2
        delta_z, delta_w = delta_z * z ** (-half), delta_w * w ** (-half)
    value, scale = bracket_matrix(delta_z, delta_w, pi)
    suite.add(f"{prefix}.discriminant_involution", "periodic_brackets", worst_residual(value, 0.0, scale))

    samples = _eigen_samples(params, thetas)
    worst = 0.0
    for _, _, grads_a in samples:
        for _, _, grads_b in samples:
            value = grads_a @ pi @ grads_b.T
            scale = np.abs(grads_a) @ np.abs(pi) @ np.abs(grads_b).T
            worst = max(worst, worst_residual(value, 0.0, scale))
    suite.add(f"{prefix}.eigenvalue_involution", "periodic_brackets", worst)
    suite.note(f"{prefix}.eigenvalue_involution",
               f"{len(samples)} of {len(thetas)} theta samples with simple spectrum")

    probes = np.concatenate([np.asarray(z, dtype=complex), np.asarray(w, dtype=complex) * (1.0 + 0.3j)])
    suite.add(f"{prefix}.monodromy_det", "periodic_det", max(det_residual(params, zz) for zz in probes))
    suite.add(f"{prefix}.discriminant_leading", "periodic_det", leading_residual(params))

    bands = discriminant_from_bands(params, probes)
    direct = np.array([discriminant(params, zz) for zz in probes])
    suite.add(f"{prefix}.discriminant_from_bands", "periodic_laws", worst_residual(bands, direct))

    cyclic, largest = jacobi_identity_residual(tensor, point)
    suite.add(f"{prefix}.jacobi_identity", "jacobi_identity", cyclic / max(1.0, largest))

    if params.kind == "OPRL":
        _oprl_extras(suite, params, dual_params, pi, D, thetas)
    else:
        _opuc_extras(suite, params, dual_params, point, pi, D, samples)
    return suite.reports()


def _oprl_extras(suite, params, dual_params, pi, D, thetas):
    sum_b = np.concatenate([np.ones(params.p), np.zeros(params.p)])
    suite.add("oprl.periodic.casimir_sum_b", "casimir", worst_residual(sum_b @ pi, 0.0))
    grad_prod = gradient_of(dual_params.product_a(), D)
    scale = np.abs(grad_prod) @ np.abs(pi)
    suite.add("oprl.periodic.casimir_prod_a", "casimir", worst_residual(grad_prod @ pi, 0.0, scale))
    gap = max(floquet_crosscheck(params, theta) for theta in thetas)
    suite.add("oprl.periodic.floquet_vs_eig", "periodic_laws", gap)


def rotation_test_function(alpha):
    """Re α_0 + Im(α_0 α_1) + |α_0|², a non-invariant probe for the rotation flow."""
    return alpha[0].real + (alpha[0] * alpha[1]).imag + abs2(alpha[0])


def _opuc_extras(suite, params, dual_params, point, pi, D, samples):
    grad_prod = gradient_of(dual_params.product_rho(), D)
    worst = 0.0
    for _, _, grads in samples:
        value = grads @ pi @ grad_prod
        scale = np.abs(grads) @ np.abs(pi) @ np.abs(grad_prod)
        worst = max(worst, worst_residual(value, 0.0, scale))
    suite.add("opuc.periodic.prod_rho_eigenvalue", "periodic_brackets", worst)

    # {Πρ², g} = −Πρ² Σ_j ∂g/∂(arg α_j), ∂/∂(arg α_j) = −v_j ∂_{u_j} + u_j ∂_{v_j}
    prod_rho2 = dual_params.product_rho() * dual_params.product_rho()
    grad_h = gradient_of(prod_rho2, D)
    grad_g = gradient_of(rotation_test_function(dual_params.alpha), D)
    rotation = np.empty(D)
    rotation[0::2] = -point[1::2]
    rotation[1::2] = point[0::2]
    lhs = grad_h @ pi @ grad_g
    rhs = -value_of(prod_rho2) * (grad_g @ rotation)
    scale = np.abs(grad_h) @ np.abs(pi) @ np.abs(grad_g)
    suite.add("opuc.periodic.rotation_flow", "periodic_brackets", worst_residual(lhs, rhs, scale))

    modulus = 0.0
    for theta, eigs, _ in samples:
        product = complex(np.prod(eigs))
        modulus = max(modulus, abs(abs(product) - 1.0))
        logger.debug("theta=%.4f: product of Floquet eigenvalues %.12g%+.12gi", theta, product.real, product.imag)
    suite.add("opuc.periodic.eigenvalue_product_modulus", "periodic_laws", modulus)


def theta_laws(params, thetas: Sequence[float] = THETA_SAMPLES, tol: Optional[float] = None,
               tolerances=None) -> List[BracketReport]:
    """θ-independence of the low symmetric functions and the (2 − 2cosθ) laws at the top.

    OPRL: s_k, t_k fixed for k < p; s_p(θ) − s_p(0) = (−1)^p Πa (2 − 2cosθ),
    t_p(θ) − t_p(0) = −p Πa (2 − 2cosθ).
    OPUC: s_k fixed for k ≠ p/2, t_k fixed for k < p/2;
    s_{p/2}(θ) − s_{p/2}(0) = (−1)^{p/2} Πρ (2 − 2cosθ), t_{p/2}(θ) − t_{p/2}(0) = −(p/2) Πρ (2 − 2cosθ).
    """
    params = params.values()
    table = Tolerances.build(tol, tolerances)
    p = params.p
    if params.kind == "OPRL":
        prefix, top, norm = "oprl.periodic", p, params.product_a()
        s_fixed = list(range(1, p))
    else:
        prefix, top, norm = "opuc.periodic", p // 2, params.product_rho()
        s_fixed = [k for k in range(1, p + 1) if k != top]
    suite = SuiteCollector(table, f"theta in {[round(float(t), 4) for t in thetas]}", p)
    s0, t0 = symmetric_functions(params, 0.0)

    worst = {"s_invariance": 0.0, "t_invariance": 0.0, "s_law": 0.0, "t_law": 0.0, "newton": 0.0}
    for theta in thetas:
        s, t = symmetric_functions(params, theta)
        bump = norm * (2.0 - 2.0 * np.cos(theta))
        for k in s_fixed:
            worst["s_invariance"] = max(worst["s_invariance"], worst_residual(s[k], s0[k]))
        for k in range(1, top):
            worst["t_invariance"] = max(worst["t_invariance"], worst_residual(t[k], t0[k]))
        worst["s_law"] = max(worst["s_law"], worst_residual(s[top] - s0[top], (-1) ** top * bump))
        worst["t_law"] = max(worst["t_law"], worst_residual(t[top] - t0[top], -top * bump))
        worst["newton"] = max(worst["newton"], worst_residual(elementary_to_power_sums(s[1:]), t[1:]))

    suite.add(f"{prefix}.s_invariance", "periodic_laws", worst["s_invariance"])
    suite.add(f"{prefix}.t_invariance", "periodic_laws", worst["t_invariance"])
    suite.add(f"{prefix}.s_top_law", "periodic_laws", worst["s_law"])
    suite.add(f"{prefix}.t_top_law", "periodic_laws", worst["t_law"])
    suite.add(f"{prefix}.newton_roundtrip", "periodic_laws", worst["newton"])
    return suite.reports()

