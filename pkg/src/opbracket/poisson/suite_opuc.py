"""Bracket identities for paraorthogonal polynomials, their C/S parts, Carathéodory and
Schur functions, and the Szegő polynomials Φ_n, Ψ_n and their reversals.

Brackets are taken in the real coordinates (u_0, v_0, ...) with β frozen; the Wirtinger
form is evaluated on the same samples as a cross-check.
"""
import logging
from typing import List, Optional

import numpy as np

from ..core import ArgumentError, CoeffPoly, VerblunskyParams, poly_eval, seed, value_of
from ..opuc import det_sign_report, para_family, szego_sequence
from .backend import ScalarField, gradient, jacobi_identity_residual
from .collect import SuiteCollector, bezout_values, worst_residual
from .grid import Grid, away_from, circle_grid
from .report import BracketReport, Tolerances
from .sampled import bracket_matrix, sample_poly, wirtinger_matrix
from .tensors import OpucFiniteTensor

logger = logging.getLogger(__name__)


def _zeros(poly: CoeffPoly) -> np.ndarray:
    coeffs = np.asarray(value_of(poly.coeffs), dtype=complex)
    if coeffs.size < 2:
        return np.zeros(0, dtype=complex)
    return np.roots(coeffs[::-1])


def verify_identity_suite_opuc(v: VerblunskyParams, grid: Optional[Grid] = None, tol: Optional[float] = None,
                               tolerances=None) -> List[BracketReport]:
    """All OPUC bracket identities at one parameter point, one report per identity."""
    v = v.values()
    N = v.N
    if N < 2:
        raise ArgumentError("the OPUC identity suite needs N >= 2")
    grid = grid or circle_grid()
    table = Tolerances.build(tol, tolerances)
    tensor = OpucFiniteTensor(N, v.beta)
    point = v.to_vector()
    D = tensor.dimension
    pi = tensor.matrix(point)
    dual_v = tensor.params_of(seed(point))
    z, w = grid.z, grid.w
    zc, wr = z[:, None], w[None, :]
    dzw = zc - wr
    ratio = (zc + wr) / dzw
    suite = SuiteCollector(table, grid.description, N)

    for n in range(1, N + 1):
        vn = VerblunskyParams(dual_v.alpha[: n - 1], v.beta)
        family = para_family(vn)
        Pz, Pw = sample_poly(family.p, z, D), sample_poly(family.p, w, D)
        Qz, Qw = sample_poly(family.q, z, D), sample_poly(family.q, w, D)
        Cz, Cw = sample_poly(family.c, z, D), sample_poly(family.c, w, D)
        Sz, Sw = sample_poly(family.s, z, D), sample_poly(family.s, w, D)

        for identity_id, (fz, fw) in (("opuc.p_p.self", (Pz, Pw)), ("opuc.q_q.self", (Qz, Qw)),
                                      ("opuc.c_c.self", (Cz, Cw)), ("opuc.s_s.self", (Sz, Sw))):
            value, scale = bracket_matrix(fz, fw, pi)
            suite.add(identity_id, "polynomial", worst_residual(value, 0.0, scale))

        pz, pw, qz, qw = Pz.values[:, None], Pw.values[None, :], Qz.values[:, None], Qw.values[None, :]
        cz, cw, sz, sw = Cz.values[:, None], Cw.values[None, :], Sz.values[:, None], Sw.values[None, :]

        pq, pq_scale = bracket_matrix(Pz, Qw, pi)
        rhs = -0.5j * ((pz * qw - pw * qz) * ratio - qz * qw + pz * pw)
        suite.add("opuc.p_q.bezout", "polynomial", worst_residual(pq, rhs, pq_scale))

        cs, cs_scale = bracket_matrix(Cz, Sw, pi)
        kernel = -1j * (cz * wr * sw - cw * zc * sz) / dzw
        suite.add("opuc.c_s.kernel", "polynomial", worst_residual(cs, kernel, cs_scale))
        suite.add("opuc.c_s.half_pq", "polynomial",
                  worst_residual(cs, -0.5 * pq, np.maximum(cs_scale, 0.5 * pq_scale)))

        # G_n = zρ_0² G'_{n−1} − iρ_0² z S'_{n−1}(z) C'_{n−1}(w), primes for α_0 removed
        if n == 1:
            suite.add("opuc.g_recursion.direct", "polynomial", worst_residual(kernel, 0.0))
            suite.add("opuc.g_recursion.bracket", "polynomial", worst_residual(cs, 0.0, cs_scale))
        else:
            stripped = para_family(vn.strip(1).values())
            c1z, c1w = poly_eval(stripped.c.values(), z)[:, None], poly_eval(stripped.c.values(), w)[None, :]
            s1z, s1w = poly_eval(stripped.s.values(), z)[:, None], poly_eval(stripped.s.values(), w)[None, :]
            rho0_sq = 1.0 - abs(value_of(dual_v.alpha[0])) ** 2
            kernel_prev = -1j * (c1z * wr * s1w - c1w * zc * s1z) / dzw
            recursion = zc * rho0_sq * kernel_prev - 1j * rho0_sq * zc * s1z * c1w
            suite.add("opuc.g_recursion.direct", "polynomial", worst_residual(kernel, recursion))
            suite.add("opuc.g_recursion.bracket", "polynomial", worst_residual(cs, recursion, cs_scale))

        _caratheodory_schur(suite, family, z, w, D, pi, Pz, Pw, Qz, Qw, Cz, Cw, Sz, Sw)

    _szego(suite, dual_v, N, z, w, D, pi)
    _structural(suite, v, dual_v, tensor, point, pi, z, w, D)
    logger.debug("OPUC suite N=%d: %d identities", N, len(suite.worst))
    return suite.reports()


def _caratheodory_schur(suite, family, z, w, D, pi, Pz, Pw, Qz, Qw, Cz, Cw, Sz, Sw):
    """Brackets with F = −Q/P and f = −C/(zS)."""
    zc, wr = z[:, None], w[None, :]
    dzw = zc - wr
    ratio = (zc + wr) / dzw
    p_zeros, s_zeros = _zeros(family.p), _zeros(family.s)
    ok_F_z, ok_F_w = away_from(z, p_zeros), away_from(w, p_zeros)
    ok_f_z = away_from(z, np.append(s_zeros, 0.0))
    ok_f_w = away_from(w, np.append(s_zeros, 0.0))
    shape = (z.size, w.size)

    with np.errstate(all="ignore"):
        Fz, Fw = -Qz / Pz, -Qw / Pw
        fz, fw = -Cz / (Sz * z), -Cw / (Sw * w)
        pz, qz, cz, sz = Pz.values[:, None], Qz.values[:, None], Cz.values[:, None], Sz.values[:, None]
        Fwv, fwv = Fw.values[None, :], fw.values[None, :]
        mask_F = np.broadcast_to(ok_F_w[None, :], shape)
        mask_f = np.broadcast_to(ok_f_w[None, :], shape)

        value, scale = bracket_matrix(Pz, Fw, pi)
        p_F = -0.5j * ((pz * Fwv + qz) * ratio - pz - qz * Fwv)
        suite.add("opuc.p_F", "polynomial", worst_residual(value, p_F, scale, mask_F))
        value, scale = bracket_matrix(Qz, Fw, pi)
        suite.add("opuc.q_F", "polynomial", worst_residual(value, -Fwv * p_F, scale, mask_F))

        V = -1j * (cz + zc * sz * fwv) / dzw
        for identity_id, field, rhs in (("opuc.s_f", Sz, V),
                                        ("opuc.c_f", Cz, -wr * fwv * V),
                                        ("opuc.p_f", Pz, (1.0 - wr * fwv) * V),
                                        ("opuc.q_f", Qz, -(1.0 + wr * fwv) * V)):
            value, scale = bracket_matrix(field, fw, pi)
            suite.add(identity_id, "polynomial", worst_residual(value, rhs, scale, mask_f))

        alt_kernel = -0.5j * ((pz + qz) - zc * (pz - qz) * fwv) / dzw
        pf, pf_scale = bracket_matrix(Pz, fw, pi)
        qf, qf_scale = bracket_matrix(Qz, fw, pi)
        alt_residual = max(worst_residual(pf, (1.0 - wr * fwv) * alt_kernel, pf_scale, mask_f),
                           worst_residual(qf, -(1.0 + wr * fwv) * alt_kernel, qf_scale, mask_f))
        suite.add("opuc.p_f.alt_kernel", "polynomial", alt_residual, asserted=False)
        suite.note("opuc.p_f.alt_kernel",
                   "kernel -i/2[(P+Q) - z(P-Q)f(w)]/(z-w); the asserted kernel is "
                   "-i(C(z) + zS(z)f(w))/(z-w)")

        value, scale = bracket_matrix(Fz, Fw, pi)
        Fzv = Fz.values[:, None]
        rhs = -0.5j * (Fzv - Fwv) * (ratio * (Fzv - Fwv) + 1.0 - Fzv * Fwv)
        suite.add("opuc.F_F", "polynomial",
                  worst_residual(value, rhs, scale, ok_F_z[:, None] & ok_F_w[None, :]))

        value, scale = bracket_matrix(fz, fw, pi)
        fzv = fz.values[:, None]
        rhs = -1j * (fzv - fwv) / dzw * (zc * fzv - wr * fwv)
        suite.add("opuc.f_f", "polynomial",
                  worst_residual(value, rhs, scale, ok_f_z[:, None] & ok_f_w[None, :]))


def _szego(suite, dual_v, N, z, w, D, pi):
    pairs = szego_sequence(dual_v, N - 1)
    zc, wr = z[:, None], w[None, :]
    dzw = zc - wr
    ratio = (zc + wr) / dzw
    alt_prev = 0.0

    sampled = []
    for pair in pairs:
        sampled.append({name: (sample_poly(getattr(pair, name), z, D), sample_poly(getattr(pair, name), w, D))
                        for name in ("phi", "phi_star", "psi", "psi_star")})

    for n in range(1, N):
        s = sampled[n]
        for name, identity_id in (("phi", "opuc.phi_phi.self"), ("psi", "opuc.psi_psi.self"),
                                  ("phi_star", "opuc.phi_star.self"), ("psi_star", "opuc.psi_star.self")):
            value, scale = bracket_matrix(s[name][0], s[name][1], pi)
            suite.add(identity_id, "polynomial", worst_residual(value, 0.0, scale))

        phi_z, phi_w = s["phi"][0].values[:, None], s["phi"][1].values[None, :]
        psi_z, psi_w = s["psi"][0].values[:, None], s["psi"][1].values[None, :]
        phs_z, phs_w = s["phi_star"][0].values[:, None], s["phi_star"][1].values[None, :]
        pss_z, pss_w = s["psi_star"][0].values[:, None], s["psi_star"][1].values[None, :]

        value, scale = bracket_matrix(s["phi_star"][0], s["psi_star"][1], pi)
        rhs = -0.5j * ((phs_z * pss_w - pss_z * phs_w) * ratio - phs_z * phs_w + pss_z * pss_w)
        suite.add("opuc.phi_star_psi_star", "polynomial", worst_residual(value, rhs, scale))

        value, scale = bracket_matrix(s["phi"][0], s["psi"][1], pi)
        rhs = -0.5j * ((phi_z * psi_w - psi_z * phi_w) * ratio + phi_z * phi_w - psi_z * psi_w)
        suite.add("opuc.phi_psi", "polynomial", worst_residual(value, rhs, scale))

        value, scale = bracket_matrix(s["phi"][0], s["phi_star"][1], pi)
        rhs = 1j * wr * (phi_z * phs_w - phi_w * phs_z) / dzw
        suite.add("opuc.phi_phi_star.bezout", "polynomial", worst_residual(value, rhs, scale))

        value, scale = bracket_matrix(s["psi"][0], s["psi_star"][1], pi)
        rhs = 1j * wr * (psi_z * pss_w - psi_w * pss_z) / dzw
        suite.add("opuc.psi_psi_star.bezout", "polynomial", worst_residual(value, rhs, scale))

        prev = sampled[n - 1]
        prev_kernel = bezout_values(prev["phi"][0].values, prev["phi_star"][0].values,
                                    prev["phi"][1].values, prev["phi_star"][1].values, z, w)
        alpha_bar = np.conj(value_of(dual_v.alpha[n - 1]))
        value, scale = bracket_matrix(prev["phi"][0], s["phi"][1], pi)
        suite.add("opuc.phi_prev_phi", "polynomial",
                  worst_residual(value, -1j * alpha_bar * wr * prev_kernel, scale))

        value, scale = bracket_matrix(s["phi"][0], prev["phi_star"][1], pi)
        suite.add("opuc.phi_phi_star_prev", "polynomial",
                  worst_residual(value, 1j * zc * wr * prev_kernel, scale))
        alt_prev = max(alt_prev, worst_residual(value, -1j * zc * wr * prev_kernel, scale))

    suite.add("opuc.phi_phi_star_prev.alt_sign", "polynomial", alt_prev, asserted=False)
    suite.note("opuc.phi_phi_star_prev.alt_sign",
               "residual of {Phi_n(z), Phi*_n-1(w)} = -izw B(Phi_n-1, Phi*_n-1)(z, w); "
               "the asserted form carries +izw")


def _structural(suite, v, dual_v, tensor, point, pi, z, w, D):
    N = v.N
    family = para_family(dual_v)
    Pz, Qw = sample_poly(family.p, z, D), sample_poly(family.q, w, D)
    forward, scale = bracket_matrix(Pz, Qw, pi)
    backward, _ = bracket_matrix(Qw, Pz, pi)
    suite.add("opuc.antisymmetry", "antisymmetry", worst_residual(forward, -backward.T, scale))

    fz, gz = sample_poly(family.p, z, D), sample_poly(family.q, z, D)
    h = sample_poly(family.c, w, D)
    fg = sample_poly(family.p * family.q, z, D)
    lhs, lhs_scale = bracket_matrix(fg, h, pi)
    g_h, gh_scale = bracket_matrix(gz, h, pi)
    f_h, fh_scale = bracket_matrix(fz, h, pi)
    rhs = fz.values[:, None] * g_h + gz.values[:, None] * f_h
    scale = np.maximum(lhs_scale, np.abs(fz.values)[:, None] * gh_scale + np.abs(gz.values)[:, None] * fh_scale)
    suite.add("opuc.leibniz", "leibniz", worst_residual(lhs, rhs, scale))

    rho2 = tensor.rho_squared(point)
    Cz, Sw = sample_poly(family.c, z, D), sample_poly(family.s, w, D)
    worst = 0.0
    for f, g in ((Pz, Qw), (Cz, Sw)):
        real_form, real_scale = bracket_matrix(f, g, pi)
        worst = max(worst, worst_residual(wirtinger_matrix(f, g, rho2), real_form, real_scale))
    suite.add("opuc.wirtinger_cross_check", "symmetry", worst)

    cyclic, largest = jacobi_identity_residual(tensor, point)
    suite.add("opuc.jacobi_identity", "jacobi_identity", cyclic / max(1.0, largest))

    z0 = complex(z[1])
    field = ScalarField(f"P_{N}({z0:.3g})",
                        lambda p: poly_eval(para_family(tensor.params_of(p)).p, z0))
    _, dual_grad = gradient(field, point, "dual")
    _, fd_grad = gradient(field, point, "fd")
    gap = float(np.max(np.abs(dual_grad - fd_grad))) / max(1.0, float(np.max(np.abs(dual_grad))))
    suite.add("opuc.dual_vs_fd", "dual_vs_fd", gap)

    det, to_beta, to_conj = det_sign_report(v)
    suite.add("opuc.cmv.det_sign", "polynomial", to_beta, asserted=False)
    suite.note("opuc.cmv.det_sign",
               f"det C = {det.real:.12g}{det.imag:+.12g}i; |det C - (-1)^(N-1) beta| = {to_beta:.2e}, "
               f"|det C - (-1)^(N-1) conj(beta)| = {to_conj:.2e}")
