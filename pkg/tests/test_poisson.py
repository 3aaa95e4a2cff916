import math

import numpy as np
import pytest

from opbracket.core import ArgumentError, DegeneracyError, JacobiParams
from opbracket.poisson import (BracketReport, OprlFiniteTensor, OprlPeriodicTensor, OpucFiniteTensor,
                               OpucPeriodicTensor, ScalarField, Tolerances, block_inverse_residual,
                               bracket, circle_grid, coordinate_field, first_failure, gradient,
                               jacobi_identity_residual, jacobian_oprl, jacobian_report, make_report,
                               real_grid, spectral_symplectic_check, symplectic_check, triangular_w,
                               verify_fundamental, verify_identity_suite, wirtinger_bracket)

from .helpers import asserted_failures, seeded_jacobi, seeded_verblunsky


@pytest.mark.parametrize("tensor, point", [
    (OprlFiniteTensor(3), [0.3, -0.7, 1.1, 0.8, 1.3]),
    (OpucFiniteTensor(3, 1j), [0.3, 0.2, -0.4, 0.1]),
    (OprlPeriodicTensor(3), [0.4, -0.9, 0.2, 1.1, 0.7, 1.3]),
    (OpucPeriodicTensor(2), [0.3, 0.1, -0.2, 0.4]),
])
def test_tensors_are_antisymmetric_and_satisfy_jacobi(tensor, point):
    pi = tensor.matrix(point)
    assert pi.shape == (tensor.dimension, tensor.dimension)
    np.testing.assert_allclose(pi, -pi.T, atol=0.0)
    residual, scale = jacobi_identity_residual(tensor, point)
    assert residual <= 1e-13 * max(1.0, scale)


def test_oprl_coordinate_brackets(jacobi3):
    tensor = OprlFiniteTensor(3)
    point = jacobi3.to_vector()
    assert tensor.coordinates() == ["b1", "b2", "b3", "a1", "a2"]
    b1, b2, a1 = coordinate_field(0), coordinate_field(1), coordinate_field(3)
    assert bracket(b1, a1, point, tensor) == pytest.approx(-0.8 / 4)
    assert bracket(b2, a1, point, tensor) == pytest.approx(0.8 / 4)


def test_trace_is_a_casimir(jacobi5):
    tensor = OprlFiniteTensor(5)
    trace = ScalarField("tr J", lambda point: sum(point[:5]))
    for index in range(tensor.dimension):
        assert bracket(trace, coordinate_field(index), jacobi5.to_vector(), tensor) == pytest.approx(0.0, abs=1e-15)


def test_opuc_coordinate_bracket(verblunsky4):
    tensor = OpucFiniteTensor(4, verblunsky4.beta)
    point = verblunsky4.to_vector()
    rho0_sq = 1.0 - abs(verblunsky4.alpha[0]) ** 2
    assert bracket(coordinate_field(0), coordinate_field(1), point, tensor) == pytest.approx(rho0_sq / 2)
    assert bracket(coordinate_field(0), coordinate_field(3), point, tensor) == 0.0


def test_wirtinger_bracket_of_alpha_and_conjugate(verblunsky4):
    tensor = OpucFiniteTensor(4, verblunsky4.beta)
    point = verblunsky4.to_vector()
    alpha = ScalarField("alpha0", lambda p: p[0] + 1j * p[1])
    alpha_bar = ScalarField("conj alpha0", lambda p: p[0] - 1j * p[1])
    rho0_sq = 1.0 - abs(verblunsky4.alpha[0]) ** 2
    assert bracket(alpha, alpha_bar, point, tensor) == pytest.approx(-1j * rho0_sq)
    assert wirtinger_bracket(alpha, alpha_bar, point, tensor) == pytest.approx(-1j * rho0_sq)


def test_wirtinger_needs_unit_circle_tensor(jacobi3):
    field = coordinate_field(0)
    with pytest.raises(ArgumentError):
        wirtinger_bracket(field, field, jacobi3.to_vector(), OprlFiniteTensor(3))


def test_dual_and_finite_difference_gradients_agree():
    field = ScalarField("field", lambda p: p[0] * p[1] ** 2 + (p[0] / (1.0 + p[1] * p[1])))
    point = [0.7, -1.2]
    value, dual_grad = gradient(field, point, "dual")
    fd_value, fd_grad = gradient(field, point, "fd")
    assert value == pytest.approx(fd_value)
    np.testing.assert_allclose(dual_grad, fd_grad, rtol=1e-8)
    with pytest.raises(ArgumentError):
        gradient(field, point, "symbolic")


def test_fundamental_brackets_pass(jacobi3, verblunsky4):
    reports = verify_fundamental(jacobi3) + verify_fundamental(verblunsky4)
    assert {r.identity_id for r in reports} == {"oprl.fundamental.x_x", "oprl.fundamental.x_rho",
                                                "oprl.fundamental.rho_rho", "opuc.fundamental.theta_theta",
                                                "opuc.fundamental.theta_mu"}
    assert asserted_failures(reports) == []


@pytest.mark.slow
@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
def test_fundamental_brackets_on_seeded_instances(N):
    reports = []
    for index in range(20):
        reports += verify_fundamental(seeded_jacobi(N, index)) + verify_fundamental(seeded_verblunsky(N, index))
    assert reports
    assert asserted_failures(reports) == []


def test_fundamental_needs_two_sites():
    with pytest.raises(ArgumentError):
        verify_fundamental(JacobiParams([0.5], []))


def test_oprl_identity_suite_passes(jacobi3):
    reports = verify_identity_suite(jacobi3, real_grid(6))
    ids = {r.identity_id for r in reports}
    assert {"oprl.p_q.bezout", "oprl.m_m", "oprl.jacobi_identity", "oprl.casimir.trace"} <= ids
    assert asserted_failures(reports) == []
    assert all(r.size == 3 for r in reports)


def test_opuc_identity_suite_passes(verblunsky4):
    reports = verify_identity_suite(verblunsky4, circle_grid(6))
    ids = {r.identity_id for r in reports}
    assert {"opuc.p_q.bezout", "opuc.f_f", "opuc.wirtinger_cross_check", "opuc.cmv.det_sign"} <= ids
    assert asserted_failures(reports) == []
    det_sign = next(r for r in reports if r.identity_id == "opuc.cmv.det_sign")
    assert det_sign.passed is None


@pytest.mark.slow
@pytest.mark.parametrize("N", [2, 4, 6])
def test_identity_suites_on_seeded_instances(N):
    reports = verify_identity_suite(seeded_jacobi(N, 0)) + verify_identity_suite(seeded_verblunsky(N, 0))
    assert asserted_failures(reports) == []


def test_symplectic_forms(jacobi5, verblunsky4):
    oprl = symplectic_check(jacobi5.to_vector(), OprlFiniteTensor(5))
    opuc = symplectic_check(verblunsky4.to_vector(), OpucFiniteTensor(4, verblunsky4.beta))
    assert oprl.identity_id == "oprl.symplectic.triangular" and oprl.passed
    assert opuc.identity_id == "opuc.symplectic.block_diagonal" and opuc.passed


def test_periodic_tensors_are_degenerate(periodic_oprl3):
    tensor = OprlPeriodicTensor(3)
    with pytest.raises(DegeneracyError):
        symplectic_check(tensor.point_of(periodic_oprl3), tensor)


def test_spectral_symplectic_form(jacobi5, verblunsky4):
    for params in (jacobi5, verblunsky4):
        report = spectral_symplectic_check(params)
        assert report.passed, report.notes


def test_triangular_w_and_block_inverse():
    a = np.array([0.5, 2.0, 1.0])
    W = triangular_w(a)
    np.testing.assert_allclose(W, [[8.0, 0.0, 0.0], [2.0, 2.0, 0.0], [4.0, 4.0, 4.0]])
    U = np.array([[0.0, 1.5, -0.3], [-1.5, 0.0, 0.7], [0.3, -0.7, 0.0]])
    assert block_inverse_residual(U, W) < 1e-13


@pytest.mark.parametrize("variant", ["fixed_trace", "full"])
def test_oprl_jacobian(jacobi3, variant):
    numeric, formula = jacobian_oprl(jacobi3, variant)
    assert numeric == pytest.approx(formula, rel=1e-6)


@pytest.mark.parametrize("variant", ["fixed_beta", "free_beta"])
def test_opuc_jacobian_report(verblunsky4, variant):
    report = jacobian_report(verblunsky4, variant)
    assert report.identity_id == f"opuc.jacobian.{variant}"
    assert report.passed
    assert report.notes.startswith("numeric ")


def test_jacobian_rejects_unknown_variant(jacobi3):
    with pytest.raises(ArgumentError):
        jacobian_oprl(jacobi3, "half")


def test_tolerance_resolution_order():
    table = Tolerances.build(None, {"oprl.m_m": 1e-3})
    assert table.resolve("oprl.m_m", "polynomial") == 1e-3
    assert table.resolve("oprl.q_m", "polynomial") == 1e-8
    table = Tolerances.build(1e-4, table)
    assert table.resolve("oprl.m_m", "polynomial") == 1e-3
    assert table.resolve("oprl.q_m", "polynomial") == 1e-4
    with pytest.raises(ValueError):
        Tolerances.build(-1.0)


def test_report_serialization_and_failures():
    ok = make_report("x.ok", [1e-12, 3e-12], 1e-10, size=3)
    reported = make_report("x.variant", 0.5, 1e-10, asserted=False)
    broken = make_report("x.nan", [1e-12, math.nan], 1e-10)
    assert ok.max_residual == pytest.approx(3e-12) and ok.passed
    assert reported.passed is None
    assert broken.max_residual == math.inf and broken.passed is False
    assert first_failure([ok, reported, broken]) is broken
    payload = ok.to_json_dict()
    assert payload["pass"] is True and "passed" not in payload
    assert BracketReport.model_validate(payload).passed is True


def test_grids():
    grid = real_grid(4, -1.0, 2.0)
    np.testing.assert_allclose(grid.z, [-1.0, 0.0, 1.0, 2.0])
    np.testing.assert_allclose(grid.w - grid.z, 0.5)
    circle = circle_grid(5)
    np.testing.assert_allclose(np.abs(circle.z), 1.3)
    assert circle.shape == (5, 5)
    with pytest.raises(ArgumentError):
        real_grid(1)
