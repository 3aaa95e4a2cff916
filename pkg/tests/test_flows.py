import numpy as np
import pytest
from pydantic import ValidationError

from opbracket.core import ArgumentError, BlowUpError, ConfigError, JacobiParams
from opbracket.flows import (FlowSpec, compare_exact, conserved_report, exact_flow, flow_hamiltonian,
                             flow_rhs_check, flow_tensor, hamiltonian_rhs, integrate_flow, is_schur,
                             isospectral_report, monitored, opuc_ode_check, oprl_ode_check, schur_rhs,
                             schur_rhs_check, time_derivative)
from opbracket.oprl import monic_oprl

from .helpers import asserted_failures, seeded_jacobi


def toda(**overrides):
    return FlowSpec.from_preset("toda", **overrides)


def schur(**overrides):
    return FlowSpec.from_preset("schur", **overrides)


def test_presets():
    assert toda().coeffs == [0.0, 2.0] and toda().preset == "toda"
    assert schur().kind == "opuc"
    np.testing.assert_allclose(toda().half_derivative([0.0, 1.5]), [0.0, 3.0])
    np.testing.assert_allclose(schur().symbol([0.0, np.pi / 2]), [2.0, 0.0], atol=1e-15)
    assert toda(t_final=2.0, dt=None).t_final == 2.0
    with pytest.raises(ConfigError):
        FlowSpec.from_preset("kdv")


@pytest.mark.parametrize("fields", [
    {"kind": "oprl", "coeffs": [0.0, 1.0], "dt": 0.0},
    {"kind": "oprl", "coeffs": [0.0, 1.0], "t_final": float("inf")},
    {"kind": "oprl", "coeffs": []},
    {"kind": "oprl", "coeffs": [0.0, 1.0], "coeffs_imag": [0.0, 0.5]},
    {"kind": "opuc", "coeffs": [0.0, 1.0], "coeffs_imag": [0.2, 0.0]},
    {"kind": "opuc", "coeffs": [0.0], "coeffs_imag": [0.0, 1.0]},
])
def test_flow_spec_validation(fields):
    with pytest.raises(ValidationError):
        FlowSpec(**fields)


@pytest.mark.parametrize("t_final, dt, steps", [(1.0, 0.25, 4), (1.0, 0.3, 4), (0.0, 0.1, 0), (0.5, 1e-3, 500)])
def test_step_count(t_final, dt, steps):
    assert toda(t_final=t_final, dt=dt).steps == steps


def test_is_schur():
    assert is_schur(schur())
    assert is_schur(FlowSpec(kind="opuc", coeffs=[0.7, 1.0]))
    assert not is_schur(FlowSpec(kind="opuc", coeffs=[0.0, 2.0]))
    assert not is_schur(toda())


def test_toda_vector_field(jacobi3):
    spec = toda()
    tensor = flow_tensor(spec, jacobi3)
    rhs = hamiltonian_rhs(flow_hamiltonian(spec, tensor), jacobi3.to_vector(), tensor)
    # ḃ_k = 2(a_k² − a_{k−1}²), ȧ_k = a_k(b_{k+1} − b_k)
    np.testing.assert_allclose(rhs, [1.28, 2.1, -3.38, -0.8, 2.34], atol=1e-13)


def test_trace_flow_is_trivial(jacobi3):
    spec = FlowSpec(kind="oprl", coeffs=[1.0])
    tensor = flow_tensor(spec, jacobi3)
    rhs = hamiltonian_rhs(flow_hamiltonian(spec, tensor), jacobi3.to_vector(), tensor)
    np.testing.assert_allclose(rhs, 0.0, atol=1e-15)
    moved = exact_flow(jacobi3, spec, 0.8)
    np.testing.assert_allclose(moved.to_vector(), jacobi3.to_vector(), atol=1e-11)


def test_hamiltonian_tensor_mismatch(verblunsky4):
    with pytest.raises(ArgumentError):
        flow_hamiltonian(toda(), flow_tensor(schur(), verblunsky4))


def test_exact_flow_at_zero_and_group_property(jacobi5, verblunsky4):
    for start, spec in ((jacobi5, toda()), (verblunsky4, schur())):
        np.testing.assert_allclose(exact_flow(start, spec, 0.0).to_vector(), start.to_vector(), atol=1e-11)
        two_steps = exact_flow(exact_flow(start, spec, 0.3), spec, 0.4)
        np.testing.assert_allclose(two_steps.to_vector(), exact_flow(start, spec, 0.7).to_vector(), atol=1e-10)


def test_exact_opuc_flow_keeps_beta(verblunsky4):
    assert exact_flow(verblunsky4, schur(), 0.5).beta == pytest.approx(verblunsky4.beta)


def test_rk4_matches_exact_flow(jacobi3, verblunsky4):
    for start, spec in ((jacobi3, toda(t_final=0.5, dt=1e-2)), (verblunsky4, schur(t_final=0.5, dt=1e-2))):
        report = compare_exact(spec, start)
        assert report.passed, report.notes
        assert report.identity_id == f"{spec.kind}.flow.exact_vs_rk4"


def test_rk4_is_fourth_order(jacobi3):
    coarse = compare_exact(toda(t_final=0.5, dt=0.05), jacobi3).max_residual
    fine = compare_exact(toda(t_final=0.5, dt=0.025), jacobi3).max_residual
    assert 8.0 < coarse / fine < 24.0


def test_conserved_traces_and_spectrum(jacobi3, verblunsky4):
    for start, spec in ((jacobi3, toda(t_final=0.2)), (verblunsky4, schur(t_final=0.2))):
        trajectory = integrate_flow(spec, start)
        assert len(trajectory.states) == spec.steps + 1
        assert conserved_report(trajectory, spec).passed
        assert isospectral_report(trajectory, spec).passed


def test_monitored_quantities(jacobi3):
    values = monitored(jacobi3)
    assert values[0] == pytest.approx(0.7)
    assert values[1] == pytest.approx(0.09 + 0.49 + 1.21 + 2 * (0.64 + 1.69))


def test_integrate_rejects_wrong_start(verblunsky4):
    with pytest.raises(ArgumentError):
        integrate_flow(toda(), verblunsky4)


def test_zero_length_flow(jacobi3):
    trajectory = integrate_flow(toda(t_final=0.0), jacobi3)
    assert len(trajectory.states) == 1
    np.testing.assert_allclose(trajectory.drift(), 0.0)


def test_blow_up_leaves_the_disk(verblunsky4):
    spec = FlowSpec(kind="opuc", coeffs=[0.0, 40.0], t_final=1.0, dt=0.5)
    with pytest.raises(BlowUpError) as info:
        integrate_flow(spec, verblunsky4)
    assert info.value.time is not None and 0.0 <= info.value.time <= 1.0


def test_trajectory_csv(tmp_path, jacobi3):
    spec = toda(t_final=0.05, dt=0.01)
    trajectory = integrate_flow(spec, jacobi3)
    path = tmp_path / "toda.csv"
    trajectory.to_csv(str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "time,b1,b2,b3,a1,a2,trJ1,trJ2,trJ3,trJ4"
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    assert data.shape == (6, 10)
    np.testing.assert_allclose(data[:, 0], np.linspace(0.0, 0.05, 6))
    np.testing.assert_allclose(data[0, 1:6], jacobi3.to_vector())


def test_monic_equation_for_linear_symbol(jacobi3):
    # ½f′(x) = x: Ṗ_2 = −a_2² P_1
    spec = FlowSpec(kind="oprl", coeffs=[0.0, 1.0])
    fd = time_derivative(jacobi3, spec, lambda J: monic_oprl(J, 2).values())
    np.testing.assert_allclose(fd, [1.69 * 0.3, -1.69, 0.0], atol=1e-8)


@pytest.mark.parametrize("coeffs", [[0.0, 2.0], [0.0, 1.0], [0.0, 0.0, 1.0], [0.3, -0.5, 0.2, 0.1]])
def test_oprl_induced_equations(jacobi5, coeffs):
    reports = oprl_ode_check(jacobi5, FlowSpec(kind="oprl", coeffs=coeffs))
    assert {r.identity_id for r in reports} == {"oprl.ode.monic", "oprl.ode.norm", "oprl.ode.orthonormal"}
    assert asserted_failures(reports) == []


def test_opuc_induced_equations_for_schur_flow(verblunsky4):
    reports = opuc_ode_check(verblunsky4, schur())
    ids = {r.identity_id for r in reports}
    assert {"opuc.ode.y_basis", "opuc.ode.x_basis", "opuc.ode.ismail", "opuc.ode.ismail_reduced",
            "opuc.ode.ismail_degree"} <= ids
    assert asserted_failures(reports) == []


def test_opuc_induced_equations_for_general_symbol(verblunsky4):
    spec = FlowSpec(kind="opuc", coeffs=[0.5, 0.3, -0.2], coeffs_imag=[0.0, 0.4, 0.1])
    reports = opuc_ode_check(verblunsky4, spec)
    assert {r.identity_id for r in reports} == {"opuc.ode.y_basis", "opuc.ode.x_basis"}
    assert asserted_failures(reports) == []


def test_ode_check_needs_matching_kind(jacobi3, verblunsky4):
    with pytest.raises(ArgumentError):
        oprl_ode_check(verblunsky4, toda())
    with pytest.raises(ArgumentError):
        oprl_ode_check(JacobiParams([0.1], []), toda())


def test_schur_coefficient_equation(verblunsky4):
    expected = schur_rhs(verblunsky4)
    alpha, beta = verblunsky4.alpha, verblunsky4.beta
    assert expected[0] == pytest.approx((1 - abs(alpha[0]) ** 2) * (alpha[1] + 1.0))
    assert expected[2] == pytest.approx((1 - abs(alpha[2]) ** 2) * (beta - alpha[1]))
    assert asserted_failures(schur_rhs_check(verblunsky4)) == []


@pytest.mark.parametrize("spec", [
    FlowSpec(kind="oprl", coeffs=[0.2, -0.4, 0.3]),
    FlowSpec(kind="opuc", coeffs=[0.0, 0.3, -0.2], coeffs_imag=[0.0, 0.4, 0.1]),
])
def test_bracket_field_matches_exact_flow(jacobi5, verblunsky4, spec):
    start = jacobi5 if spec.kind == "oprl" else verblunsky4
    report = flow_rhs_check(start, spec)
    assert report.identity_id == f"{spec.kind}.flow.hamiltonian_vs_exact"
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("N", [3, 5, 8])
def test_toda_on_seeded_instances(N):
    start = seeded_jacobi(N)
    spec = toda(t_final=1.0, dt=1e-3)
    trajectory = integrate_flow(spec, start)
    reports = [conserved_report(trajectory, spec), isospectral_report(trajectory, spec),
               compare_exact(spec, start, trajectory)]
    assert asserted_failures(reports) == []
