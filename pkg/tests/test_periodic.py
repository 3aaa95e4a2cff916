import numpy as np
import pytest

from opbracket.core import ArgumentError
from opbracket.periodic import (PeriodicOprl, PeriodicOpuc, det_residual, discriminant,
                                discriminant_from_bands, dos_moments, elementary_to_power_sums,
                                finite_section_moments, floquet_crosscheck, floquet_gradients,
                                floquet_spectrum, jacobi_theta, leading_residual, newton_convert,
                                power_sums_to_elementary, symmetric_functions, theta_laws,
                                verify_periodic_brackets)
from opbracket.poisson import richardson_derivative

from .helpers import asserted_failures

FREE = PeriodicOprl([0.0], [1.0])


def test_period_validation():
    with pytest.raises(ArgumentError):
        PeriodicOprl([0.0, 1.0], [1.0])
    with pytest.raises(ArgumentError):
        PeriodicOprl([0.0], [-1.0])
    with pytest.raises(ArgumentError):
        PeriodicOpuc([0.1, 0.2, 0.3])
    with pytest.raises(ArgumentError):
        PeriodicOpuc([0.1, 1.2])


@pytest.mark.parametrize("z", [0.3, -1.7 + 0.4j, 2.5j])
def test_monodromy_determinant(periodic_oprl3, periodic_opuc4, z):
    assert det_residual(periodic_oprl3, z) < 1e-12
    assert det_residual(periodic_opuc4, z) < 1e-12


def test_discriminant_leading_coefficient(periodic_oprl3, periodic_opuc4):
    assert leading_residual(periodic_oprl3) < 1e-13
    assert leading_residual(periodic_opuc4) < 1e-13


def test_free_discriminant_and_floquet_spectrum():
    assert discriminant(FREE, 0.6) == pytest.approx(0.6)
    for theta in (0.0, 0.9, np.pi):
        np.testing.assert_allclose(floquet_spectrum(FREE, theta), [2.0 * np.cos(theta)], atol=1e-14)


def test_opuc_discriminant_undefined_at_origin(periodic_opuc4):
    with pytest.raises(ArgumentError):
        discriminant(periodic_opuc4, 0.0)


@pytest.mark.parametrize("theta", [0.0, 0.7, 2.2, np.pi])
def test_floquet_roots_match_hermitian_matrix(periodic_oprl3, theta):
    assert floquet_crosscheck(periodic_oprl3, theta) < 1e-10
    M = jacobi_theta(periodic_oprl3, theta)
    np.testing.assert_allclose(M, M.conj().T)


def test_opuc_floquet_spectrum_is_unimodular(periodic_opuc4):
    eigs = floquet_spectrum(periodic_opuc4, 1.3)
    assert eigs.size == 4
    np.testing.assert_allclose(np.abs(eigs), 1.0, atol=1e-13)
    for lam in eigs:
        assert discriminant(periodic_opuc4, lam) == pytest.approx(2.0 * np.cos(1.3), abs=1e-9)


@pytest.mark.parametrize("z", [0.3, 1.7 + 0.2j, -2.1])
def test_discriminant_from_band_edges_oprl(periodic_oprl3, z):
    assert discriminant_from_bands(periodic_oprl3, z) == pytest.approx(discriminant(periodic_oprl3, z), rel=1e-10)


@pytest.mark.parametrize("z", [0.8 * np.exp(0.3j), 1.2 * np.exp(-2.0j)])
def test_discriminant_from_band_edges_opuc(periodic_opuc4, z):
    assert discriminant_from_bands(periodic_opuc4, z) == pytest.approx(discriminant(periodic_opuc4, z), rel=1e-9)


def test_floquet_gradients_against_finite_differences(periodic_oprl3):
    theta = 1.1
    eigs, grads = floquet_gradients(periodic_oprl3, theta)
    numeric = richardson_derivative(
        lambda q: floquet_spectrum(PeriodicOprl(q[:3], q[3:]), theta), periodic_oprl3.to_vector(), 1e-4)
    assert grads.shape == (3, 6)
    np.testing.assert_allclose(grads, numeric, atol=1e-8)


def test_newton_identities_roundtrip():
    t = np.array([1.0, 2.5, -0.7, 3.2])
    s = power_sums_to_elementary(t)
    np.testing.assert_allclose(elementary_to_power_sums(s), t)
    np.testing.assert_allclose(newton_convert(newton_convert(t), inverse=True), t)
    # roots 1, 2: s = (3, 2), t = (3, 5)
    np.testing.assert_allclose(power_sums_to_elementary([3.0, 5.0]), [3.0, 2.0])


def test_symmetric_functions_match_eigenvalues(periodic_oprl3):
    s, t = symmetric_functions(periodic_oprl3, 0.5)
    eigs = floquet_spectrum(periodic_oprl3, 0.5)
    assert t[0] == pytest.approx(3.0)
    assert t[2] == pytest.approx(np.sum(eigs ** 2))
    assert s[3] == pytest.approx(np.prod(eigs))


def test_theta_laws(periodic_oprl3, periodic_opuc4):
    reports = theta_laws(periodic_oprl3) + theta_laws(periodic_opuc4)
    assert {r.identity_id for r in reports} >= {"oprl.periodic.s_top_law", "opuc.periodic.t_top_law"}
    assert asserted_failures(reports) == []


def test_theta_laws_free_period_one():
    assert asserted_failures(theta_laws(FREE)) == []


def test_periodic_brackets(periodic_oprl3, periodic_opuc4):
    reports = verify_periodic_brackets(periodic_oprl3) + verify_periodic_brackets(periodic_opuc4)
    assert reports
    assert asserted_failures(reports) == []


def test_free_density_of_states_moments():
    first = dos_moments(FREE, 1)
    assert first.moment == pytest.approx(0.0, abs=1e-14)
    assert first.correction == pytest.approx(2.0)
    assert first.residual == pytest.approx(0.0, abs=1e-13)
    second = dos_moments(FREE, 2)
    assert second.moment == pytest.approx(2.0)
    assert second.residual is None


def test_free_finite_sections():
    ms = [1, 2, 5, 10]
    values = finite_section_moments(FREE, 2, ms)
    np.testing.assert_allclose(values, [2.0 - 2.0 / (2 * m + 1) for m in ms], rtol=1e-14)
    with pytest.raises(ArgumentError):
        finite_section_moments(FREE, 2, [0])


def test_finite_sections_approach_density_of_states(periodic_oprl3):
    moment = dos_moments(periodic_oprl3, 2).moment
    far, = finite_section_moments(periodic_oprl3, 2, [50])
    assert abs(far - moment) < 0.1


@pytest.mark.parametrize("k", [1, 2])
def test_opuc_dos_moments_below_top(periodic_opuc4, k):
    result = dos_moments(periodic_opuc4, k)
    assert result.residual < 1e-10


def test_free_period_two_top_degree_correction():
    first = dos_moments(PeriodicOprl([0.0, 0.0], [1.0, 1.0]), 2)
    assert first.trace_at_zero == pytest.approx(8.0)
    assert 2 * first.moment == pytest.approx(4.0)
    assert first.correction == pytest.approx(4.0)
    assert first.residual == pytest.approx(0.0, abs=1e-12)


def test_top_degree_moments(periodic_oprl3, periodic_opuc4):
    oprl = dos_moments(periodic_oprl3, 3)
    assert oprl.correction == pytest.approx(6.0 * np.prod(periodic_oprl3.a))
    assert oprl.residual < 1e-10
    opuc = dos_moments(periodic_opuc4, 2)
    assert opuc.correction > 0.0
    assert opuc.residual < 1e-10
