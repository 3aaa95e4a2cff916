import numpy as np
import pytest

from opbracket.core import (ArgumentError, IllConditionedMeasureError, JacobiParams, PoleError,
                            RealDiscreteMeasure)
from opbracket.oprl import (eigenvalues, interlace_check, jacobi_matrix, jacobi_to_measure, lanczos,
                            m_function, measure_to_jacobi, monic_oprl, oprl_family, q_identity_residual,
                            second_kind_oprl, strip)

from .helpers import seeded_jacobi


def test_monic_oprl_small_example():
    P2 = monic_oprl(JacobiParams([0.0, 0.0], [1.0]), 2)
    np.testing.assert_allclose(P2.values(), [-1.0, 0.0, 1.0])


def test_second_kind_small_example():
    Q3 = second_kind_oprl(JacobiParams([0.0, 0.0, 0.0], [1.0, 1.0]), 3)
    np.testing.assert_allclose(Q3.values(), [-1.0, 0.0, 1.0])


def test_degree_out_of_range(jacobi3):
    with pytest.raises(ArgumentError):
        monic_oprl(jacobi3, 4)
    with pytest.raises(ArgumentError):
        second_kind_oprl(jacobi3, 0)


def test_monic_is_characteristic_polynomial(jacobi5):
    P5 = monic_oprl(jacobi5, 5)
    J = jacobi_matrix(jacobi5)
    for x in (-1.3, 0.2, 2.7):
        assert P5(x) == pytest.approx(np.linalg.det(x * np.eye(5) - J), rel=1e-12)


def test_family_matches_single_polynomials(jacobi5):
    family = oprl_family(jacobi5)
    for n in range(1, 6):
        np.testing.assert_allclose(family.P(n).values(), monic_oprl(jacobi5, n).values())
        np.testing.assert_allclose(family.Q(n).values(), second_kind_oprl(jacobi5, n).values())
    assert family.Q(0).is_zero()


def test_m_function_single_site():
    # N = 1, b = 0: m(z) = −1/z
    assert m_function(JacobiParams([0.0], []), 2.0) == pytest.approx(-0.5)


def test_two_site_measure():
    measure = jacobi_to_measure(JacobiParams([0.0, 0.0], [1.0]))
    np.testing.assert_allclose(measure.x, [-1.0, 1.0], atol=1e-14)
    np.testing.assert_allclose(measure.rho, [0.5, 0.5], atol=1e-14)


def test_m_function_agrees_with_measure(jacobi5):
    measure = jacobi_to_measure(jacobi5)
    for z in (0.3 + 0.5j, -2.0 + 0.1j, 4.0):
        expected = np.sum(measure.rho / (measure.x - z))
        assert m_function(jacobi5, z) == pytest.approx(expected, rel=1e-11)


def test_m_function_pole(jacobi3):
    x = eigenvalues(jacobi3)[1]
    with pytest.raises(PoleError) as info:
        m_function(jacobi3, x)
    assert info.value.pole == pytest.approx(x)


def test_spectral_roundtrip(jacobi5):
    back = measure_to_jacobi(jacobi_to_measure(jacobi5))
    np.testing.assert_allclose(back.b, jacobi5.b, atol=1e-12)
    np.testing.assert_allclose(back.a, jacobi5.a, atol=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("N", [2, 6, 12])
def test_spectral_roundtrip_on_seeded_instances(N):
    worst = 0.0
    for index in range(50):
        J = seeded_jacobi(N, index)
        back = measure_to_jacobi(jacobi_to_measure(J))
        worst = max(worst, np.max(np.abs(back.to_vector() - J.to_vector())))
    assert worst < 1e-9


def test_lanczos_reports_orthogonality_defect():
    measure = RealDiscreteMeasure([-1.0, 0.5, 2.0], [0.2, 0.5, 0.3])
    _, defect = lanczos(measure)
    assert defect < 1e-13


def test_lanczos_rejects_nearly_coincident_nodes():
    with pytest.raises(IllConditionedMeasureError):
        lanczos(RealDiscreteMeasure([0.0, 1e-9], [0.5, 0.5]))


def test_interlacing(jacobi5):
    assert interlace_check(jacobi5)
    assert interlace_check(JacobiParams([0.7], []))


def test_q_identity(jacobi5):
    assert q_identity_residual(jacobi5) < 1e-12


def test_strip(jacobi5):
    stripped = strip(jacobi5, 2)
    np.testing.assert_allclose(stripped.b, [0.1, 0.9, -0.4])
    np.testing.assert_allclose(stripped.a, [1.4, 0.9])
