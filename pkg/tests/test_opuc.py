import numpy as np
import pytest

from opbracket.core import CircleDiscreteMeasure, PoleError, VerblunskyParams
from opbracket.opuc import (band_mask, caratheodory_F, caratheodory_from_measure, cmv_basis, cmv_matrix,
                            cmv_to_measure, det_sign_report, interlace_check, is_unitary,
                            measure_to_verblunsky, para_family, schur_f, second_kind_roots, strip_cs,
                            szego_polys, trace_powers)

from .helpers import seeded_verblunsky

ALPHA0 = 0.3 + 0.2j
BETA = np.exp(0.7j)


def test_szego_degree_one():
    pair = szego_polys(VerblunskyParams([ALPHA0], BETA), 1)
    np.testing.assert_allclose(pair.phi.values(), [-np.conj(ALPHA0), 1.0])
    np.testing.assert_allclose(pair.psi.values(), [np.conj(ALPHA0), 1.0])
    np.testing.assert_allclose(pair.phi_star.values(), [1.0, -ALPHA0])


def test_szego_zero_coefficient_multiplies_by_z():
    pair = szego_polys(VerblunskyParams([ALPHA0, 0.0], BETA), 2)
    np.testing.assert_allclose(pair.phi.values(), [0.0, -np.conj(ALPHA0), 1.0])


def test_para_family_single_site():
    family = para_family(VerblunskyParams([], BETA))
    np.testing.assert_allclose(family.p.values(), [-np.conj(BETA), 1.0])
    np.testing.assert_allclose(family.q.values(), [np.conj(BETA), 1.0])
    np.testing.assert_allclose(family.c.values(), [0.0, 1.0])
    np.testing.assert_allclose(family.s.values(), [-np.conj(BETA)])


def test_para_family_free_coefficients():
    family = para_family(VerblunskyParams(np.zeros(3), BETA))
    np.testing.assert_allclose(family.p.values(), [-np.conj(BETA), 0.0, 0.0, 0.0, 1.0], atol=1e-15)


def test_caratheodory_at_origin(verblunsky4):
    assert caratheodory_F(verblunsky4, 0.0) == pytest.approx(1.0)


@pytest.mark.parametrize("z", [0.3 + 0.2j, 0.5j, -0.6, 1.7 - 0.4j])
def test_caratheodory_matches_measure(verblunsky4, z):
    measure = cmv_to_measure(verblunsky4)
    assert caratheodory_F(verblunsky4, z) == pytest.approx(caratheodory_from_measure(measure, z), rel=1e-10)


def test_caratheodory_pole(verblunsky4):
    node = cmv_to_measure(verblunsky4).nodes[0]
    with pytest.raises(PoleError):
        caratheodory_F(verblunsky4, node)


def test_schur_single_site_is_constant():
    v = VerblunskyParams([], BETA)
    for z in (0.4, -0.2 + 0.7j):
        assert schur_f(v, z) == pytest.approx(BETA)


@pytest.mark.parametrize("theta", [0.37, 1.9, -2.4])
def test_schur_is_unimodular_on_circle(verblunsky4, theta):
    assert abs(schur_f(verblunsky4, np.exp(1j * theta))) == pytest.approx(1.0, abs=1e-10)


def test_schur_pole_at_origin(verblunsky4):
    with pytest.raises(PoleError):
        schur_f(verblunsky4, 0.0)


def test_cmv_single_site():
    np.testing.assert_allclose(cmv_matrix(VerblunskyParams([], BETA)), [[np.conj(BETA)]])


def test_cmv_free_eigenvalues_are_roots_of_conj_beta():
    eigs = np.linalg.eigvals(cmv_matrix(VerblunskyParams(np.zeros(3), BETA)))
    np.testing.assert_allclose(eigs ** 4, np.full(4, np.conj(BETA)), atol=1e-12)


def test_cmv_shape_and_unitarity():
    v = VerblunskyParams([0.3 + 0.2j, -0.4 + 0.1j, 0.1 - 0.5j, 0.2 + 0.2j], np.exp(-1.1j))
    C = cmv_matrix(v)
    assert is_unitary(C)
    assert np.all(np.abs(C[~band_mask(5)]) < 1e-15)


def test_det_sign(verblunsky4):
    det, _, to_conj = det_sign_report(verblunsky4)
    assert abs(det) == pytest.approx(1.0)
    assert to_conj < 1e-12


def test_trace_powers_against_eigenvalues(verblunsky4):
    C = cmv_matrix(verblunsky4)
    eigs = np.linalg.eigvals(C)
    traces = trace_powers(C, 3)
    for k, trace in enumerate(traces, start=1):
        assert trace == pytest.approx(np.sum(eigs ** k))


def test_cmv_basis_norms(verblunsky4):
    basis = cmv_basis(verblunsky4)
    rhos = np.sqrt(1.0 - np.abs(verblunsky4.alpha) ** 2)
    np.testing.assert_allclose(basis.norms, [1.0, rhos[0], rhos[0] * rhos[1], np.prod(rhos)])
    assert len(basis.Y) == len(basis.X) == 4


def test_roots_of_unity_measure_is_free():
    N = 5
    measure = CircleDiscreteMeasure(2 * np.pi * np.arange(N) / N, np.full(N, 1.0 / N))
    v = measure_to_verblunsky(measure)
    np.testing.assert_allclose(v.alpha, np.zeros(N - 1), atol=1e-12)
    assert v.beta == pytest.approx(1.0)


def test_single_point_measure():
    v = measure_to_verblunsky(CircleDiscreteMeasure([0.9], [1.0]))
    assert v.N == 1
    assert v.beta == pytest.approx(np.exp(-0.9j))


def test_spectral_roundtrip(verblunsky4):
    back = measure_to_verblunsky(cmv_to_measure(verblunsky4))
    np.testing.assert_allclose(back.alpha, verblunsky4.alpha, atol=1e-11)
    assert back.beta == pytest.approx(verblunsky4.beta, abs=1e-11)


@pytest.mark.slow
@pytest.mark.parametrize("N", [2, 6, 12])
def test_spectral_roundtrip_on_seeded_instances(N):
    worst = 0.0
    for index in range(50):
        v = seeded_verblunsky(N, index)
        back = measure_to_verblunsky(cmv_to_measure(v))
        worst = max(worst, np.max(np.abs(back.alpha - v.alpha)), abs(back.beta - v.beta))
    assert worst < 1e-9


def test_measure_nodes_are_cmv_eigenvalues(verblunsky4):
    nodes = cmv_to_measure(verblunsky4).nodes
    eigs = np.linalg.eigvals(cmv_matrix(verblunsky4))
    for node in nodes:
        assert np.min(np.abs(eigs - node)) < 1e-11


def test_second_kind_zeros(verblunsky4):
    roots = second_kind_roots(verblunsky4)
    q = para_family(verblunsky4).q
    assert roots.size == 4
    np.testing.assert_allclose(np.abs(roots), 1.0, atol=1e-14)
    assert np.all(np.diff(np.angle(roots)) > 0)
    assert max(abs(q(z)) for z in roots) < 1e-10


def test_interlacing(verblunsky4):
    assert interlace_check(verblunsky4)


def test_coefficient_stripping(verblunsky4):
    full, stripped, residual = strip_cs(verblunsky4)
    assert residual < 1e-13
    assert full.N == 4 and stripped.N == 3
