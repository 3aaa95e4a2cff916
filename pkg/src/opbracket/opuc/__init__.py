from .cmv import (CmvBasis, band_mask, cmv_basis, cmv_factors, cmv_matrix, det_sign_report,
                  is_unitary, matrix_power, trace_powers)
from .para import ParaFamily, caratheodory_F, para_family, schur_f, strip_cs
from .spectral import (caratheodory_from_measure, cmv_to_measure, interlace_check,
                       measure_to_verblunsky, node_beta, second_kind_roots, unit_circle_roots)
from .szego import SzegoPair, szego_polys, szego_sequence


def rho(v):
    """ρ_j = sqrt(1 − |α_j|²) for every coefficient."""
    return v.rhos()
