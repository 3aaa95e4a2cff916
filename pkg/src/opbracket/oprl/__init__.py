from .family import (OprlFamily, eigenvalues, interlace_check, jacobi_matrix, m_function,
                     monic_oprl, oprl_family, q_identity_residual, second_kind_oprl)
from .spectral import jacobi_to_measure, lanczos, measure_to_jacobi


def strip(J, k: int = 1):
    """Jacobi parameters with the first k rows and columns removed."""
    return J.strip(k)
