"""Jacobi parameters <-> spectral measure.

The forward map diagonalizes the tridiagonal matrix (implicit QL with eigenvector
accumulation via LAPACK ``stev``); weights are the squared first components of the
normalized eigenvectors. The inverse map runs Lanczos on diag(x) from sqrt(rho).
"""
import logging
from typing import Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..core import (ConsistencyError, DegenerateSpectrumError, IllConditionedMeasureError,
                    JacobiParams, RealDiscreteMeasure)

logger = logging.getLogger(__name__)

NODE_GAP = 1e-12
ORTHOGONALITY_LIMIT = 1e-10


def jacobi_to_measure(J: JacobiParams) -> RealDiscreteMeasure:
    """Spectral measure Σ ρ_j δ_{x_j} of the Jacobi matrix.

    Raises:
        DegenerateSpectrumError: if two eigenvalues are closer than 1e-12 (relative).
    """
    J = J.values()
    if J.N == 1:
        return RealDiscreteMeasure(J.b.copy(), np.ones(1))
    x, vectors = eigh_tridiagonal(J.b, J.a)
    scale = max(1.0, float(np.max(np.abs(x))))
    if np.any(np.diff(x) < NODE_GAP * scale):
        raise DegenerateSpectrumError(f"eigenvalue separation {np.min(np.diff(x))!r} below {NODE_GAP}")
    rho = vectors[0, :] ** 2
    return RealDiscreteMeasure(x, rho / rho.sum())


def lanczos(measure: RealDiscreteMeasure) -> Tuple[JacobiParams, float]:
    """Lanczos on diag(x) with start vector sqrt(ρ), fully reorthogonalized.

    Returns:
        tuple: the Jacobi parameters and the orthogonality defect max|VᵀV − I|.

    Raises:
        IllConditionedMeasureError: if some a_j² drops below 1e-14·scale².
    """
    x, rho = measure.x, measure.rho
    N = measure.N
    scale = max(1.0, float(np.max(np.abs(x))))
    basis = np.zeros((N, N))
    basis[:, 0] = np.sqrt(rho)
    b = np.zeros(N)
    a = np.zeros(max(N - 1, 0))
    for j in range(N):
        q = basis[:, j]
        b[j] = q @ (x * q)
        if j == N - 1:
            break
        r = x * q - b[j] * q
        if j > 0:
            r -= a[j - 1] * basis[:, j - 1]
        # two passes of classical Gram-Schmidt against every previous vector
        for _ in range(2):
            r -= basis[:, :j + 1] @ (basis[:, :j + 1].T @ r)
        a_sq = r @ r
        if a_sq < 1e-14 * scale * scale:
            raise IllConditionedMeasureError(f"a_{j + 1}^2 = {a_sq!r} lost positivity")
        a[j] = np.sqrt(a_sq)
        basis[:, j + 1] = r / a[j]
    defect = float(np.max(np.abs(basis.T @ basis - np.eye(N))))
    logger.debug("lanczos: N=%d, orthogonality defect %.3e", N, defect)
    return JacobiParams(b, a), defect


def measure_to_jacobi(measure: RealDiscreteMeasure) -> JacobiParams:
    """Inverse spectral map; raises ConsistencyError if the Lanczos basis lost orthogonality."""
    J, defect = lanczos(measure)
    if defect > ORTHOGONALITY_LIMIT:
        raise ConsistencyError(f"Lanczos orthogonality defect {defect:.3e}")
    return J
