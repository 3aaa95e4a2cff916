"""CMV matrix and CMV bases.

C = LM with L = Θ_0 ⊕ Θ_2 ⊕ ..., M = 1 ⊕ Θ_1 ⊕ Θ_3 ⊕ ..., where
Θ_j = [[ᾱ_j, ρ_j], [ρ_j, −α_j]] and the boundary coefficient α_{N−1} = β contributes
the 1×1 block β̄ (ρ vanishes on the circle).
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..core import LaurentPoly, VerblunskyParams, conj
from .szego import szego_sequence

logger = logging.getLogger(__name__)

UNITARITY_LIMIT = 1e-12


def _theta_factor(v: VerblunskyParams, parity: int) -> np.ndarray:
    N = v.N
    generic = v.alpha.dtype == object
    mat = np.zeros((N, N), dtype=object if generic else complex)
    if generic:
        mat[:] = 0.0
    start = parity
    if parity == 1:
        mat[0, 0] = 1.0
    for j in range(start, N, 2):
        if j == N - 1:
            mat[j, j] = conj(v.beta)
            continue
        alpha = v.alpha[j]
        rho = v.rho(j)
        mat[j, j] = conj(alpha)
        mat[j, j + 1] = rho
        mat[j + 1, j] = rho
        mat[j + 1, j + 1] = -alpha
    return mat


def cmv_factors(v: VerblunskyParams) -> Tuple[np.ndarray, np.ndarray]:
    """The block-diagonal factors L (even Θ blocks) and M (1 ⊕ odd Θ blocks)."""
    return _theta_factor(v, 0), _theta_factor(v, 1)


def cmv_matrix(v: VerblunskyParams) -> np.ndarray:
    """N×N CMV matrix; an object array when the coefficients are dual."""
    L, M = cmv_factors(v)
    return L @ M


def is_unitary(C: np.ndarray, tol: float = UNITARITY_LIMIT) -> bool:
    C = np.asarray(C, dtype=complex)
    return bool(np.max(np.abs(C @ C.conj().T - np.eye(C.shape[0]))) < tol)


def band_mask(N: int) -> np.ndarray:
    """Entries allowed to be nonzero in an N×N CMV matrix (pentadiagonal zig-zag shape)."""
    mask = np.zeros((N, N), dtype=bool)
    for m in range(N):
        for n in range(N):
            if abs(m - n) <= 2:
                mask[m, n] = True
    # the extreme diagonals alternate: only every other entry can be nonzero
    for m in range(N):
        for n in (m - 2, m + 2):
            if 0 <= n < N:
                lo = min(m, n)
                upper = n > m
                # (lo, lo+2) is populated for even lo, (lo+2, lo) for odd lo
                mask[m, n] = (lo % 2 == 0) if upper else (lo % 2 == 1)
    return mask


def det_sign_report(v: VerblunskyParams) -> Tuple[complex, float, float]:
    """det C with its distance to (−1)^{N−1}β and to (−1)^{N−1}β̄."""
    C = np.asarray(cmv_matrix(v.values()), dtype=complex)
    det = complex(np.linalg.det(C))
    sign = (-1) ** (v.N - 1)
    to_beta = abs(det - sign * v.beta)
    to_conj = abs(det - sign * np.conj(v.beta))
    if min(to_beta, to_conj) > 1e-10:
        logger.warning("det C = %s matches neither (-1)^(N-1) beta nor its conjugate (N=%d)", det, v.N)
    else:
        logger.debug("det C = %s: distance %.3e to (-1)^(N-1) beta, %.3e to the conjugate", det, to_beta, to_conj)
    return det, to_beta, to_conj


@dataclass(frozen=True, eq=False)
class CmvBasis:
    """Unnormalized CMV bases Y_n (χ basis) and X_n (dual x basis) as Laurent polynomials.

    The orthonormal bases are Y_n/norms[n] and X_n/norms[n], norms[n] = ρ_0…ρ_{n−1}.
    """

    Y: List[LaurentPoly]
    X: List[LaurentPoly]
    norms: np.ndarray


def cmv_basis(v: VerblunskyParams) -> CmvBasis:
    """Y_{2k} = z^{−k}Φ*_{2k}, Y_{2k−1} = z^{−k+1}Φ_{2k−1}; X_{2k} = z^{−k}Φ_{2k}, X_{2k−1} = z^{−k}Φ*_{2k−1}."""
    v = v.values()
    pairs = szego_sequence(v, v.N - 1)
    Y, X = [], []
    for n, pair in enumerate(pairs):
        if n % 2 == 0:
            k = n // 2
            Y.append(LaurentPoly.from_poly(pair.phi_star, -k))
            X.append(LaurentPoly.from_poly(pair.phi, -k))
        else:
            k = (n + 1) // 2
            Y.append(LaurentPoly.from_poly(pair.phi, -k + 1))
            X.append(LaurentPoly.from_poly(pair.phi_star, -k))
    rhos = np.sqrt(1.0 - np.abs(v.alpha) ** 2)
    norms = np.concatenate([[1.0], np.cumprod(rhos)])[: v.N]
    return CmvBasis(Y, X, norms)


def trace_powers(C: np.ndarray, k_max: int) -> list:
    """[Tr C, Tr C², …, Tr C^k_max], generic over dual entries."""
    traces = []
    power = C
    for k in range(1, k_max + 1):
        if k > 1:
            power = power @ C
        traces.append(sum(power[i, i] for i in range(C.shape[0])))
    return traces


def matrix_power(C: np.ndarray, k: int) -> np.ndarray:
    """C^k for any integer k of a numeric CMV matrix, using C^{−1} = C†."""
    C = np.asarray(C, dtype=complex)
    base = C if k >= 0 else C.conj().T
    out = np.eye(C.shape[0], dtype=complex)
    for _ in range(abs(k)):
        out = out @ base
    return out
