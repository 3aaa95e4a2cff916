import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dual import ComplexDual, abs2, sqrt, value_of
from .errors import ArgumentError

logger = logging.getLogger(__name__)

BETA_TOLERANCE = 1e-14


def _vector(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.dtype == object or arr.dtype.kind in "fc":
        return arr.ravel()
    return arr.astype(float).ravel()


@dataclass(frozen=True, eq=False)
class JacobiParams:
    """Point (b_1..b_N; a_1..a_{N-1}) of the OPRL parameter manifold.

    Entries may be floats or dual scalars; the positivity of a_j is checked on values.
    """

    b: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        b, a = _vector(self.b), _vector(self.a)
        if b.size < 1:
            raise ArgumentError("JacobiParams needs N >= 1")
        if a.size != b.size - 1:
            raise ArgumentError(f"expected {b.size - 1} off-diagonal entries, got {a.size}")
        if a.size and np.any(np.asarray(value_of(a), dtype=float) <= 0):
            raise ArgumentError("every a_j must be positive")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)

    @property
    def N(self) -> int:
        return self.b.size

    def to_vector(self) -> np.ndarray:
        """Coordinates in tensor order (b_1..b_N, a_1..a_{N-1})."""
        return np.concatenate([self.b, self.a])

    @classmethod
    def from_vector(cls, vector: Sequence, N: int) -> "JacobiParams":
        vector = _vector(vector)
        return cls(vector[:N], vector[N:])

    def strip(self, k: int = 1) -> "JacobiParams":
        """Remove the first k rows and columns."""
        if not 0 <= k < self.N:
            raise ArgumentError(f"cannot strip {k} rows from N={self.N}")
        return JacobiParams(self.b[k:], self.a[k:])

    def values(self) -> "JacobiParams":
        return JacobiParams(np.asarray(value_of(self.b), dtype=float),
                            np.asarray(value_of(self.a), dtype=float))


@dataclass(frozen=True, eq=False)
class VerblunskyParams:
    """Verblunsky coefficients α_0..α_{N-2} in the open disk and a unimodular β.

    β is renormalized to modulus one on construction; it is frozen (never dual).
    """

    alpha: np.ndarray
    beta: complex

    def __post_init__(self):
        alpha = _vector(self.alpha)
        if alpha.dtype != object:
            alpha = alpha.astype(complex)
        if alpha.size and np.any(np.abs(np.asarray(value_of(alpha), dtype=complex)) >= 1.0):
            raise ArgumentError("every |alpha_j| must be < 1")
        beta = complex(self.beta)
        modulus = abs(beta)
        if abs(modulus - 1.0) > BETA_TOLERANCE:
            raise ArgumentError(f"beta must be unimodular, |beta| = {modulus!r}")
        if modulus != 1.0:
            logger.debug("renormalizing beta, |beta| - 1 = %.1e", modulus - 1.0)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta / modulus)

    @property
    def N(self) -> int:
        return self.alpha.size + 1

    def rho(self, j: int):
        """ρ_j = sqrt(1 − |α_j|²)."""
        return sqrt(1.0 - abs2(self.alpha[j]))

    def rhos(self) -> list:
        return [self.rho(j) for j in range(self.alpha.size)]

    def to_vector(self) -> np.ndarray:
        """Real coordinates (u_0, v_0, u_1, v_1, ...) with α_j = u_j + i v_j."""
        out = np.empty(2 * self.alpha.size, dtype=object if self.alpha.dtype == object else float)
        for j, alpha in enumerate(self.alpha):
            out[2 * j] = alpha.real
            out[2 * j + 1] = alpha.imag
        return out

    @classmethod
    def from_vector(cls, vector: Sequence, beta: complex) -> "VerblunskyParams":
        vector = _vector(vector)
        if vector.size % 2:
            raise ArgumentError("real coordinate vector must have even length")
        if vector.dtype == object:
            alpha = np.array([ComplexDual(vector[2 * j], vector[2 * j + 1])
                              for j in range(vector.size // 2)], dtype=object)
        else:
            alpha = vector[0::2] + 1j * vector[1::2]
        return cls(alpha, beta)

    def strip(self, k: int = 1) -> "VerblunskyParams":
        if not 0 <= k <= self.alpha.size:
            raise ArgumentError(f"cannot strip {k} coefficients from N={self.N}")
        return VerblunskyParams(self.alpha[k:], self.beta)

    def values(self) -> "VerblunskyParams":
        return VerblunskyParams(np.asarray(value_of(self.alpha), dtype=complex), self.beta)
