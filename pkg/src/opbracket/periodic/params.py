from dataclasses import dataclass
from functools import reduce

import numpy as np

from ..core import ArgumentError, JacobiParams, VerblunskyParams, abs2, sqrt, value_of


def _as_vector(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.dtype == object or arr.dtype.kind in "fc":
        return arr.ravel()
    return arr.astype(float).ravel()


def _product(values):
    return reduce(lambda x, y: x * y, values, 1.0)


@dataclass(frozen=True, eq=False)
class PeriodicOprl:
    """One period (b_1..b_p; a_1..a_p) of a two-sided periodic Jacobi matrix.

    a_k couples sites k and k+1, so a_p couples b_p to the b_1 of the next period.
    Entries may be dual; positivity is checked on values.
    """

    b: np.ndarray
    a: np.ndarray

    kind = "OPRL"

    def __post_init__(self):
        b, a = _as_vector(self.b), _as_vector(self.a)
        if b.size < 1 or a.size != b.size:
            raise ArgumentError(f"period needs equal lengths, got {b.size} and {a.size}")
        if np.any(np.asarray(value_of(a), dtype=float) <= 0):
            raise ArgumentError("every a_j must be positive")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)

    @property
    def p(self) -> int:
        return self.b.size

    def product_a(self):
        return _product(self.a)

    def to_vector(self) -> np.ndarray:
        """Periodic tensor coordinates (b_1..b_p, a_1..a_p)."""
        return np.concatenate([self.b, self.a])

    def values(self) -> "PeriodicOprl":
        return PeriodicOprl(np.asarray(value_of(self.b), dtype=float),
                            np.asarray(value_of(self.a), dtype=float))

    def section(self, size: int, start: int = 0) -> JacobiParams:
        """size × size block of the two-sided matrix, first row at site ``start``."""
        if size < 1:
            raise ArgumentError("section size must be >= 1")
        v = self.values()
        sites = (start + np.arange(size)) % self.p
        return JacobiParams(v.b[sites], v.a[sites[:-1]])


@dataclass(frozen=True, eq=False)
class PeriodicOpuc:
    """One period α_0..α_{p−1} of a periodic Verblunsky sequence, p even."""

    alpha: np.ndarray

    kind = "OPUC"

    def __post_init__(self):
        alpha = _as_vector(self.alpha)
        if alpha.dtype != object:
            alpha = alpha.astype(complex)
        if alpha.size < 2 or alpha.size % 2:
            raise ArgumentError(f"OPUC period must be even and >= 2, got {alpha.size}")
        if np.any(np.abs(np.asarray(value_of(alpha), dtype=complex)) >= 1.0):
            raise ArgumentError("every |alpha_j| must be < 1")
        object.__setattr__(self, "alpha", alpha)

    @property
    def p(self) -> int:
        return self.alpha.size

    def rho(self, j: int):
        return sqrt(1.0 - abs2(self.alpha[j % self.p]))

    def rhos(self) -> list:
        return [self.rho(j) for j in range(self.p)]

    def product_rho(self):
        return _product(self.rhos())

    def to_vector(self) -> np.ndarray:
        out = np.empty(2 * self.p, dtype=object if self.alpha.dtype == object else float)
        for j, alpha in enumerate(self.alpha):
            out[2 * j] = alpha.real
            out[2 * j + 1] = alpha.imag
        return out

    def values(self) -> "PeriodicOpuc":
        return PeriodicOpuc(np.asarray(value_of(self.alpha), dtype=complex))

    def section(self, size: int, beta: complex = 1.0) -> VerblunskyParams:
        """Coefficients of the size × size CMV matrix: α_0..α_{size−2} repeated, closed by β."""
        if size < 1:
            raise ArgumentError("section size must be >= 1")
        alpha = self.values().alpha
        return VerblunskyParams(alpha[np.arange(size - 1) % self.p], beta)
