"""Dense polynomials with ascending coefficient vectors.

Coefficients may be real, complex or dual (object arrays of :class:`DualScalar` /
:class:`ComplexDual`); every operation here is generic over those scalar kinds.
"""
from dataclasses import dataclass
from typing import Any, Sequence, Union

import numpy as np

from .dual import ComplexDual, DualScalar, conj, value_of
from .errors import ArgumentError


def _as_coeffs(coeffs: Union[Sequence, np.ndarray]) -> np.ndarray:
    arr = np.asarray(coeffs)
    if arr.dtype == object or arr.dtype.kind in "fc":
        return arr.ravel()
    if arr.dtype.kind in "iub":
        return arr.astype(float).ravel()
    return np.asarray(coeffs, dtype=object).ravel()


def _is_zero(c: Any) -> bool:
    if isinstance(c, DualScalar):
        return c.value == 0.0 and not np.any(c.partials)
    if isinstance(c, ComplexDual):
        return _is_zero(c.re) and _is_zero(c.im)
    return c == 0


def _trim(arr: np.ndarray) -> np.ndarray:
    end = arr.size
    while end > 0 and _is_zero(arr[end - 1]):
        end -= 1
    return arr[:end]


def _is_complex(arr: np.ndarray) -> bool:
    if arr.dtype.kind == "c":
        return True
    if arr.dtype == object:
        return any(isinstance(c, (complex, ComplexDual)) and not isinstance(c, float) for c in arr)
    return False


def _zeros_like(arr: np.ndarray, size: int) -> np.ndarray:
    if arr.dtype == object:
        return np.array([0.0] * size, dtype=object)
    return np.zeros(size, dtype=arr.dtype)


def _pad(arr: np.ndarray, size: int) -> np.ndarray:
    if arr.size >= size:
        return arr
    return np.concatenate([arr, _zeros_like(arr, size - arr.size)])


@dataclass(frozen=True, eq=False)
class CoeffPoly:
    """Polynomial Σ coeffs[k] z^k; trailing zero coefficients are trimmed."""

    __array_ufunc__ = None

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(_as_coeffs(self.coeffs)))

    @staticmethod
    def of(coeffs) -> "CoeffPoly":
        arr = _as_coeffs(coeffs)
        return ComplexCoeffPoly(arr) if _is_complex(arr) else RealCoeffPoly(arr)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def leading(self):
        return self.coeffs[-1] if self.coeffs.size else 0.0

    def __call__(self, z):
        return poly_eval(self, z)

    def values(self) -> np.ndarray:
        """Coefficients with derivative information stripped."""
        return value_of(self.coeffs) if self.coeffs.dtype == object else self.coeffs.copy()

    def derivative(self) -> "CoeffPoly":
        if self.coeffs.size <= 1:
            return CoeffPoly.of([])
        return CoeffPoly.of(self.coeffs[1:] * np.arange(1, self.coeffs.size))

    def shift(self, k: int = 1) -> "CoeffPoly":
        """Multiplication by z^k (k >= 0)."""
        if k < 0:
            raise ArgumentError("shift expects k >= 0")
        if self.coeffs.size == 0 or k == 0:
            return self
        return CoeffPoly.of(np.concatenate([_zeros_like(self.coeffs, k), self.coeffs]))

    def star(self, n: int) -> "CoeffPoly":
        """Conjugate reversal z^n conj(p(1/conj(z))) for the stated degree n."""
        if self.degree > n:
            raise ArgumentError(f"star({n}) of a degree-{self.degree} polynomial")
        padded = _pad(self.coeffs, n + 1)
        return CoeffPoly.of(conj(padded[::-1]))

    def __add__(self, other):
        if isinstance(other, CoeffPoly):
            size = max(self.coeffs.size, other.coeffs.size)
            return CoeffPoly.of(_pad(self.coeffs, size) + _pad(other.coeffs, size))
        return self + CoeffPoly.of(np.array([other], dtype=object if _scalar_is_dual(other) else None))

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly.of(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CoeffPoly):
            return CoeffPoly.of(_convolve(self.coeffs, other.coeffs))
        if self.coeffs.size == 0:
            return self
        if _scalar_is_dual(other) or self.coeffs.dtype == object:
            return CoeffPoly.of(np.array([c * other for c in self.coeffs], dtype=object))
        return CoeffPoly.of(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def roots(self, seeds=None, tol: float = 1e-14) -> np.ndarray:
        from .roots import aberth_roots

        return aberth_roots(self.values(), seeds=seeds, tol=tol)


class RealCoeffPoly(CoeffPoly):
    """Real-coefficient polynomial (houses the OPRL families)."""


class ComplexCoeffPoly(CoeffPoly):
    """Complex-coefficient polynomial (houses the OPUC families)."""


def _scalar_is_dual(x) -> bool:
    return isinstance(x, (DualScalar, ComplexDual))


def _convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return np.zeros(0)
    if a.dtype != object and b.dtype != object:
        return np.convolve(a, b)
    out = [0.0] * (a.size + b.size - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return np.array(out, dtype=object)


def poly_eval(p: Union[CoeffPoly, Sequence], z):
    """Horner evaluation, generic over real, complex and dual scalars (and numpy arrays of z)."""
    coeffs = p.coeffs if isinstance(p, CoeffPoly) else _as_coeffs(p)
    if coeffs.size == 0:
        return 0.0 * z if isinstance(z, np.ndarray) else 0.0
    result = coeffs[-1]
    for c in coeffs[-2::-1]:
        result = result * z + c
    if isinstance(z, np.ndarray) and not isinstance(result, np.ndarray):
        result = result + 0.0 * z
    return result


def bezout_kernel(f: CoeffPoly, g: CoeffPoly, z, w):
    """(f(z)g(w) − f(w)g(z)) / (z − w), with the removable singularity filled in."""
    zv, wv = value_of(z), value_of(w)
    if abs(zv - wv) < 1e-8 * max(1.0, abs(zv)):
        return f.derivative()(z) * g(z) - f(z) * g.derivative()(z)
    return (f(z) * g(w) - f(w) * g(z)) / (z - w)


def poly_from_roots(roots: Sequence) -> CoeffPoly:
    """Monic polynomial Π (z − r)."""
    coeffs = np.array([1.0 + 0j]) if np.iscomplexobj(roots) else np.array([1.0])
    for r in roots:
        coeffs = np.convolve(coeffs, np.array([-r, 1.0]))
    return CoeffPoly.of(coeffs)


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """Σ coeffs[k] z^(low + k), used for the CMV bases."""

    coeffs: np.ndarray
    low: int = 0

    @classmethod
    def from_poly(cls, p: CoeffPoly, shift: int = 0) -> "LaurentPoly":
        return cls(np.asarray(p.values(), dtype=complex), shift)

    def window(self, low: int, high: int) -> np.ndarray:
        """Coefficients of z^low .. z^high (zero padded)."""
        out = np.zeros(high - low + 1, dtype=complex)
        for k, c in enumerate(self.coeffs):
            power = self.low + k
            if low <= power <= high:
                out[power - low] = c
            elif c != 0:
                raise ArgumentError(f"power {power} outside window [{low}, {high}]")
        return out
