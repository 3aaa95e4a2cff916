"""Forward-mode dual numbers carrying a full gradient.

A :class:`DualScalar` holds a real value and the vector of its partial derivatives
with respect to every coordinate of the active parameter space, so one evaluation of
a recurrence yields the whole gradient. Complex quantities are carried by
:class:`ComplexDual`, a pair of real dual scalars.
"""
import math
import numbers
from typing import Any, Union

import numpy as np


class DualScalar:
    """Real dual number ``value + partials . eps``.

    Attributes:
        value (float): the primal value.
        partials (np.ndarray): partial derivatives, length D.
    """

    __slots__ = ("value", "partials")
    __array_ufunc__ = None

    def __init__(self, value: float, partials):
        self.value = float(value)
        self.partials = np.asarray(partials, dtype=float)

    @classmethod
    def variable(cls, value: float, index: int, dim: int) -> "DualScalar":
        partials = np.zeros(dim)
        partials[index] = 1.0
        return cls(value, partials)

    @classmethod
    def constant(cls, value: float, dim: int) -> "DualScalar":
        return cls(value, np.zeros(dim))

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.value + other.value, self.partials + other.partials)
        if isinstance(other, numbers.Real):
            return DualScalar(self.value + other, self.partials)
        if isinstance(other, (numbers.Complex, ComplexDual)):
            return ComplexDual(self, 0.0) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.value, -self.partials)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.value - other.value, self.partials - other.partials)
        if isinstance(other, numbers.Real):
            return DualScalar(self.value - other, self.partials)
        if isinstance(other, (numbers.Complex, ComplexDual)):
            return ComplexDual(self, 0.0) - other
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, numbers.Real):
            return DualScalar(other - self.value, -self.partials)
        if isinstance(other, numbers.Complex):
            return ComplexDual(other.real, other.imag) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.value * other.value,
                              self.partials * other.value + self.value * other.partials)
        if isinstance(other, numbers.Real):
            return DualScalar(self.value * other, self.partials * other)
        if isinstance(other, (numbers.Complex, ComplexDual)):
            return ComplexDual(self, 0.0) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, DualScalar):
            if other.value == 0.0:
                raise ZeroDivisionError("dual division by a zero value")
            inv = 1.0 / other.value
            return DualScalar(self.value * inv,
                              (self.partials * other.value - self.value * other.partials) * inv * inv)
        if isinstance(other, numbers.Real):
            return DualScalar(self.value / other, self.partials / other)
        if isinstance(other, (numbers.Complex, ComplexDual)):
            return ComplexDual(self, 0.0) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, numbers.Real):
            if self.value == 0.0:
                raise ZeroDivisionError("dual division by a zero value")
            return DualScalar(other / self.value, -other * self.partials / (self.value * self.value))
        if isinstance(other, numbers.Complex):
            return ComplexDual(other.real, other.imag) / self
        return NotImplemented

    def __pow__(self, exponent):
        if isinstance(exponent, numbers.Real):
            if exponent == 0:
                return DualScalar(1.0, np.zeros_like(self.partials))
            return DualScalar(self.value ** exponent,
                              exponent * self.value ** (exponent - 1) * self.partials)
        return NotImplemented

    def __abs__(self):
        return -self if self.value < 0 else self

    # comparisons act on the value only
    def __lt__(self, other):
        return self.value < value_of(other)

    def __le__(self, other):
        return self.value <= value_of(other)

    def __gt__(self, other):
        return self.value > value_of(other)

    def __ge__(self, other):
        return self.value >= value_of(other)

    # elementary functions ---------------------------------------------------

    def sqrt(self) -> "DualScalar":
        root = math.sqrt(self.value)
        return DualScalar(root, self.partials / (2.0 * root))

    def exp(self) -> "DualScalar":
        e = math.exp(self.value)
        return DualScalar(e, e * self.partials)

    def log(self) -> "DualScalar":
        return DualScalar(math.log(self.value), self.partials / self.value)

    def conjugate(self) -> "DualScalar":
        return self

    @property
    def real(self) -> "DualScalar":
        return self

    @property
    def imag(self) -> float:
        return 0.0

    def __repr__(self) -> str:
        return f"DualScalar({self.value!r}, {self.partials!r})"


RealLike = Union[float, DualScalar]


def _parts(x) -> tuple:
    if isinstance(x, ComplexDual):
        return x.re, x.im
    if isinstance(x, DualScalar) or isinstance(x, numbers.Real):
        return x, 0.0
    if isinstance(x, numbers.Complex):
        return x.real, x.imag
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


class ComplexDual:
    """Complex dual number ``re + i im`` with real dual parts."""

    __slots__ = ("re", "im")
    __array_ufunc__ = None

    def __init__(self, re: RealLike, im: RealLike = 0.0):
        self.re = re
        self.im = im

    def __add__(self, other):
        try:
            ore, oim = _parts(other)
        except TypeError:
            return NotImplemented
        return ComplexDual(self.re + ore, self.im + oim)

    __radd__ = __add__

    def __neg__(self):
        return ComplexDual(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            ore, oim = _parts(other)
        except TypeError:
            return NotImplemented
        return ComplexDual(self.re - ore, self.im - oim)

    def __rsub__(self, other):
        try:
            ore, oim = _parts(other)
        except TypeError:
            return NotImplemented
        return ComplexDual(ore - self.re, oim - self.im)

    def __mul__(self, other):
        try:
            ore, oim = _parts(other)
        except TypeError:
            return NotImplemented
        return ComplexDual(self.re * ore - self.im * oim, self.re * oim + self.im * ore)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            ore, oim = _parts(other)
        except TypeError:
            return NotImplemented
        denom = ore * ore + oim * oim
        return ComplexDual((self.re * ore + self.im * oim) / denom,
                           (self.im * ore - self.re * oim) / denom)

    def __rtruediv__(self, other):
        try:
            ore, oim = _parts(other)
        except TypeError:
            return NotImplemented
        return ComplexDual(ore, oim) / self

    def __pow__(self, exponent):
        if not isinstance(exponent, numbers.Integral) or exponent < 0:
            return NotImplemented
        result = ComplexDual(1.0, 0.0)
        for _ in range(int(exponent)):
            result = result * self
        return result

    def conjugate(self) -> "ComplexDual":
        return ComplexDual(self.re, -self.im)

    def abs2(self) -> RealLike:
        return self.re * self.re + self.im * self.im

    @property
    def real(self) -> RealLike:
        return self.re

    @property
    def imag(self) -> RealLike:
        return self.im

    @property
    def value(self) -> complex:
        return complex(value_of(self.re), value_of(self.im))

    def __repr__(self) -> str:
        return f"ComplexDual({self.re!r}, {self.im!r})"


def is_dual(x: Any) -> bool:
    return isinstance(x, (DualScalar, ComplexDual))


def value_of(x: Any):
    """Strip derivative information; arrays are converted elementwise."""
    if isinstance(x, DualScalar):
        return x.value
    if isinstance(x, ComplexDual):
        return x.value
    if isinstance(x, np.ndarray) and x.dtype == object:
        values = [value_of(item) for item in x.ravel()]
        dtype = complex if any(isinstance(v, complex) for v in values) else float
        return np.array(values, dtype=dtype).reshape(x.shape)
    return x


def gradient_of(x: Any, dim: int) -> np.ndarray:
    """Gradient (complex when x is complex-valued) of a dual result; zeros for constants."""
    if isinstance(x, DualScalar):
        return x.partials.astype(float)
    if isinstance(x, ComplexDual):
        re = x.re.partials if isinstance(x.re, DualScalar) else np.zeros(dim)
        im = x.im.partials if isinstance(x.im, DualScalar) else np.zeros(dim)
        return re + 1j * im
    return np.zeros(dim)


def seed(point) -> np.ndarray:
    """Object array of dual variables, one per coordinate of ``point``."""
    point = np.asarray(point, dtype=float)
    dim = point.size
    return np.array([DualScalar.variable(point[i], i, dim) for i in range(dim)], dtype=object)


def conj(x):
    if isinstance(x, (DualScalar, ComplexDual)):
        return x.conjugate()
    if isinstance(x, np.ndarray) and x.dtype == object:
        return np.array([conj(item) for item in x.ravel()], dtype=object).reshape(x.shape)
    return np.conj(x)


def sqrt(x):
    if isinstance(x, DualScalar):
        return x.sqrt()
    return np.sqrt(x)


def exp(x):
    if isinstance(x, DualScalar):
        return x.exp()
    return np.exp(x)


def log(x):
    if isinstance(x, DualScalar):
        return x.log()
    return np.log(x)


def abs2(x):
    """|x|^2, real-typed for every scalar kind."""
    if isinstance(x, ComplexDual):
        return x.abs2()
    if isinstance(x, DualScalar):
        return x * x
    return abs(x) ** 2
