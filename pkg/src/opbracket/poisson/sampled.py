"""Grid samples of a field together with their gradients.

Polynomials built over dual parameters carry one gradient per coefficient; evaluating
them on a whole grid is then a Vandermonde product for the values and another one for
the gradients. Arithmetic between samples follows the sum, product and quotient rules.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core import CoeffPoly, gradient_of, value_of


def _column(c):
    c = np.asarray(c)
    return c[:, None] if c.ndim == 1 else c


@dataclass(frozen=True, eq=False)
class Sampled:
    """``values`` has shape (m,), ``grads`` has shape (m, D)."""

    values: np.ndarray
    grads: np.ndarray

    __array_ufunc__ = None

    @classmethod
    def constant(cls, value, m: int, dim: int) -> "Sampled":
        return cls(np.full(m, value), np.zeros((m, dim)))

    @classmethod
    def scalar(cls, x, m: int, dim: int) -> "Sampled":
        """A grid-independent dual scalar (a coordinate or a function of the coordinates)."""
        return cls(np.full(m, value_of(x)), np.tile(gradient_of(x, dim), (m, 1)))

    @property
    def dim(self) -> int:
        return self.grads.shape[1]

    def __add__(self, other):
        if isinstance(other, Sampled):
            return Sampled(self.values + other.values, self.grads + other.grads)
        return Sampled(self.values + np.asarray(other), self.grads)

    __radd__ = __add__

    def __neg__(self):
        return Sampled(-self.values, -self.grads)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Sampled):
            return Sampled(self.values * other.values,
                           self.grads * _column(other.values) + _column(self.values) * other.grads)
        other = np.asarray(other)
        return Sampled(self.values * other, self.grads * _column(other) if other.ndim else self.grads * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Sampled):
            denom = other.values
            return Sampled(self.values / denom,
                           (self.grads * _column(denom) - _column(self.values) * other.grads)
                           / _column(denom * denom))
        return self * (1.0 / np.asarray(other))

    def __rtruediv__(self, other):
        other = np.asarray(other)
        return Sampled(other / self.values,
                       -_column(other / (self.values * self.values)) * self.grads)


def sample_poly(poly: CoeffPoly, z, dim: int) -> Sampled:
    """Values and parameter gradients of a polynomial with dual coefficients on the grid z."""
    z = np.asarray(z)
    coeffs = poly.coeffs
    if coeffs.size == 0:
        return Sampled(np.zeros(z.size, dtype=z.dtype), np.zeros((z.size, dim)))
    values = np.array([value_of(c) for c in coeffs])
    grads = np.array([gradient_of(c, dim) for c in coeffs])
    vander = z[:, None] ** np.arange(coeffs.size)[None, :]
    return Sampled(vander @ values, vander @ grads)


def bracket_matrix(f: Sampled, g: Sampled, pi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """{f(z_i), g(w_j)} for all pairs, with the scale Σ|π_kl||∂_k f||∂_l g| of each entry."""
    pi = np.asarray(pi, dtype=float)
    value = f.grads @ pi @ g.grads.T
    scale = np.abs(f.grads) @ np.abs(pi) @ np.abs(g.grads).T
    return value, scale


def wirtinger_matrix(f: Sampled, g: Sampled, rho_squared: np.ndarray) -> np.ndarray:
    """Σ_j iρ_j²(∂̄_j f ∂_j g − ∂_j f ∂̄_j g) with ∂ = ½(∂_u − i∂_v), in (u_0, v_0, ...) order."""
    fu, fv = f.grads[:, 0::2], f.grads[:, 1::2]
    gu, gv = g.grads[:, 0::2], g.grads[:, 1::2]
    df, dbar_f = 0.5 * (fu - 1j * fv), 0.5 * (fu + 1j * fv)
    dg, dbar_g = 0.5 * (gu - 1j * gv), 0.5 * (gu + 1j * gv)
    weight = 1j * np.asarray(rho_squared)[None, :]
    return (dbar_f * weight) @ dg.T - (df * weight) @ dbar_g.T
