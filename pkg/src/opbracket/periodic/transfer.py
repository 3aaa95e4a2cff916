"""Transfer matrices over one period and the discriminant.

OPRL step, acting on (u_{n+1}, u_n) from (u_n, u_{n−1}):

    S_n(z) = [[(z − b_n)/a_n, −a_{n−1}/a_n], [1, 0]],   a_0 = a_p,

so det S_n = a_{n−1}/a_n and the product over a period has unit determinant.
OPUC step on (φ_n, φ*_n): S_n(z) = ρ_n^{−1}[[z, −ᾱ_n], [−α_n z, 1]], det S_n = z.

Products are written out entry by entry so that dual parameters pass through.
"""
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np

from ..core import ArgumentError, CoeffPoly, conj, value_of

Matrix2 = Tuple[Tuple[Any, Any], Tuple[Any, Any]]


def _mul(A: Matrix2, B: Matrix2) -> Matrix2:
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _oprl_step(params, n: int, z, one) -> Matrix2:
    a = params.a[n]
    a_prev = params.a[n - 1]  # n = 0 wraps to a_p
    return (((z - params.b[n]) / a, -a_prev / a), (one, 0.0 * one))


def _opuc_step(params, n: int, z, one) -> Matrix2:
    alpha = params.alpha[n]
    inv_rho = 1.0 / params.rho(n)
    return ((z * inv_rho, -conj(alpha) * inv_rho), (-alpha * z * inv_rho, one * inv_rho))


def _step(params):
    if params.kind == "OPRL":
        return _oprl_step
    if params.kind == "OPUC":
        return _opuc_step
    raise ArgumentError(f"unsupported periodic parameters {type(params).__name__}")


def transfer_product(params, z) -> Matrix2:
    """S_{p−1}(z)···S_0(z), generic over the scalar kind of the parameters and of z."""
    step = _step(params)
    T = step(params, 0, z, 1.0)
    for n in range(1, params.p):
        T = _mul(step(params, n, z, 1.0), T)
    return T


def trace_poly(params) -> CoeffPoly:
    """Tr T_p as a polynomial in z; coefficients may be dual."""
    z = CoeffPoly.of([0.0, 1.0])
    one = CoeffPoly.of([1.0])
    step = _step(params)
    T = step(params, 0, z, one)
    for n in range(1, params.p):
        T = _mul(step(params, n, z, one), T)
    return T[0][0] + T[1][1]


@dataclass(frozen=True, eq=False)
class Monodromy:
    """Numeric transfer matrix over one period at the point z."""

    entries: np.ndarray
    z: complex

    @property
    def det(self) -> complex:
        e = self.entries
        return complex(e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0])

    @property
    def trace(self) -> complex:
        return complex(self.entries[0, 0] + self.entries[1, 1])


def monodromy(params, z) -> Monodromy:
    T = transfer_product(params.values(), complex(z))
    return Monodromy(np.array(T, dtype=complex), complex(z))


def det_residual(params, z) -> float:
    """|det T − 1| (OPRL) or |det T − z^p|/|z|^p (OPUC)."""
    mono = monodromy(params, z)
    if params.kind == "OPRL":
        return abs(mono.det - 1.0)
    expected = complex(z) ** params.p
    return abs(mono.det - expected) / abs(expected)


def discriminant(params, z):
    """Δ(z) = Tr T (OPRL) or z^{−p/2} Tr T (OPUC).

    Raises:
        ArgumentError: at z = 0 for OPUC.
    """
    T = transfer_product(params, z)
    trace = T[0][0] + T[1][1]
    if params.kind == "OPRL":
        return trace
    if value_of(z) == 0:
        raise ArgumentError("the OPUC discriminant is not defined at z = 0")
    return trace * complex(z) ** (-(params.p // 2))


def leading_residual(params) -> float:
    """Distance of the top coefficient of Tr T from 1/Πa_j (OPRL) or 1/Πρ_j (OPUC), relative."""
    params = params.values()
    lead = complex(trace_poly(params).leading())
    norm = params.product_a() if params.kind == "OPRL" else params.product_rho()
    return abs(lead * norm - 1.0)
