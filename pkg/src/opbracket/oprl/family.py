from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from ..core import CoeffPoly, JacobiParams, PoleError, value_of
from ..core.errors import ArgumentError

ONE = CoeffPoly.of([1.0])
X = CoeffPoly.of([0.0, 1.0])


def _monic_sequence(J: JacobiParams, n: int) -> List[CoeffPoly]:
    """P_0..P_n by P_{j+1} = (x − b_{j+1}) P_j − a_j² P_{j−1}."""
    polys = [ONE]
    if n >= 1:
        polys.append(X - J.b[0])
    for j in range(1, n):
        a_sq = J.a[j - 1] * J.a[j - 1]
        polys.append(polys[j].shift(1) - J.b[j] * polys[j] - a_sq * polys[j - 1])
    return polys


def monic_oprl(J: JacobiParams, n: int) -> CoeffPoly:
    """Monic OPRL P_n of the Jacobi parameters (det(x − J_n))."""
    if not 0 <= n <= J.N:
        raise ArgumentError(f"degree {n} outside 0..{J.N}")
    return _monic_sequence(J, n)[n]


def second_kind_oprl(J: JacobiParams, n: int) -> CoeffPoly:
    """Second-kind polynomial Q_n: P_{n−1} of the parameters with the first row and column removed."""
    if not 1 <= n <= J.N:
        raise ArgumentError(f"degree {n} outside 1..{J.N}")
    if n == 1:
        return ONE
    return monic_oprl(J.strip(1), n - 1)


@dataclass(frozen=True, eq=False)
class OprlFamily:
    """P_0..P_N and Q_1..Q_N of one parameter point (``second[n-1]`` is Q_n)."""

    params: JacobiParams
    polys: List[CoeffPoly] = field(default_factory=list)
    second: List[CoeffPoly] = field(default_factory=list)

    def P(self, n: int) -> CoeffPoly:
        return self.polys[n]

    def Q(self, n: int) -> CoeffPoly:
        if n == 0:
            return CoeffPoly.of([])
        return self.second[n - 1]

    def m(self, z, n: int = None):
        """m_n(z) = −Q_n(z)/P_n(z), no pole check."""
        n = self.params.N if n is None else n
        return -self.Q(n)(z) / self.P(n)(z)


def oprl_family(J: JacobiParams) -> OprlFamily:
    polys = _monic_sequence(J, J.N)
    second = [ONE] + (_monic_sequence(J.strip(1), J.N - 1)[1:] if J.N > 1 else [])
    return OprlFamily(J, polys, second)


def jacobi_matrix(J: JacobiParams) -> np.ndarray:
    """Dense Jacobi matrix; an object array when the parameters are dual."""
    dtype = object if J.b.dtype == object or J.a.dtype == object else float
    mat = np.zeros((J.N, J.N), dtype=dtype)
    if dtype == object:
        mat[:] = 0.0
    for j in range(J.N):
        mat[j, j] = J.b[j]
    for j in range(J.N - 1):
        mat[j, j + 1] = J.a[j]
        mat[j + 1, j] = J.a[j]
    return mat


def eigenvalues(J: JacobiParams) -> np.ndarray:
    J = J.values()
    if J.N == 1:
        return J.b.copy()
    return eigvalsh_tridiagonal(J.b, J.a)


def m_function(J: JacobiParams, z: complex) -> complex:
    """m(z) = Σ ρ_j/(x_j − z), computed as −Q_N(z)/P_N(z).

    Raises:
        PoleError: if z is within 1e-12 of an eigenvalue x_j.
    """
    J = J.values()
    for x in eigenvalues(J):
        if abs(z - x) < 1e-12 * max(1.0, abs(x)):
            raise PoleError(f"m-function evaluated at eigenvalue {x!r}", pole=x)
    family = oprl_family(J)
    return family.m(z)


def interlace_check(J: JacobiParams) -> bool:
    """Zeros of P_N (eigenvalues of J) and of Q_N (eigenvalues of the stripped matrix) strictly interlace."""
    J = J.values()
    if J.N == 1:
        return True
    x = eigenvalues(J)
    y = eigenvalues(J.strip(1))
    return bool(np.all(x[:-1] < y) and np.all(y < x[1:]))


def q_identity_residual(J: JacobiParams) -> float:
    """Coefficient residual of Q_N − Σ ρ_j Π_{k≠j}(z − x_k)."""
    from ..core import poly_from_roots
    from .spectral import jacobi_to_measure

    J = J.values()
    measure = jacobi_to_measure(J)
    total = CoeffPoly.of([])
    for j in range(measure.N):
        total = total + measure.rho[j] * poly_from_roots(np.delete(measure.x, j))
    diff = oprl_family(J).Q(J.N) - total
    return float(np.max(np.abs(value_of(diff.coeffs)))) if diff.coeffs.size else 0.0
