"""Concrete Poisson tensors.

OPRL coordinates are (b_1..b_N, a_1..a_{N−1}) with {b_k, a_k} = −a_k/4 and
{b_{k+1}, a_k} = a_k/4. OPUC coordinates are (u_0, v_0, u_1, v_1, ...) with
α_j = u_j + i v_j and {u_j, v_j} = ρ_j²/2, which is {α_j, ᾱ_j} = −iρ_j².
The periodic versions close the chain: a_p couples to b_1, indices run mod p.
"""
from typing import List

import numpy as np

from ..core import ArgumentError, JacobiParams, VerblunskyParams
from .base import PoissonTensor


class OprlFiniteTensor(PoissonTensor):
    kind = "OPRL_finite"

    def __init__(self, N: int):
        if N < 1:
            raise ArgumentError("OPRL tensor needs N >= 1")
        self.N = N

    @property
    def dimension(self) -> int:
        return 2 * self.N - 1

    def coordinates(self) -> List[str]:
        return [f"b{k + 1}" for k in range(self.N)] + [f"a{k + 1}" for k in range(self.N - 1)]

    def b_index(self, k: int) -> int:
        """Position of b_{k+1}."""
        return k

    def a_index(self, k: int) -> int:
        """Position of a_{k+1}."""
        return self.N + k

    def _fill(self, point, mat):
        N = self.N
        for k in range(N - 1):
            a = point[N + k]
            self._set(mat, k, N + k, -0.25 * a)
            self._set(mat, k + 1, N + k, 0.25 * a)

    def params_of(self, point) -> JacobiParams:
        return JacobiParams.from_vector(point, self.N)

    def point_of(self, params: JacobiParams) -> np.ndarray:
        return params.to_vector()


class OprlPeriodicTensor(PoissonTensor):
    kind = "OPRL_periodic"

    def __init__(self, p: int):
        if p < 1:
            raise ArgumentError("period must be >= 1")
        self.p = p

    @property
    def dimension(self) -> int:
        return 2 * self.p

    def coordinates(self) -> List[str]:
        return [f"b{k + 1}" for k in range(self.p)] + [f"a{k + 1}" for k in range(self.p)]

    def _fill(self, point, mat):
        p = self.p
        for k in range(p):
            a = point[p + k]
            self._set(mat, k, p + k, -0.25 * a)
            self._set(mat, (k + 1) % p, p + k, 0.25 * a)

    def params_of(self, point):
        from ..periodic.params import PeriodicOprl

        point = np.asarray(point)
        return PeriodicOprl(point[: self.p], point[self.p:])

    def point_of(self, params) -> np.ndarray:
        return np.concatenate([params.b, params.a])


class _UnitCircleTensor(PoissonTensor):
    """{u_j, v_j} = (1 − u_j² − v_j²)/2 on each coefficient."""

    count: int

    @property
    def dimension(self) -> int:
        return 2 * self.count

    def coordinates(self) -> List[str]:
        names = []
        for j in range(self.count):
            names += [f"u{j}", f"v{j}"]
        return names

    def _fill(self, point, mat):
        for j in range(self.count):
            u, v = point[2 * j], point[2 * j + 1]
            self._set(mat, 2 * j, 2 * j + 1, 0.5 * (1.0 - u * u - v * v))

    def rho_squared(self, point) -> np.ndarray:
        point = np.asarray(point, dtype=float)
        return 1.0 - point[0::2] ** 2 - point[1::2] ** 2


class OpucFiniteTensor(_UnitCircleTensor):
    kind = "OPUC_finite"

    def __init__(self, N: int, beta: complex = 1.0):
        if N < 1:
            raise ArgumentError("OPUC tensor needs N >= 1")
        self.N = N
        self.count = N - 1
        self.beta = complex(beta)

    def params_of(self, point) -> VerblunskyParams:
        return VerblunskyParams.from_vector(point, self.beta)

    def point_of(self, params: VerblunskyParams) -> np.ndarray:
        return params.to_vector()


class OpucPeriodicTensor(_UnitCircleTensor):
    kind = "OPUC_periodic"

    def __init__(self, p: int):
        if p < 2 or p % 2:
            raise ArgumentError("OPUC period must be even and >= 2")
        self.p = p
        self.count = p

    def params_of(self, point):
        from ..periodic.params import PeriodicOpuc

        point = np.asarray(point)
        if point.dtype == object:
            from ..core import ComplexDual

            alpha = np.array([ComplexDual(point[2 * j], point[2 * j + 1]) for j in range(self.p)],
                             dtype=object)
        else:
            alpha = point[0::2] + 1j * point[1::2]
        return PeriodicOpuc(alpha)

    def point_of(self, params) -> np.ndarray:
        out = np.empty(2 * self.p, dtype=float)
        out[0::2] = np.real(params.alpha)
        out[1::2] = np.imag(params.alpha)
        return out
