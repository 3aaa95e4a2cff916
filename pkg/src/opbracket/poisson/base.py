from abc import ABC, abstractmethod
from typing import List

import numpy as np

from ..core import is_dual


class PoissonTensor(ABC):
    """State-dependent antisymmetric structure matrix π with {ζ_i, ζ_j} = π_ij.

    ``matrix(point)`` is generic: called on an object array of dual scalars it returns
    dual entries, which is how the Jacobi identity is checked.
    """

    kind: str = ""

    @property
    @abstractmethod
    def dimension(self) -> int:
        pass

    @abstractmethod
    def coordinates(self) -> List[str]:
        pass

    @abstractmethod
    def _fill(self, point, mat: np.ndarray):
        pass

    @abstractmethod
    def params_of(self, point):
        """Parameter object (JacobiParams, VerblunskyParams, ...) of a coordinate vector."""
        pass

    @abstractmethod
    def point_of(self, params) -> np.ndarray:
        pass

    def matrix(self, point) -> np.ndarray:
        point = np.asarray(point)
        generic = point.dtype == object and any(is_dual(c) for c in point)
        mat = np.zeros((self.dimension, self.dimension), dtype=object if generic else float)
        if generic:
            mat[:] = 0.0
        self._fill(point, mat)
        return mat

    def entry(self, i: int, j: int, point) -> float:
        return self.matrix(point)[i, j]

    @staticmethod
    def _set(mat: np.ndarray, i: int, j: int, value):
        mat[i, j] = mat[i, j] + value
        mat[j, i] = mat[j, i] - value

    def __repr__(self) -> str:
        return f"{type(self).__name__}(kind={self.kind!r}, dimension={self.dimension})"
