"""Trace Hamiltonians and their vector fields.

OPRL: H = Σ_j 2c_j/(j+1) Tr J^{j+1}, so H = 2Tr J² for the Toda coefficients (0, 2).
OPUC: H = Σ_{k≥1} 2Re(b_k Tr C^k/(ik)) = Σ_{k≥1} (2/k) Im(b_k Tr C^k); b_0 generates
nothing since the weights are renormalized.
"""
import numpy as np

from ..core import ArgumentError
from ..opuc import cmv_matrix, trace_powers
from ..oprl import jacobi_matrix
from ..poisson import OprlFiniteTensor, OpucFiniteTensor, PoissonTensor, ScalarField, gradient
from .spec import FlowSpec


def flow_tensor(spec: FlowSpec, start) -> PoissonTensor:
    """The finite tensor matching the start point of a flow."""
    if spec.kind == "oprl":
        return OprlFiniteTensor(start.N)
    return OpucFiniteTensor(start.N, start.beta)


def flow_hamiltonian(spec: FlowSpec, tensor: PoissonTensor) -> ScalarField:
    if spec.kind == "oprl":
        if not isinstance(tensor, OprlFiniteTensor):
            raise ArgumentError("an OPRL flow needs the finite OPRL tensor")
        coeffs = list(spec.coeffs)

        def oprl_energy(point):
            traces = trace_powers(jacobi_matrix(tensor.params_of(point)), len(coeffs))
            return sum(2.0 * c / (j + 1) * traces[j] for j, c in enumerate(coeffs) if c != 0.0)

        return ScalarField(f"H[{spec.preset}]", oprl_energy)

    if not isinstance(tensor, OpucFiniteTensor):
        raise ArgumentError("an OPUC flow needs the finite OPUC tensor")
    b = spec.symbol_coeffs()

    def opuc_energy(point):
        traces = trace_powers(cmv_matrix(tensor.params_of(point)), b.size - 1)
        total = 0.0
        for k in range(1, b.size):
            if b[k] != 0:
                total = total + (2.0 / k) * (complex(b[k]) * traces[k - 1]).imag
        return total

    return ScalarField(f"H[{spec.preset}]", opuc_energy)


def hamiltonian_rhs(H: ScalarField, point, tensor: PoissonTensor) -> np.ndarray:
    """ζ̇_k = {H, ζ_k} = Σ_i π_ik ∂_i H."""
    point = np.asarray(point, dtype=float)
    _, grad = gradient(H, point, backend="dual")
    return np.real(grad @ tensor.matrix(point))
