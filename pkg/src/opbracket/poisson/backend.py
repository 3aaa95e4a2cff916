"""Gradients and brackets of fields on a parameter manifold.

Fields built from recurrences and polynomial algebra are differentiated with dual
numbers. Spectral data (x_j, ρ_j, θ_j, μ_j) come out of eigensolvers and root finders
and use central differences with one Richardson step instead; nodes of the perturbed
evaluations are matched to the unperturbed ones before differencing.
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..core import ArgumentError, NumericError, gradient_of, seed, value_of
from .base import PoissonTensor

logger = logging.getLogger(__name__)

RELATIVE_STEP = 1e-4
GAP_FACTOR = 10.0
SMALLEST_STEP = 1e-9

BACKENDS = ("auto", "dual", "fd")


@dataclass(frozen=True)
class ScalarField:
    """A real or complex function of the coordinate vector.

    ``func`` is called with a float vector, or with an object vector of dual variables
    when ``dual`` is true.
    """

    name: str
    func: Callable[[np.ndarray], Any]
    dual: bool = True

    def __call__(self, point):
        return self.func(point)


def coordinate_field(index: int, name: str = "") -> ScalarField:
    return ScalarField(name or f"zeta{index}", lambda point: point[index])


def fd_step(point: np.ndarray) -> float:
    scale = float(np.max(np.abs(point))) if point.size else 1.0
    return RELATIVE_STEP * max(1.0, scale)


def _finite(sample, what: str) -> np.ndarray:
    sample = np.asarray(sample)
    if not np.all(np.isfinite(sample)):
        raise NumericError(f"non-finite sample while differentiating {what}")
    return sample


def _central(func: Callable, point: np.ndarray, h: float, what: str) -> np.ndarray:
    columns = []
    for i in range(point.size):
        step = np.zeros(point.size)
        step[i] = h
        plus = _finite(func(point + step), what)
        minus = _finite(func(point - step), what)
        columns.append((plus - minus) / (2.0 * h))
    return np.stack(columns, axis=-1)


def richardson_derivative(func: Callable, point, h: float, what: str = "field") -> np.ndarray:
    """(4D(h/2) − D(h))/3 for central differences D; one column per coordinate.

    Raises:
        NumericError: if any sample is not finite.
    """
    point = np.asarray(point, dtype=float)
    coarse = _central(func, point, h, what)
    fine = _central(func, point, 0.5 * h, what)
    return (4.0 * fine - coarse) / 3.0


def gradient(field: ScalarField, point, backend: str = "auto") -> Tuple[Any, np.ndarray]:
    """Value and gradient of a field at a point."""
    point = np.asarray(point, dtype=float)
    if backend not in BACKENDS:
        raise ArgumentError(f"unknown backend {backend!r}")
    if backend == "auto":
        backend = "dual" if field.dual else "fd"
    if backend == "dual":
        if not field.dual:
            raise ArgumentError(f"field {field.name} cannot be evaluated over dual numbers")
        result = field.func(seed(point))
        return value_of(result), gradient_of(result, point.size)
    value = value_of(field.func(point))
    grad = richardson_derivative(lambda p: np.asarray(value_of(field.func(p))), point,
                                 fd_step(point), field.name)
    return value, grad


def bracket_with_scale(f: ScalarField, g: ScalarField, point, tensor: PoissonTensor,
                       backend: str = "auto") -> Tuple[complex, float]:
    point = np.asarray(point, dtype=float)
    _, grad_f = gradient(f, point, backend)
    _, grad_g = gradient(g, point, backend)
    pi = tensor.matrix(point)
    value = grad_f @ pi @ grad_g
    scale = float(np.abs(grad_f) @ np.abs(pi) @ np.abs(grad_g))
    return value, scale


def bracket(f: ScalarField, g: ScalarField, point, tensor: PoissonTensor, backend: str = "auto"):
    """{f, g} = Σ_ij π_ij ∂_i f ∂_j g, complex-bilinear for complex-valued fields.

    Raises:
        NumericError: with the fd backend, if a sample is not finite.
    """
    value, _ = bracket_with_scale(f, g, point, tensor, backend)
    if np.iscomplexobj(value) and value.imag == 0:
        return float(value.real)
    return value


def wirtinger_bracket(f: ScalarField, g: ScalarField, point, tensor: PoissonTensor,
                      backend: str = "auto") -> complex:
    """Σ_j iρ_j²(∂̄_j f ∂_j g − ∂_j f ∂̄_j g) on a unit-circle tensor in (u_0, v_0, ...) order."""
    if not hasattr(tensor, "rho_squared"):
        raise ArgumentError(f"Wirtinger form needs a unit-circle tensor, got {tensor.kind}")
    point = np.asarray(point, dtype=float)
    _, grad_f = gradient(f, point, backend)
    _, grad_g = gradient(g, point, backend)
    rho2 = tensor.rho_squared(point)
    df = 0.5 * (grad_f[0::2] - 1j * grad_f[1::2])
    dbar_f = 0.5 * (grad_f[0::2] + 1j * grad_f[1::2])
    dg = 0.5 * (grad_g[0::2] - 1j * grad_g[1::2])
    dbar_g = 0.5 * (grad_g[0::2] + 1j * grad_g[1::2])
    return complex(np.sum(1j * rho2 * (dbar_f * dg - df * dbar_g)))


def _min_gap(nodes: np.ndarray, circle: bool) -> float:
    if nodes.size < 2:
        return np.inf
    if circle:
        z = np.exp(1j * nodes)
        diff = np.abs(z[:, None] - z[None, :])
    else:
        diff = np.abs(nodes[:, None] - nodes[None, :])
    diff[np.diag_indices(nodes.size)] = np.inf
    return float(np.min(diff))


def match_nodes(reference: np.ndarray, nodes: np.ndarray, circle: bool = False) -> np.ndarray:
    """Permutation ``order`` such that nodes[order[i]] is the node closest to reference[i]."""
    if circle:
        cost = np.abs(np.exp(1j * reference)[:, None] - np.exp(1j * nodes)[None, :])
    else:
        cost = np.abs(reference[:, None] - nodes[None, :])
    _, cols = linear_sum_assignment(cost)
    return cols


def spectral_jacobian(spectral_map: Callable, point, circle: bool = False,
                      name: str = "spectral map") -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes, weights and the (2N × D) Jacobian of (nodes, weights) at ``point``.

    ``spectral_map(point)`` returns (nodes, weights); with ``circle`` the nodes are angles
    and are unwrapped against the reference before differencing.

    Raises:
        NumericError: on non-finite samples, or if the nodes are too close for any step.
    """
    point = np.asarray(point, dtype=float)
    nodes, weights = spectral_map(point)
    nodes, weights = np.asarray(nodes, dtype=float), np.asarray(weights, dtype=float)
    h = fd_step(point)
    gap = _min_gap(nodes, circle)
    while gap < GAP_FACTOR * h:
        h *= 0.1
        logger.debug("%s: node gap %.3e, step shrunk to %.1e", name, gap, h)
        if h < SMALLEST_STEP:
            raise NumericError(f"{name}: node gap {gap:.3e} too small to difference")

    def sample(p):
        moved_nodes, moved_weights = spectral_map(p)
        moved_nodes = np.asarray(moved_nodes, dtype=float)
        order = match_nodes(nodes, moved_nodes, circle)
        moved_nodes, moved_weights = moved_nodes[order], np.asarray(moved_weights)[order]
        if circle:
            moved_nodes = nodes + np.angle(np.exp(1j * moved_nodes) / np.exp(1j * nodes))
        return np.concatenate([moved_nodes, moved_weights])

    jac = richardson_derivative(sample, point, h, name)
    return nodes, weights, jac


def jacobi_identity_residual(tensor: PoissonTensor, point) -> Tuple[float, float]:
    """max over coordinate triples of |{ζ_i,{ζ_j,ζ_k}} + cyclic|, with the largest term size.

    {ζ_i, π_jk} = Σ_l π_il ∂_l π_jk; the derivatives of π come from one dual evaluation.
    """
    point = np.asarray(point, dtype=float)
    D = tensor.dimension
    pi = tensor.matrix(point)
    dual_pi = tensor.matrix(seed(point))
    dpi = np.zeros((D, D, D))
    for j in range(D):
        for k in range(D):
            dpi[j, k] = gradient_of(dual_pi[j, k], D)
    # term[i, j, k] = {ζ_i, π_jk}
    term = np.einsum("il,jkl->ijk", pi, dpi)
    cyclic = term + np.transpose(term, (1, 2, 0)) + np.transpose(term, (2, 0, 1))
    return float(np.max(np.abs(cyclic))), float(np.max(np.abs(term)))
