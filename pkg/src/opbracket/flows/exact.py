"""Exact solutions of the trace flows through the spectral measure.

Nodes stay fixed and the weights evolve by an exponential factor,

    OPRL  ρ_j(t) ∝ exp(t·½f′(x_j)) ρ_j(0)
    OPUC  μ_j(t) ∝ exp(t·g(e^{iθ_j})) μ_j(0),  β fixed

normalized with log-sum-exp; the parameters at time t come from the inverse spectral map.
"""
import logging
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from ..core import (ArgumentError, CircleDiscreteMeasure, JacobiParams, RealDiscreteMeasure,
                    VerblunskyParams)
from ..opuc import cmv_matrix, cmv_to_measure, measure_to_verblunsky
from ..oprl import eigenvalues, jacobi_to_measure, measure_to_jacobi
from ..poisson import BracketReport, Tolerances, make_report
from ..poisson.backend import match_nodes
from .integrate import integrate_flow
from .spec import FlowSpec, Trajectory

logger = logging.getLogger(__name__)

COMPARE_SAMPLES = 11


def _evolve(log_weights: np.ndarray, exponent: np.ndarray) -> np.ndarray:
    shifted = log_weights + exponent
    return np.exp(shifted - logsumexp(shifted))


def exact_flow_oprl(start: JacobiParams, spec: FlowSpec, t: float) -> JacobiParams:
    if spec.kind != "oprl":
        raise ArgumentError("exact_flow_oprl needs an OPRL flow")
    measure = jacobi_to_measure(start)
    rho = _evolve(np.log(measure.rho), t * spec.half_derivative(measure.x))
    return measure_to_jacobi(RealDiscreteMeasure(measure.x, rho))


def exact_flow_opuc(start: VerblunskyParams, spec: FlowSpec, t: float) -> VerblunskyParams:
    if spec.kind != "opuc":
        raise ArgumentError("exact_flow_opuc needs an OPUC flow")
    start = start.values()
    measure = cmv_to_measure(start)
    mu = _evolve(np.log(measure.mu), t * spec.symbol(measure.theta))
    evolved = measure_to_verblunsky(CircleDiscreteMeasure(measure.theta, mu))
    return VerblunskyParams(evolved.alpha, start.beta)


def exact_flow(start, spec: FlowSpec, t: float):
    """Parameters at time t of the flow started at ``start``."""
    if spec.kind == "oprl":
        return exact_flow_oprl(start, spec, t)
    return exact_flow_opuc(start, spec, t)


def _sample_indices(count: int, samples: int) -> np.ndarray:
    return np.unique(np.linspace(0, count - 1, min(samples, count)).round().astype(int))


def compare_exact(spec: FlowSpec, start, trajectory: Optional[Trajectory] = None,
                  tol: Optional[float] = None, tolerances=None,
                  samples: int = COMPARE_SAMPLES) -> BracketReport:
    """Largest parameter deviation between the RK4 trajectory and the exact flow.

    The trajectory is integrated from ``start`` when not given; comparison happens at up
    to ``samples`` recorded times including the last one.
    """
    table = Tolerances.build(tol, tolerances)
    if trajectory is None:
        trajectory = integrate_flow(spec, start)
    worst, at = 0.0, 0.0
    for index in _sample_indices(len(trajectory.states), samples):
        t = float(trajectory.times[index])
        exact = exact_flow(start, spec, t)
        deviation = float(np.max(np.abs(exact.to_vector() - trajectory.states[index].to_vector()),
                                 initial=0.0))
        if deviation >= worst:
            worst, at = deviation, t
    identity_id = f"{spec.kind}.flow.exact_vs_rk4"
    return make_report(identity_id, worst, table.resolve(identity_id, "flow_exact"),
                       f"t in [0, {spec.t_final:g}], dt={spec.dt:g}", f"largest deviation at t={at:g}",
                       start.N)


def _spectrum(params) -> np.ndarray:
    if isinstance(params, JacobiParams):
        return eigenvalues(params)
    return np.angle(np.linalg.eigvals(np.asarray(cmv_matrix(params.values()), dtype=complex)))


def isospectral_report(trajectory: Trajectory, spec: FlowSpec, tol: Optional[float] = None,
                       tolerances=None) -> BracketReport:
    """Eigenvalues of J(t), or arguments of the eigenvalues of C(t), against t = 0."""
    table = Tolerances.build(tol, tolerances)
    circle = spec.kind == "opuc"
    reference = _spectrum(trajectory.states[0])
    worst = 0.0
    for state in trajectory.states[1:]:
        nodes = _spectrum(state)
        nodes = nodes[match_nodes(reference, nodes, circle=circle)]
        if circle:
            gap = np.abs(np.exp(1j * nodes) - np.exp(1j * reference))
        else:
            gap = np.abs(nodes - reference) / np.maximum(1.0, np.abs(reference))
        worst = max(worst, float(np.max(gap, initial=0.0)))
    identity_id = f"{spec.kind}.flow.isospectral"
    return make_report(identity_id, worst, table.resolve(identity_id, "flow_isospectral"),
                       f"t in [0, {spec.t_final:g}], dt={spec.dt:g}", "", trajectory.states[0].N)
