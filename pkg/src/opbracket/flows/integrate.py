"""Fixed-step classical RK4 on the Hamiltonian vector field of a trace Hamiltonian."""
import logging
from typing import List, Optional

import numpy as np

from ..core import ArgumentError, BlowUpError, JacobiParams, VerblunskyParams
from ..opuc import cmv_matrix, trace_powers
from ..oprl import jacobi_matrix
from ..poisson import BracketReport, PoissonTensor, Tolerances, make_report
from .hamiltonian import flow_hamiltonian, flow_tensor, hamiltonian_rhs
from .spec import FlowSpec, Trajectory

logger = logging.getLogger(__name__)

MONITORED_POWERS = 4


def monitored(params) -> np.ndarray:
    """Tr J^1..Tr J^4 (OPRL) or Re/Im Tr C, Re/Im Tr C² (OPUC)."""
    if isinstance(params, JacobiParams):
        return np.array(trace_powers(jacobi_matrix(params.values()), MONITORED_POWERS), dtype=float)
    traces = trace_powers(np.asarray(cmv_matrix(params.values()), dtype=complex), 2)
    return np.array([traces[0].real, traces[0].imag, traces[1].real, traces[1].imag])


def monitored_names(kind: str) -> List[str]:
    if kind == "oprl":
        return [f"trJ{m}" for m in range(1, MONITORED_POWERS + 1)]
    return ["re_trC1", "im_trC1", "re_trC2", "im_trC2"]


def _admissible(tensor: PoissonTensor, state: np.ndarray, time: float):
    if not np.all(np.isfinite(state)):
        raise BlowUpError(f"non-finite state at t={time:.6g}", time=time)
    params = _params(tensor, state, time)
    if isinstance(params, JacobiParams):
        if params.a.size and np.min(params.a) <= 0:
            raise BlowUpError(f"a_j left (0, inf) at t={time:.6g}", time=time)
    elif params.alpha.size and np.max(np.abs(params.alpha)) >= 1.0:
        raise BlowUpError(f"|alpha_j| reached 1 at t={time:.6g}", time=time)
    return params


def _params(tensor: PoissonTensor, state: np.ndarray, time: float):
    try:
        return tensor.params_of(state)
    except ArgumentError as err:
        raise BlowUpError(f"inadmissible state at t={time:.6g}: {err}", time=time) from err


def integrate_flow(spec: FlowSpec, start, tensor: Optional[PoissonTensor] = None) -> Trajectory:
    """RK4 trajectory from ``start`` over [0, t_final] with step t_final/steps.

    Raises:
        ArgumentError: if the start point does not match the flow kind.
        BlowUpError: if a state leaves the region a_j > 0 (OPRL) or |α_j| < 1 (OPUC).
    """
    expected = JacobiParams if spec.kind == "oprl" else VerblunskyParams
    if not isinstance(start, expected):
        raise ArgumentError(f"{spec.kind} flow needs {expected.__name__}, got {type(start).__name__}")
    start = start.values()
    if tensor is None:
        tensor = flow_tensor(spec, start)
    H = flow_hamiltonian(spec, tensor)
    steps = spec.steps
    h = spec.t_final / steps if steps else 0.0

    def field(state, time):
        _params(tensor, state, time)
        return hamiltonian_rhs(H, state, tensor)

    state = np.asarray(tensor.point_of(start), dtype=float)
    times, states, conserved = [0.0], [start], [monitored(start)]
    for step in range(steps):
        t = step * h
        k1 = field(state, t)
        k2 = field(state + 0.5 * h * k1, t + 0.5 * h)
        k3 = field(state + 0.5 * h * k2, t + 0.5 * h)
        k4 = field(state + h * k3, t + h)
        state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        params = _admissible(tensor, state, t + h)
        times.append(t + h)
        states.append(params)
        conserved.append(monitored(params))
    logger.info("%s flow: %d RK4 steps of %.3g, N=%d", spec.preset, steps, h, start.N)
    return Trajectory(np.array(times), states, np.array(conserved), monitored_names(spec.kind),
                      tensor.coordinates())


def conserved_report(trajectory: Trajectory, spec: FlowSpec, tol: Optional[float] = None,
                     tolerances=None) -> BracketReport:
    """Drift of the monitored traces along the RK4 trajectory."""
    table = Tolerances.build(tol, tolerances)
    identity_id = f"{spec.kind}.flow.conserved"
    drift = trajectory.drift()
    worst = int(np.argmax(drift)) if drift.size else 0
    notes = f"largest drift in {trajectory.names[worst]}" if drift.size else ""
    return make_report(identity_id, drift, table.resolve(identity_id, "flow_conserved"),
                       f"t in [0, {spec.t_final:g}], dt={spec.dt:g}", notes, trajectory.states[0].N)
