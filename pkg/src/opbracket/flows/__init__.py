from .exact import compare_exact, exact_flow, exact_flow_opuc, exact_flow_oprl, isospectral_report
from .hamiltonian import flow_hamiltonian, flow_tensor, hamiltonian_rhs
from .integrate import conserved_report, integrate_flow, monitored
from .odes import (flow_rhs_check, is_schur, opuc_ode_check, oprl_ode_check, schur_rhs,
                   schur_rhs_check, time_derivative)
from .spec import PRESETS, FlowSpec, Trajectory
