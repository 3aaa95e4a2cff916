from ..core import ArgumentError, JacobiParams, VerblunskyParams
from .backend import (ScalarField, bracket, bracket_with_scale, coordinate_field, gradient,
                      jacobi_identity_residual, richardson_derivative, spectral_jacobian,
                      wirtinger_bracket)
from .base import PoissonTensor
from .fundamental import (oprl_spectral_gradients, opuc_spectral_gradients, rho_rho_bracket,
                          verify_fundamental_oprl, verify_fundamental_opuc)
from .grid import Grid, away_from, circle_grid, real_grid
from .jacobian import jacobian_opuc, jacobian_oprl, jacobian_report
from .report import (DEFAULT_TOLERANCES, BracketReport, Tolerances, first_failure, make_report,
                     normalized_residual)
from .suite_opuc import verify_identity_suite_opuc
from .suite_oprl import verify_identity_suite_oprl
from .symplectic import (block_inverse, block_inverse_residual, spectral_symplectic_check,
                         symplectic_check, triangular_w)
from .tensors import OprlFiniteTensor, OprlPeriodicTensor, OpucFiniteTensor, OpucPeriodicTensor


def verify_identity_suite(params, grid=None, tol=None, tolerances=None):
    """Identity suite for JacobiParams or VerblunskyParams."""
    if isinstance(params, JacobiParams):
        return verify_identity_suite_oprl(params, grid, tol, tolerances)
    if isinstance(params, VerblunskyParams):
        return verify_identity_suite_opuc(params, grid, tol, tolerances)
    raise ArgumentError(f"unsupported parameters {type(params).__name__}")


def verify_fundamental(params, tol=None, tolerances=None):
    if isinstance(params, JacobiParams):
        return verify_fundamental_oprl(params, tol, tolerances)
    if isinstance(params, VerblunskyParams):
        return verify_fundamental_opuc(params, tol, tolerances)
    raise ArgumentError(f"unsupported parameters {type(params).__name__}")
