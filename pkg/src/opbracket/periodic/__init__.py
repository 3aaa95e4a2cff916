from .brackets import discriminant_from_bands, theta_laws, verify_periodic_brackets
from .dos import DosMoment, dos_moments, finite_section_moments
from .floquet import (floquet_crosscheck, floquet_gradients, floquet_polynomial, floquet_spectrum,
                      jacobi_theta, symmetric_functions)
from .newton import elementary_to_power_sums, newton_convert, power_sums_to_elementary
from .params import PeriodicOprl, PeriodicOpuc
from .transfer import Monodromy, det_residual, discriminant, leading_residual, monodromy, trace_poly
