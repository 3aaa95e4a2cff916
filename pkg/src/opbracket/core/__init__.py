from .dual import ComplexDual, DualScalar, abs2, conj, exp, gradient_of, is_dual, log, seed, sqrt, value_of
from .errors import (ArgumentError, BlowUpError, ConfigError, ConsistencyError, ConvergenceError,
                     DegeneracyError, DegenerateSpectrumError, IllConditionedMeasureError,
                     NumericError, OpBracketError, PoleError)
from .measure import CircleDiscreteMeasure, RealDiscreteMeasure, normalize_angle
from .params import JacobiParams, VerblunskyParams
from .poly import (CoeffPoly, ComplexCoeffPoly, LaurentPoly, RealCoeffPoly, bezout_kernel,
                   poly_eval, poly_from_roots)
from .roots import aberth_roots
