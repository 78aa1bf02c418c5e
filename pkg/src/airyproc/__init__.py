"""Two-time distribution of the Airy process.

Fredholm determinants of the 2x2 block kernel, the Hastings-McLeod Painleve
II route to the same quantities, and the large-t expansion coefficients c2
and c4, each cross-validated against the other route.
"""

from . import airy, asymptotics, backend, fredholm, kernels, painleve, quadrature, verify
from .airy import AiryPair, ai, ai_pair, ai_prime, ai_second, ai_values
from .asymptotics import CoefficientPair, ResidualReport, coefficients, default_table, residual_sweep
from .errors import (
    AiryprocError,
    ConfigurationError,
    DomainError,
    InstabilityError,
    SingularityError,
    UnsupportedParameterError,
)
from .fredholm import (
    BlockKernelMatrix,
    ResolventData,
    assemble,
    f2_det,
    factored_joint_det,
    joint_det,
    resolvent_quantities,
    trace_t12_t21,
    trace_t12_t21_squared,
)
from .kernels import airy_kernel, expansion_blocks, offdiag_lower, offdiag_upper
from .painleve import HmTable, PainleveState, eval_state, hm_solve, integral_identity_gap, load_table, save_table
from .quadrature import QuadratureGrid, gauss_legendre, semi_infinite_grid

__version__ = "0.1.0"
