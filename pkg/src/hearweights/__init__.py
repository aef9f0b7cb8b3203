"""Heat invariants of weighted projective planes CP^2(N1, N2, N3) and the
inverse problem of hearing the weights from them."""

from .errors import (
    AmbiguousRecoveryError,
    InconsistentInputError,
    InvalidWeightsError,
    NoApproximantError,
    PoleError,
    RouteMismatchError,
)
from .exact_arith import BigReal, factorize, integer_cubic_roots, rationalize, square_decompose
from .extremal import check_extremal, simplex_moment, tau_sq_integral
from .heat import extract_b, extract_c2, extract_tau_sq, heat_coefficients, k_coefficients
from .recovery import (
    SpectralInput,
    recover_from_bcd,
    recover_prime,
    recover_weights,
    recover_with_chi,
)
from .topology import WeightTriple, chern_numbers, symmetric_functions
from .trig import T_closed, T_direct

__version__ = "0.1.0"
