"""Exact first and second graph polynomials, configuration polynomials and
certifiers for their singular structure, all over the rationals."""
from .config import (
    Configuration,
    h1_configuration,
    h1p_configuration,
    phi_config,
    plucker,
    psi_det,
    psi_plucker,
    restrict,
    symbolic_form,
)
from .errors import (
    CheckFailure,
    ConfpolyError,
    DimensionError,
    EdgeCapError,
    MomentumError,
    ParseError,
    SamplingExhaustedError,
    SizeError,
    ZeroConfigurationError,
)
from .exactalg import Polynomial, RatMatrix, mat_det, mat_kernel, mat_rank, rref
from .graphhom import (
    Multigraph,
    circuit_basis,
    first_graph_polynomial_forests,
    momentum_lift,
    quasi_spanning_forests,
    second_graph_polynomial_cutsets,
    spanning_forests,
)
from .singular import (
    form_at,
    multiplicity_at,
    sample_corank_points,
    singular_ideal_gens,
    tangent_cone,
    verify_theorem,
)

__version__ = "0.1.0"
