"""Renormalized asymptotics for weakly nonlinear second-order difference schemes.

Implements the full pipeline for schemes of the form
z(n+1) - (2 - dt^2) z(n) + z(n-1) = dt^2 * eps * f(...):
forward-difference series utilities, the first-order perturbation expansion
and its secular content, amplitude flows that renormalize the secular growth
away, globally valid asymptotic solutions, an exact-iteration oracle, and the
measurement layer used to compare them.
"""

from .analysis import ErrorProfile, PeriodEstimate, compare, envelope, zero_crossing_period
from .asymptotic import GlobalSolution, assemble_modes, third_harmonic_coefficient
from .lineardiff import (
    HarmonicSum,
    HarmonicTerm,
    RootConvention,
    SchemeParams,
    characteristic_roots,
    is_resonant,
    particular_solution,
    scheme_residual,
)
from .newton import (
    SampledSequence,
    TwoScaleExpansion,
    binomial_coefficient,
    check_envelope_constancy,
    expansion_from_orders,
    expansion_from_sequence,
    envelope_partial_sum,
    forward_difference,
    newton_partial_sum,
)
from .oracle import (
    DivergenceError,
    SingularStepError,
    Trajectory,
    init_from_amplitude,
    iterate,
    iterate_mickens,
)
from .perturbation import (
    CUBIC,
    VAN_DER_POL,
    AmplitudePair,
    Nonlinearity,
    SecularReport,
    Variant,
    extract_secular,
    first_order_forcing,
    first_order_solution,
    naive_solution,
    nonlinearity_value,
    van_der_pol,
    zeroth_order,
)
from .renormalization import (
    DiscreteAmplitudeFlow,
    KappaConvention,
    VdpRealAmplitudes,
    build_flow,
    conserved_constant,
    continuum_limit_check,
    fit_envelope_constant,
    flow_path,
    iterate_flow,
    kappa_value,
    solve_cubic_continuum,
    solve_cubic_discrete_closed,
    solve_vdp_continuum,
)

__version__ = "0.1.0"
