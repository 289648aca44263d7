"""Amplitude flows that absorb the secular growth of the first-order expansion.

The integration constants of the zeroth-order solution are promoted to slowly
varying amplitudes A(m), B(m) driven per step by eps times the secular
coefficients.  Both the exact iterated maps and the closed forms (frozen
invariant for the cubic flow, logistic-type envelope for the Van der Pol flow,
and the dt -> 0 continuum limits) are provided, so their gaps can be measured
instead of assumed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .lineardiff import SchemeParams
from .perturbation import Nonlinearity, Variant

__all__ = [
    "DiscreteAmplitudeFlow",
    "KappaConvention",
    "VdpRealAmplitudes",
    "build_flow",
    "iterate_flow",
    "flow_path",
    "solve_cubic_discrete_closed",
    "solve_cubic_continuum",
    "solve_vdp_continuum",
    "kappa_value",
    "fit_envelope_constant",
    "conserved_constant",
    "continuum_limit_check",
]

_FLOW_OVERFLOW_LIMIT = 1e12


@dataclass(frozen=True)
class DiscreteAmplitudeFlow:
    """Per-step amplitude map: rhs(A, B) -> (delta A, delta B)."""

    rhs: Callable[[complex, complex], tuple[complex, complex]]


class KappaConvention(Enum):
    """Coefficient kappa in the Van der Pol envelope A1' = eps A1 (1 - kappa A1^2).

    Reducing the two real amplitude equations with A2 = c A1 gives
    1 - A1^2 - A2^2 = 1 - (1 + c^2) A1^2, so ONE_PLUS_C_SQUARED is the
    algebraically consistent choice and the default; ONE_PLUS_C keeps
    kappa = 1 + c available for comparison.  The two coincide at c = 0 and
    c = 1 and predict different limit amplitudes everywhere else.
    """

    ONE_PLUS_C = "one-plus-c"
    ONE_PLUS_C_SQUARED = "one-plus-c-squared"


@dataclass(frozen=True)
class VdpRealAmplitudes:
    """Real and imaginary parts (A1, A2) of the Van der Pol amplitude."""

    a1: float
    a2: float


def kappa_value(c: float, convention: KappaConvention) -> float:
    if convention is KappaConvention.ONE_PLUS_C:
        return 1.0 + c
    return 1.0 + c * c


def build_flow(kind: Nonlinearity, params: SchemeParams) -> DiscreteAmplitudeFlow:
    """Discrete amplitude flow for the given nonlinearity.

    Cubic:        delta A = (3/2) i eps dt A^2 B,  delta B = -(3/2) i eps dt B^2 A.
    Van der Pol: delta A = eps dt (A - A^2 B),     delta B = eps dt (B - B^2 A),
    with the halving convention folding an extra 1/2 into the rate.
    """
    eps, dt = params.eps, params.dt
    if kind.variant is Variant.CUBIC:
        rate = 1.5j * eps * dt

        def rhs(a: complex, b: complex) -> tuple[complex, complex]:
            return rate * a * a * b, -rate * b * b * a

    else:
        rate = eps * dt * (0.5 if kind.vdp_halving else 1.0)

        def rhs(a: complex, b: complex) -> tuple[complex, complex]:
            return rate * (a - a * a * b), rate * (b - b * b * a)

    return DiscreteAmplitudeFlow(rhs)


def flow_path(
    flow: DiscreteAmplitudeFlow, a0: complex, b0: complex, steps: int
) -> tuple[np.ndarray, np.ndarray]:
    """Amplitudes along the flow: arrays of A(m), B(m) for m = 0..steps.

    A strict left fold in a fixed order, so results are bit-reproducible.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    a_path = np.empty(steps + 1, dtype=complex)
    b_path = np.empty(steps + 1, dtype=complex)
    a, b = complex(a0), complex(b0)
    for m in range(steps + 1):
        a_path[m] = a
        b_path[m] = b
        if m == steps:
            break
        da, db = flow.rhs(a, b)
        a = a + da
        b = b + db
        if abs(a) > _FLOW_OVERFLOW_LIMIT or abs(b) > _FLOW_OVERFLOW_LIMIT:
            raise OverflowError(f"amplitude flow exceeded {_FLOW_OVERFLOW_LIMIT} at step {m + 1}")
    return a_path, b_path


def iterate_flow(
    flow: DiscreteAmplitudeFlow, a0: complex, b0: complex, steps: int
) -> tuple[complex, complex]:
    """Final amplitudes (A(steps), B(steps)) of the iterated map."""
    a_path, b_path = flow_path(flow, a0, b0, steps)
    return complex(a_path[-1]), complex(b_path[-1])


def conserved_constant(kind: Nonlinearity, a: complex, b: complex) -> complex:
    """Invariant of the amplitude flow: A*B (cubic) or A2/A1 (Van der Pol)."""
    if kind.variant is Variant.CUBIC:
        return complex(a) * complex(b)
    a = complex(a)
    if a.real == 0.0:
        raise ValueError("Van der Pol amplitude ratio undefined for Re(A) = 0")
    return complex(a.imag / a.real)


def solve_cubic_discrete_closed(
    a0: complex, b0: complex, params: SchemeParams, steps: int
) -> tuple[complex, complex]:
    """Closed form of the cubic flow with the product c = A0*B0 frozen.

    A(m) = A0 (1 + (3/2) i eps c dt)^m and B(m) the mirrored power.  The true
    iterated map lets the product drift at second order in eps; this frozen-c
    form is its first-order companion, not a substitute.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    c = complex(a0) * complex(b0)
    growth = 1.0 + 1.5j * params.eps * c * params.dt
    shrink = 1.0 - 1.5j * params.eps * c * params.dt
    a = complex(a0) * cmath.exp(steps * cmath.log(growth))
    b = complex(b0) * cmath.exp(steps * cmath.log(shrink))
    return a, b


def solve_cubic_continuum(a0: complex, b0: complex, eps: float, t):
    """Continuum amplitudes A(t) = A0 e^{(3/2) i eps c t}, B(t) mirrored.

    Exact solution of A' = (3/2) i eps A^2 B, B' = -(3/2) i eps A B^2, whose
    product A B = c is conserved identically.  Accepts scalar or array t.
    """
    c = complex(a0) * complex(b0)
    t_arr = np.asarray(t, dtype=float)
    phase = np.exp(1.5j * eps * c * t_arr)
    a = complex(a0) * phase
    b = complex(b0) / phase
    if t_arr.ndim == 0:
        return complex(a), complex(b)
    return a, b


def fit_envelope_constant(a1_initial: float, kappa: float) -> float:
    """Envelope family constant reproducing A1(0) = a1_initial.

    The closed form A1(t) = K e^{eps t} / sqrt(1 + kappa K^2 e^{2 eps t}) has
    A1(0) = K / sqrt(1 + kappa K^2); inverting gives
    K = a1 / sqrt(1 - kappa a1^2), which requires kappa * a1^2 < 1.
    """
    denom = 1.0 - kappa * a1_initial * a1_initial
    if denom <= 0.0:
        raise ValueError(
            f"initial amplitude {a1_initial} outside the reach of the envelope "
            f"family with kappa = {kappa}"
        )
    return a1_initial / math.sqrt(denom)


def solve_vdp_continuum(
    a0: float,
    c: float,
    eps: float,
    t,
    convention: KappaConvention = KappaConvention.ONE_PLUS_C_SQUARED,
) -> VdpRealAmplitudes:
    """Continuum Van der Pol amplitudes for the envelope constant a0.

    A1(t) = a0 e^{eps t} / sqrt(1 + kappa a0^2 e^{2 eps t}) and A2 = c A1;
    this satisfies A1' = eps A1 (1 - kappa A1^2) exactly, and tends to
    1/sqrt(kappa) as t grows.  Accepts scalar or array t; note a0 is the
    family constant, not the value at t = 0 (see fit_envelope_constant).
    """
    if a0 == 0.0:
        raise ValueError("envelope constant must be nonzero")
    kappa = kappa_value(c, convention)
    t_arr = np.asarray(t, dtype=float)
    growth = np.exp(eps * t_arr)
    denom = 1.0 + kappa * a0 * a0 * growth * growth
    if np.any(denom <= 0.0):
        raise ValueError("envelope denominator vanishes; solution leaves its domain")
    a1 = a0 * growth / np.sqrt(denom)
    if t_arr.ndim == 0:
        return VdpRealAmplitudes(float(a1), float(c * a1))
    return VdpRealAmplitudes(a1, c * a1)


def continuum_limit_check(
    kind: Nonlinearity,
    a0: complex,
    params: SchemeParams,
    t_max: float,
    convention: KappaConvention = KappaConvention.ONE_PLUS_C_SQUARED,
) -> float:
    """Max gap between the iterated flow and its continuum closed form.

    Runs the discrete flow from (a0, conj(a0)) for t_max / dt steps and
    reports max_m |A_discrete(m) - A_ode(m dt)|.  The map is the forward Euler
    step of the continuum equation, so the gap shrinks linearly as dt is
    halved; callers assert that ratio.
    """
    steps = int(round(t_max / params.dt))
    flow = build_flow(kind, params)
    a0 = complex(a0)
    a_path, _ = flow_path(flow, a0, a0.conjugate(), steps)
    t = np.arange(steps + 1) * params.dt
    if kind.variant is Variant.CUBIC:
        a_ode, _ = solve_cubic_continuum(a0, a0.conjugate(), params.eps, t)
    else:
        c = conserved_constant(kind, a0, a0.conjugate()).real
        kappa = kappa_value(c, convention)
        constant = fit_envelope_constant(a0.real, kappa)
        eff_eps = params.eps * (0.5 if kind.vdp_halving else 1.0)
        amps = solve_vdp_continuum(constant, c, eff_eps, t, convention)
        a_ode = amps.a1 * (1.0 + 1j * c)
    return float(np.max(np.abs(a_path - a_ode)))
