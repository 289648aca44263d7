"""First-order perturbation construction for the two example nonlinearities.

Builds the zeroth-order solution A lam_p^n + B lam_m^n, the first-order
forcing and particular solution for the cubic and Van der Pol type schemes,
extracts the secular (n * lambda^n) content, and evaluates the naive
(unrenormalized) expansion z0 + eps * z1.

Cross-term convention: products lam_p^n * lam_m^n arising from powers of z0
are collected as 1.  This is exact for the unit-modulus roots (whose product
is exactly 1) and a deliberate first-order approximation for the 1 +/- i*dt
convention, whose product is 1 + dt^2; the dropped factor (1 + dt^2)^n is the
price of reproducing the closed-form expansion coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .lineardiff import (
    HarmonicSum,
    HarmonicTerm,
    SchemeParams,
    characteristic_roots,
    particular_solution,
    resonance_tolerance,
)

__all__ = [
    "Variant",
    "Nonlinearity",
    "CUBIC",
    "VAN_DER_POL",
    "van_der_pol",
    "AmplitudePair",
    "SecularReport",
    "zeroth_order",
    "first_order_forcing",
    "first_order_solution",
    "extract_secular",
    "naive_solution",
    "nonlinearity_value",
]


class Variant(Enum):
    CUBIC = "cubic"
    VAN_DER_POL = "vdp"


@dataclass(frozen=True)
class Nonlinearity:
    """Which nonlinear right-hand side the scheme carries.

    CUBIC: the forcing is -z(n)^3 (times the scheme's dt^2 * eps prefactor).
    VAN_DER_POL: the forcing is eps * dt * (1 - z(n)^2) * (z(n+1) - z(n-1));
    with `vdp_halving` the centered difference is halved, which matches the
    standard centered discretization of z' and amounts to eps -> eps/2.
    """

    variant: Variant
    vdp_halving: bool = False

    def __post_init__(self):
        if self.vdp_halving and self.variant is not Variant.VAN_DER_POL:
            raise ValueError("vdp_halving only applies to the Van der Pol variant")


CUBIC = Nonlinearity(Variant.CUBIC)
VAN_DER_POL = Nonlinearity(Variant.VAN_DER_POL)


def van_der_pol(halving: bool = False) -> Nonlinearity:
    return Nonlinearity(Variant.VAN_DER_POL, vdp_halving=halving)


@dataclass(frozen=True)
class AmplitudePair:
    """Complex amplitudes (a, b) of the two fundamental modes."""

    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))

    @classmethod
    def conjugate_pair(cls, a: complex) -> "AmplitudePair":
        """Pair (a, conj(a)), the real-solution constraint."""
        a = complex(a)
        return cls(a, a.conjugate())

    @property
    def is_conjugate_pair(self) -> bool:
        return abs(self.b - self.a.conjugate()) <= 1e-14 * max(1.0, abs(self.a))


@dataclass(frozen=True)
class SecularReport:
    """Coefficients of n * lam_p^n and n * lam_m^n in a first-order solution."""

    sigma_plus: complex
    sigma_minus: complex


def zeroth_order(amps: AmplitudePair, params: SchemeParams) -> HarmonicSum:
    """Homogeneous solution a * lam_p^n + b * lam_m^n."""
    lam_p, lam_m = characteristic_roots(params)
    return HarmonicSum(
        (HarmonicTerm(amps.a, lam_p), HarmonicTerm(amps.b, lam_m))
    )


def _vdp_scale(kind: Nonlinearity, dt: float) -> float:
    return dt * (0.5 if kind.vdp_halving else 1.0)


def first_order_forcing(
    kind: Nonlinearity, amps: AmplitudePair, params: SchemeParams
) -> HarmonicSum:
    """Right-hand side of the first-order equation, collected on four modes.

    Cubic: -dt^2 * (a^3 lam_p^3n + b^3 lam_m^3n + 3 a^2 b lam_p^n
    + 3 a b^2 lam_m^n), the dt^2 prefactor being the scheme's.

    Van der Pol: dt * (1 - z0^2)(z0(n+1) - z0(n-1)) expanded with
    z0(n +/- 1) = a lam_p^(n+/-1) + b lam_m^(n+/-1) and collected under the
    cross-term convention lam_p lam_m -> 1 (which also sends
    lam_m - 1/lam_m -> -(lam_p - 1/lam_p)), yielding coefficients
    -a^3 s, -b^3 s', (a - a^2 b) s, (b - a b^2) s' on the four modes, with
    s = lam_p - 1/lam_p and s' = lam_m - 1/lam_m.
    """
    lam_p, lam_m = characteristic_roots(params)
    a, b = amps.a, amps.b
    dt = params.dt
    if kind.variant is Variant.CUBIC:
        pref = -dt * dt
        terms = (
            HarmonicTerm(pref * a**3, lam_p**3),
            HarmonicTerm(pref * b**3, lam_m**3),
            HarmonicTerm(pref * 3.0 * a * a * b, lam_p),
            HarmonicTerm(pref * 3.0 * a * b * b, lam_m),
        )
    else:
        scale = _vdp_scale(kind, dt)
        s_p = lam_p - 1.0 / lam_p
        s_m = lam_m - 1.0 / lam_m
        terms = (
            HarmonicTerm(-scale * a**3 * s_p, lam_p**3),
            HarmonicTerm(-scale * b**3 * s_m, lam_m**3),
            HarmonicTerm(scale * (a - a * a * b) * s_p, lam_p),
            HarmonicTerm(scale * (b - a * b * b) * s_m, lam_m),
        )
    return HarmonicSum(terms)


def first_order_solution(
    kind: Nonlinearity, amps: AmplitudePair, params: SchemeParams
) -> HarmonicSum:
    """Particular solution z1 of the first-order equation.

    Carries exactly two secular terms (on the fundamental modes) whenever both
    amplitudes are nonzero; the third-harmonic responses are geometric.
    """
    return particular_solution(first_order_forcing(kind, amps, params), params)


def extract_secular(z1: HarmonicSum, params: SchemeParams) -> SecularReport:
    """Read the secular coefficients off a normalized first-order solution.

    Raises if a secular term sits on a base other than the two characteristic
    roots of the active convention: that would mean the construction upstream
    produced resonance where none is expected.
    """
    lam_p, lam_m = characteristic_roots(params)
    sigma_plus = 0j
    sigma_minus = 0j
    for term in z1.terms:
        if term.n_power != 1:
            continue
        if abs(term.base - lam_p) <= resonance_tolerance(lam_p):
            sigma_plus += term.coeff
        elif abs(term.base - lam_m) <= resonance_tolerance(lam_m):
            sigma_minus += term.coeff
        else:
            raise ValueError(f"secular term on unexpected base {term.base}")
    return SecularReport(sigma_plus, sigma_minus)


def naive_solution(
    kind: Nonlinearity, amps: AmplitudePair, params: SchemeParams, n
):
    """Real part of the uncorrected expansion z0 + eps * z1 at index n.

    Requires a conjugate amplitude pair so the expansion is a real sequence;
    accepts a scalar index or an array of indices.
    """
    if not amps.is_conjugate_pair:
        raise ValueError("naive_solution needs b = conj(a) for a real sequence")
    full = zeroth_order(amps, params) + first_order_solution(
        kind, amps, params
    ).scaled(params.eps)
    return full.evaluate(n).real


def nonlinearity_value(
    kind: Nonlinearity,
    z_plus: complex,
    z_center: complex,
    z_minus: complex,
    params: SchemeParams,
) -> complex:
    """The forcing f such that the scheme residual subtracts dt^2 * eps * f.

    For the Van der Pol variant the nonlinearity enters the scheme with a
    single power of dt, so f carries a 1/dt to match the dt^2 bookkeeping of
    the residual (and an extra 1/2 under the halving convention).
    """
    if kind.variant is Variant.CUBIC:
        return -(z_center**3)
    denom = params.dt * (2.0 if kind.vdp_halving else 1.0)
    return (1.0 - z_center * z_center) * (z_plus - z_minus) / denom
