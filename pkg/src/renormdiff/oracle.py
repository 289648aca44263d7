"""Exact brute-force iteration of the nonlinear schemes: the ground truth.

Every acceptance-style comparison in this package is measured against these
trajectories.  Recurrences are run sequentially in plain double precision with
a fixed evaluation order, so identical inputs give bit-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lineardiff import SchemeParams, characteristic_roots
from .perturbation import Nonlinearity, Variant

__all__ = [
    "Trajectory",
    "DivergenceError",
    "SingularStepError",
    "iterate",
    "init_from_amplitude",
    "iterate_mickens",
]

_DIVERGENCE_LIMIT = 1e8
_SINGULAR_STEP_TOL = 1e-12


class DivergenceError(RuntimeError):
    """Trajectory magnitude exceeded the divergence guard."""


class SingularStepError(RuntimeError):
    """The implicit step's leading coefficient vanished."""


@dataclass(frozen=True)
class Trajectory:
    """Uniformly indexed real sequence z(0..N) with its time step."""

    dt: float
    values: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.array(self.values, dtype=float))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("trajectory must be a non-empty one-dimensional array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("trajectory contains non-finite values")
        arr.setflags(write=False)  # arr is our own copy
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.values.size) * self.dt


def init_from_amplitude(a0: complex, params: SchemeParams) -> tuple[float, float]:
    """Zeroth-order bridge from amplitude space to initial data.

    z(0) = 2 Re(a0) and z(1) = 2 Re(a0 * lam_p) under the active root
    convention.  The bridge ignores the first-order correction, which costs an
    O(eps) offset against the asymptotic solution; comparisons absorb it in
    their tolerances.
    """
    a0 = complex(a0)
    lam_p, _ = characteristic_roots(params)
    return 2.0 * a0.real, 2.0 * (a0 * lam_p).real


def _step_cubic(z: float, zm: float, lin: float, gain: float) -> float:
    return lin * z - zm - gain * z * z * z


def iterate(
    kind: Nonlinearity, params: SchemeParams, z0: float, z1: float, n_steps: int
) -> Trajectory:
    """Iterate the scheme exactly from (z0, z1), returning z(0..n_steps).

    Cubic: explicit update z(n+1) = (2 - dt^2) z(n) - z(n-1) - eps dt^2 z(n)^3.
    Van der Pol: the right-hand side is linear in z(n+1), so the step is
    solved in closed form; a vanishing leading coefficient raises
    SingularStepError.  Magnitudes beyond 1e8 raise DivergenceError.
    """
    if n_steps < 2:
        raise ValueError("need at least 2 steps")
    dt, eps = params.dt, params.eps
    lin = 2.0 - dt * dt
    values = np.empty(n_steps + 1, dtype=float)
    values[0] = zm = float(z0)
    values[1] = z = float(z1)
    if kind.variant is Variant.CUBIC:
        gain = eps * dt * dt
        for n in range(1, n_steps):
            zp = _step_cubic(z, zm, lin, gain)
            if abs(zp) > _DIVERGENCE_LIMIT:
                raise DivergenceError(f"|z({n + 1})| exceeded {_DIVERGENCE_LIMIT}")
            values[n + 1] = zp
            zm, z = z, zp
    else:
        gain = eps * dt * (0.5 if kind.vdp_halving else 1.0)
        for n in range(1, n_steps):
            w = gain * (1.0 - z * z)
            lead = 1.0 - w
            if abs(lead) < _SINGULAR_STEP_TOL:
                raise SingularStepError(f"implicit coefficient vanished at n={n}")
            zp = (lin * z - zm - w * zm) / lead
            if abs(zp) > _DIVERGENCE_LIMIT:
                raise DivergenceError(f"|z({n + 1})| exceeded {_DIVERGENCE_LIMIT}")
            values[n + 1] = zp
            zm, z = z, zp
    return Trajectory(dt=dt, values=values)


def iterate_mickens(
    kind: Nonlinearity, h: float, eps: float, z0: float, z1: float, n_steps: int
) -> Trajectory:
    """Iterate the trigonometric-weight variant of the scheme.

    The harmonic part uses 4 sin^2(h/2) in place of h^2:
    x(k+1) - (2 - 4 sin^2(h/2)) x(k) + x(k-1) = 4 sin^2(h/2) * eps * f(...),
    which makes cos(k h) an exact solution at eps = 0.  The nonlinearities
    keep the same f bookkeeping as the plain scheme (for the Van der Pol kind
    the centered difference divides by h).
    """
    if not 0.0 < h < math.pi:
        raise ValueError(f"step h must lie in (0, pi), got {h}")
    if n_steps < 2:
        raise ValueError("need at least 2 steps")
    if eps < 0.0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    mu = 4.0 * math.sin(0.5 * h) ** 2
    lin = 2.0 - mu
    values = np.empty(n_steps + 1, dtype=float)
    values[0] = zm = float(z0)
    values[1] = z = float(z1)
    if kind.variant is Variant.CUBIC:
        gain = eps * mu
        for n in range(1, n_steps):
            zp = _step_cubic(z, zm, lin, gain)
            if abs(zp) > _DIVERGENCE_LIMIT:
                raise DivergenceError(f"|x({n + 1})| exceeded {_DIVERGENCE_LIMIT}")
            values[n + 1] = zp
            zm, z = z, zp
    else:
        gain = eps * mu / (h * (2.0 if kind.vdp_halving else 1.0))
        for n in range(1, n_steps):
            w = gain * (1.0 - z * z)
            lead = 1.0 - w
            if abs(lead) < _SINGULAR_STEP_TOL:
                raise SingularStepError(f"implicit coefficient vanished at n={n}")
            zp = (lin * z - zm - w * zm) / lead
            if abs(zp) > _DIVERGENCE_LIMIT:
                raise DivergenceError(f"|x({n + 1})| exceeded {_DIVERGENCE_LIMIT}")
            values[n + 1] = zp
            zm, z = z, zp
    return Trajectory(dt=h, values=values)
