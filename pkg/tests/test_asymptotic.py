import numpy as np
import pytest

from renormdiff.asymptotic import (
    GlobalSolution,
    assemble_modes,
    third_harmonic_coefficient,
)
from renormdiff.lineardiff import (
    RootConvention,
    SchemeParams,
    characteristic_roots,
)
from renormdiff.perturbation import (
    CUBIC,
    VAN_DER_POL,
    AmplitudePair,
    van_der_pol,
    zeroth_order,
)
from renormdiff.renormalization import KappaConvention

FIRST = RootConvention.FIRST_ORDER
EXACT = RootConvention.EXACT_UNIT_MODULUS


def params(dt, eps=0.0, convention=FIRST):
    return SchemeParams(dt=dt, eps=eps, root_convention=convention)


class TestThirdHarmonicCoefficient:
    @pytest.mark.parametrize("convention", [FIRST, EXACT])
    def test_cubic_matches_denominator_formula(self, convention):
        dt = 0.1
        p = params(dt, eps=0.05, convention=convention)
        lam, _ = characteristic_roots(p)
        expected = -(dt**2) / (lam**3 + lam**-3 - 2 + dt * dt)
        assert third_harmonic_coefficient(CUBIC, p) == pytest.approx(expected, rel=1e-12)

    def test_vdp_matches_denominator_formula(self):
        dt = 0.1
        p = params(dt, eps=0.05)
        lam, _ = characteristic_roots(p)
        s = lam - 1 / lam
        expected = -dt * s / (lam**3 + lam**-3 - 2 + dt * dt)
        assert third_harmonic_coefficient(VAN_DER_POL, p) == pytest.approx(
            expected, rel=1e-12
        )

    def test_small_dt_limits(self):
        p = params(0.001, eps=0.01)
        assert third_harmonic_coefficient(CUBIC, p) == pytest.approx(0.125, rel=2e-3)
        assert third_harmonic_coefficient(VAN_DER_POL, p) == pytest.approx(
            0.25j, rel=2e-3
        )

    def test_halving_halves_vdp_coefficient(self):
        p = params(0.1, eps=0.05)
        full = third_harmonic_coefficient(VAN_DER_POL, p)
        half = third_harmonic_coefficient(van_der_pol(halving=True), p)
        assert half == pytest.approx(0.5 * full, rel=1e-12)


class TestCubicSolution:
    def test_value_at_origin(self):
        dt, eps, a0 = 0.1, 0.05, 0.5
        p = params(dt, eps=eps)
        sol = GlobalSolution(CUBIC, p, a0)
        k3 = third_harmonic_coefficient(CUBIC, p)
        expected = 1.0 + eps * 2.0 * (k3 * a0**3).real
        assert sol.eval_discrete(0) == pytest.approx(expected, rel=1e-12)

    def test_eps_zero_reduces_to_homogeneous(self):
        p = params(0.1, eps=0.0)
        sol = GlobalSolution(CUBIC, p, 0.3 + 0.2j)
        z0 = zeroth_order(AmplitudePair.conjugate_pair(0.3 + 0.2j), p)
        n = np.arange(200)
        assert np.allclose(sol.eval_discrete(n), z0.evaluate(n).real, atol=1e-12)

    def test_waveform_exactly_periodic(self):
        p = params(0.1, eps=0.05)
        sol = GlobalSolution(CUBIC, p, 0.5)
        period = 2 * np.pi / sol.frequency_shift()
        for t in (0.0, 1.7, 300.0):
            assert sol.eval_continuum_waveform(t + period) == pytest.approx(
                sol.eval_continuum_waveform(t), abs=1e-10
            )

    def test_waveform_eps_zero_is_cosine(self):
        p = params(0.1, eps=0.0)
        sol = GlobalSolution(CUBIC, p, 0.5)
        t = np.linspace(0.0, 20.0, 500)
        assert np.allclose(sol.eval_continuum_waveform(t), np.cos(t), atol=1e-12)

    def test_discrete_converges_to_waveform(self):
        # with the first-order roots the gap over a fixed horizon shrinks at
        # least linearly in dt (the modulus factor (1+dt^2)^(n/2) dominates)
        eps, a0 = 0.05, 0.5
        gaps = []
        for dt in (0.02, 0.01):
            p = params(dt, eps=eps, convention=FIRST)
            sol = GlobalSolution(CUBIC, p, a0)
            n = np.arange(int(20 / dt) + 1)
            gap = np.abs(sol.eval_discrete(n) - sol.eval_continuum_waveform(n * dt))
            gaps.append(gap.max())
        assert gaps[0] / gaps[1] >= 1.7

    def test_evaluations_real(self):
        # the assembled value is twice the real part of a half-sum by
        # construction; check against an explicitly conjugated assembly
        dt, eps, a0 = 0.05, 0.03, 0.4 - 0.3j
        p = params(dt, eps=eps)
        sol = GlobalSolution(CUBIC, p, a0)
        lam, lam_m = characteristic_roots(p)
        k3 = third_harmonic_coefficient(CUBIC, p)
        n = np.arange(0, 3000, 113)
        amp = sol.amplitude_at(n * dt)
        two_sided = (
            amp * lam**n
            + np.conj(amp) * lam_m**n
            + eps * (k3 * amp**3 * lam ** (3 * n) + np.conj(k3 * amp**3) * lam_m ** (3 * n))
        )
        assert np.max(np.abs(two_sided.imag)) <= 1e-10 * max(1.0, np.max(np.abs(two_sided.real)))
        assert np.allclose(sol.eval_discrete(n), two_sided.real, rtol=1e-9, atol=1e-9)


class TestFrequencyShift:
    def test_zero_eps(self):
        assert GlobalSolution(CUBIC, params(0.1, eps=0.0), 0.5).frequency_shift() == 1.0

    def test_reference_value(self):
        sol = GlobalSolution(CUBIC, params(0.1, eps=0.05), 0.5)
        assert sol.frequency_shift() == pytest.approx(1.01875)

    def test_zero_amplitude(self):
        sol = GlobalSolution(CUBIC, params(0.1, eps=0.05), 0.0)
        assert sol.frequency_shift() == 1.0

    def test_wrong_kind_rejected(self):
        sol = GlobalSolution(VAN_DER_POL, params(0.1, eps=0.05), 0.2)
        with pytest.raises(ValueError):
            sol.frequency_shift()


class TestVdpSolution:
    def test_requires_nonzero_real_part(self):
        with pytest.raises(ValueError):
            GlobalSolution(VAN_DER_POL, params(0.1, eps=0.05), 0.5j)

    def test_amplitude_matches_at_time_zero(self):
        a0 = 0.1 * (1 + 2j) / np.sqrt(5)
        sol = GlobalSolution(VAN_DER_POL, params(0.01, eps=0.05), a0)
        assert sol.amplitude_at(0.0) == pytest.approx(a0, rel=1e-12)
        assert sol.fundamental_amplitude(0.0) == pytest.approx(2 * abs(a0), rel=1e-12)

    def test_limit_amplitude_two_under_squared_convention(self):
        a0 = 0.1 * (1 + 2j) / np.sqrt(5)
        sol = GlobalSolution(VAN_DER_POL, params(0.01, eps=0.05), a0)
        assert sol.fundamental_amplitude(400.0) == pytest.approx(2.0, rel=1e-6)

    def test_limit_amplitude_off_under_linear_convention(self):
        a0 = 0.1 * (1 + 2j) / np.sqrt(5)  # component ratio c = 2
        sol = GlobalSolution(
            VAN_DER_POL,
            params(0.01, eps=0.05),
            a0,
            kappa_convention=KappaConvention.ONE_PLUS_C,
        )
        limit = sol.fundamental_amplitude(400.0)
        assert limit == pytest.approx(2 * np.sqrt(5.0 / 3.0), rel=1e-6)
        assert abs(limit - 2.0) > 0.5

    def test_waveform_third_harmonic_demodulates(self):
        # once the envelope has saturated, projecting the waveform onto
        # e^{3it} over whole periods recovers eps * kappa3 * A^3
        p = params(0.01, eps=0.05)
        sol = GlobalSolution(VAN_DER_POL, p, 0.9)
        t0 = 300.0
        t = np.linspace(t0, t0 + 8 * np.pi, 16001)
        wave = sol.eval_continuum_waveform(t)
        projected = np.trapezoid(wave * np.exp(-3j * t), t) / (8 * np.pi)
        amp = sol.amplitude_at(t0)
        expected = p.eps * third_harmonic_coefficient(VAN_DER_POL, p) * amp**3
        assert projected == pytest.approx(expected, rel=5e-3)

    def test_waveform_amplitude_saturates_at_two(self):
        # max of the waveform over one period at t = 10/eps; the third
        # harmonic sits in quadrature at the fundamental's peak, so it barely
        # moves the maximum
        eps = 0.05
        p = params(0.01, eps=eps)
        sol = GlobalSolution(VAN_DER_POL, p, 0.1)
        t0 = 10.0 / eps
        t = np.linspace(t0, t0 + 2 * np.pi, 4001)
        peak = np.abs(sol.eval_continuum_waveform(t)).max()
        assert peak == pytest.approx(2.0, rel=0.01)

    def test_halving_slows_envelope_growth(self):
        a0 = 0.1
        fast = GlobalSolution(VAN_DER_POL, params(0.01, eps=0.05), a0)
        slow = GlobalSolution(van_der_pol(halving=True), params(0.01, eps=0.05), a0)
        t = 30.0
        assert slow.fundamental_amplitude(t) < fast.fundamental_amplitude(t)
        # halving eps is the same as halving the rate
        matched = GlobalSolution(VAN_DER_POL, params(0.01, eps=0.025), a0)
        assert slow.fundamental_amplitude(t) == pytest.approx(
            matched.fundamental_amplitude(t), rel=1e-12
        )


class TestAssembleModes:
    def test_matches_global_solution_with_constant_amplitude(self):
        p = params(0.1, eps=0.0)
        a0 = 0.3 + 0.1j
        sol = GlobalSolution(CUBIC, p, a0)
        n = np.arange(50)
        assembled = assemble_modes(CUBIC, p, np.full(n.size, a0), n)
        assert np.allclose(assembled, sol.eval_discrete(n), atol=1e-12)

    def test_scalar_input(self):
        p = params(0.1, eps=0.02)
        out = assemble_modes(CUBIC, p, 0.5 + 0j, 0)
        assert isinstance(out, float)
