import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vacuumcf.numerics import (
    InvalidArgumentError,
    InvalidIntervalError,
    NonConvergenceError,
    PoleAtCError,
    QuadratureConfig,
    _kummer_terms,
    gaussian_integral,
    incomplete_gamma_upper,
    integrate_halfline,
    integrate_line,
    kummer_1f1,
    pochhammer,
)

from conftest import golden


def simpson_oracle(f, a, b, n=40001):
    """Fixed-step Simpson rule, independent of the adaptive integrator."""
    xs = np.linspace(a, b, n)
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-2:2] = 2.0
    return np.sum(w * f(xs)) * (xs[1] - xs[0]) / 3.0


def vacuum_fn(s):
    return np.pi**-0.25 * np.exp(-np.asarray(s, float) ** 2 / 2)


class TestIntegrateLine:
    def test_gaussian(self):
        res = integrate_line(lambda s: np.exp(-s * s), -20.0, 20.0)
        assert res.converged
        assert abs(res.value - math.sqrt(math.pi)) < 1e-9

    def test_zero_integrand(self):
        res = integrate_line(lambda s: np.zeros_like(s), 0.0, 1.0)
        assert res.value == 0

    def test_oscillatory_gaussian_vs_simpson_oracle(self):
        f = lambda s: np.exp(3j * s - 2 * s * s)
        res = integrate_line(f, -20.0, 20.0)
        assert abs(res.value - golden("gauss_alpha3_eps2")) < 1e-9
        assert abs(res.value - simpson_oracle(f, -20.0, 20.0)) < 1e-9

    def test_invalid_interval(self):
        with pytest.raises(InvalidIntervalError):
            integrate_line(lambda s: s, 1.0, 1.0)

    def test_nonconvergence_flag_keeps_estimate(self):
        cfg = QuadratureConfig(abs_tol=1e-16, rel_tol=1e-16, max_subdivisions=3)
        f = lambda s: np.abs(s - 0.3) ** 0.5
        res = integrate_line(f, -1.0, 1.0, cfg)
        assert not res.converged
        assert abs(res.value - simpson_oracle(f, -1, 1)) <= res.error_estimate

    def test_jump_discontinuity(self):
        # indicator of [0, 1] integrated over [-1, 2]
        f = lambda s: ((s >= 0) & (s <= 1)).astype(float)
        res = integrate_line(f, -1.0, 2.0, QuadratureConfig(abs_tol=1e-8, rel_tol=1e-8))
        assert abs(res.value - 1.0) < 1e-7

    def test_pure_function_bit_identical(self):
        f = lambda s: np.exp(1j * s - s * s)
        r1 = integrate_line(f, -5.0, 5.0)
        r2 = integrate_line(f, -5.0, 5.0)
        assert r1.value == r2.value and r1.evaluations == r2.evaluations


class TestIntegrateHalfline:
    def test_full_line_vacuum(self):
        res = integrate_halfline(vacuum_fn, -12.0, "+")
        assert abs(res.value - golden("int_phi_full_line")) < 1e-10

    def test_zero(self):
        res = integrate_halfline(lambda s: np.zeros_like(s), 0.0, "-")
        assert res.value == 0

    def test_full_line_exponential_kernel(self):
        # int e^{iz(s-w)} Phi(w) dw = sqrt(2) pi^(1/4) e^{isz - z^2/2}
        z, s = 1j, 0.0
        f = lambda w: np.exp(1j * z * (s - w)) * vacuum_fn(w)
        res = integrate_halfline(f, -12.0, "+")
        assert abs(res.value - golden("fullline_kernel_s0_z_i")) < 1e-9

    def test_bad_direction(self):
        with pytest.raises(InvalidArgumentError):
            integrate_halfline(vacuum_fn, 0.0, "up")


class TestGaussianIntegral:
    def test_alpha_zero(self):
        assert abs(gaussian_integral(0.0, 1.0) - math.sqrt(math.pi)) < 1e-15

    def test_theorem_value(self):
        # int e^{its - s^2} ds at t = 2
        assert abs(gaussian_integral(2.0, 1.0) - math.sqrt(math.pi) * math.exp(-1.0)) < 1e-14

    def test_complex_eps_vs_quadrature(self):
        eps = (1 - 1j) / 2
        want = integrate_line(lambda t: np.exp(3j * t - eps * t * t), -25.0, 25.0).value
        assert abs(gaussian_integral(3.0, eps) - want) < 1e-8

    def test_rejects_nonpositive_real_part(self):
        with pytest.raises(InvalidArgumentError):
            gaussian_integral(1.0, -1.0 + 2j)

    @pytest.mark.parametrize("eps", [0.25, 1.0, 2.0, (1 + 1j) / 2, (1 - 1j) / 2])
    @pytest.mark.parametrize("alpha", range(-5, 6))
    def test_matches_quadrature_grid(self, alpha, eps):
        got = integrate_line(lambda t: np.exp(1j * alpha * t - eps * t * t), -25.0, 25.0).value
        want = gaussian_integral(alpha, eps)
        assert abs(got - want) <= max(1e-8, 1e-6 * abs(want))


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer(2.3 + 1j, 0) == 1

    def test_factorial(self):
        assert pochhammer(1, 5) == 120

    def test_half_integer(self):
        # direct product oracle: (1/2)(3/2)(5/2)
        assert abs(pochhammer(0.5, 3) - 0.5 * 1.5 * 2.5) < 1e-15

    @given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
           st.integers(min_value=0, max_value=20))
    def test_recurrence(self, a, n):
        assert pochhammer(a, n + 1) == pochhammer(a, n) * (a + n)


class TestKummer1F1:
    def test_at_zero(self):
        assert kummer_1f1(2.7 - 1j, 0.5, 0.0) == 1

    def test_zero_numerator(self):
        for x in (0.1, 1.0, 7.5):
            assert kummer_1f1(0.0, 0.5, x) == 1

    def test_two_term_polynomial(self):
        # oracle: 1 + (-1)/(3/2) * 2 = -1/3
        want = 1 + pochhammer(-1, 1) / pochhammer(1.5, 1) * 2
        assert abs(kummer_1f1(-1, 1.5, 2.0) - want) < 1e-15
        assert abs(want - (-1 / 3)) < 1e-15

    def test_pole_at_c(self):
        with pytest.raises(PoleAtCError):
            kummer_1f1(1.0, -2.0, 0.5)

    def test_nonconvergence_raises(self):
        with pytest.raises(NonConvergenceError):
            kummer_1f1(1.0, 2.0, 300.0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=30),
           st.floats(min_value=0.3, max_value=5.0),
           st.floats(min_value=0.0, max_value=50.0))
    def test_polynomial_terminates_in_n_plus_one_terms(self, n, c, x):
        _, terms = _kummer_terms(complex(-n), complex(c), x, 1e-15, 500)
        assert terms == n + 1

    def test_against_series_partial_sum_oracle(self):
        y, c, x = 0.75, 1.25, 2.0
        total, term = 1.0, 1.0
        for k in range(200):
            term *= (y + k) / (c + k) * x / (k + 1)
            total += term
        assert abs(kummer_1f1(y, c, x) - total) < 1e-12


class TestIncompleteGamma:
    @pytest.mark.parametrize("b", [0.1, 0.5, 1.0, 2.0, 5.0])
    def test_a_one_elementary(self, b):
        assert abs(incomplete_gamma_upper(1.0, b) - math.exp(-b)) < 1e-11

    def test_exponential_integral_value(self):
        assert abs(incomplete_gamma_upper(0.0, 2.0) - golden("gamma_0_2").real) < 1e-10

    def test_divergence_toward_zero(self):
        assert incomplete_gamma_upper(0.0, 2 * 1e-3**2) > 10.0

    def test_monotone_decreasing_in_b(self):
        bs = [1e-6, 1e-4, 1e-2, 0.5, 1.0, 3.0, 8.0]
        vals = [incomplete_gamma_upper(0.0, b) for b in bs]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_rejects_nonpositive_b(self):
        with pytest.raises(InvalidArgumentError):
            incomplete_gamma_upper(0.0, 0.0)

    def test_against_defining_integral(self):
        # direct quadrature of t^{a-1} e^{-t} without the substitution
        for a, b in ((0.0, 0.7), (2.0, 1.3)):
            want = integrate_line(lambda t: t ** (a - 1) * np.exp(-t), b, b + 60.0).value.real
            assert abs(incomplete_gamma_upper(a, b) - want) < 1e-9


class TestQuadratureConfig:
    def test_validates(self):
        with pytest.raises(InvalidArgumentError):
            QuadratureConfig(radius=-1.0)
        with pytest.raises(InvalidArgumentError):
            QuadratureConfig(min_interval=20.0)
        with pytest.raises(InvalidArgumentError):
            QuadratureConfig(max_subdivisions=0)
