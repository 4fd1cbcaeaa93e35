import unittest
import math
from fractions import Fraction
import numpy as np
from src.hilbertkit.exceptions import DomainError, QuadratureError
from src.hilbertkit.series import (
    SeriesParams,
    f_derivative,
    f_derivatives,
    g_derivative,
    g3_at_one,
    power_term_derivative,
    sign_conditions,
    periodic_bernoulli_integral,
    integral_one_to_infinity,
    euler_maclaurin_check,
    bernoulli_bracket_check,
)


EM_POINTS = ((1.5, 4.0, 3), (0.0, 2.0, 1), (2.0, 5.0, 2))


class TestDerivatives(unittest.TestCase):

    def test_power_term(self):
        # d/dt t^2 (t+1)^-1 = (t^2 + 2t) / (t+1)^2
        for t in (0.5, 1.0, 3.0):
            self.assertAlmostEqual(power_term_derivative(2, 1, 1, t, 1), (t * t + 2 * t) / (t + 1) ** 2, places=14)
        self.assertAlmostEqual(power_term_derivative(3, 0, 5, 2.0, 3), 6.0, places=14)
        self.assertEqual(power_term_derivative(1, 0, 1, 2.0, 2), 0.0)

    def test_vectorised(self):
        params = SeriesParams(1.5, 4.0, 3)
        t = np.array([1.0, 2.0, 5.0])
        values = f_derivative(params, t, 2)
        for k, tk in enumerate(t):
            self.assertAlmostEqual(values[k], f_derivative(params, float(tk), 2), places=15)

    def test_finite_differences(self):
        params = SeriesParams(1.5, 4.0, 3)
        h = 1e-5
        for t in (1.0, 2.5):
            for order in (0, 1, 2):
                numeric = (f_derivative(params, t + h, order) - f_derivative(params, t - h, order)) / (2 * h)
                exact = f_derivative(params, t, order + 1)
                self.assertAlmostEqual(numeric, exact, delta=1e-7 * max(1.0, abs(exact)))

    def test_split(self):
        for lam, s, n in EM_POINTS:
            values = f_derivatives(SeriesParams(lam, s, n), 1.7)
            self.assertLess(abs(values.split_residual), 1e-14 * max(1.0, abs(values.f2)))

    def test_g3_expansion(self):
        for lam, s, n in ((1.5, 4.0, 3), (1.2, 2.5, 1), (2.0, 5.0, 50)):
            params = SeriesParams(lam, s, n)
            direct = g_derivative(params, 1.0, 3)
            self.assertAlmostEqual(g3_at_one(params), direct, delta=1e-10 * abs(direct))

    def test_sign_conditions(self):
        for lam, s, n in ((1.5, 4.0, 3), (2.0, 5.0, 2), (1.25, 3.0, 10)):
            report = sign_conditions(SeriesParams(lam, s, n))
            self.assertTrue(report.passed, msg=str(report.location))
            self.assertEqual(report.details["points"], 25)


class TestBernoulliIntegral(unittest.TestCase):

    def test_basel(self):
        # f(t) = t^-2: pi^2/6 = 1 + 1/2 + 1/6 - 1/2 int_1^inf B2({t}) 6 t^-4 dt
        value, tail = periodic_bernoulli_integral(lambda t: 6.0 * t ** -4)
        self.assertAlmostEqual(value, (10 - math.pi ** 2) / 3, delta=1e-12)
        self.assertLess(tail, 1e-13)

    def test_constant_shift(self):
        base, _ = periodic_bernoulli_integral(lambda t: 6.0 * t ** -4)
        shifted, _ = periodic_bernoulli_integral(lambda t: 6.0 * t ** -4, constant=Fraction(1, 2), integral=2.0)
        self.assertAlmostEqual(shifted - base, 2.0 / 3, places=13)
        computed, _ = periodic_bernoulli_integral(lambda t: 6.0 * t ** -4, constant=Fraction(1, 2))
        self.assertAlmostEqual(computed, shifted, places=10)

    def test_panel_cap(self):
        with self.assertRaises(QuadratureError):
            periodic_bernoulli_integral(lambda t: t ** -2, max_panels=64)

    def test_quad_points_positive(self):
        for bad in (0, -3):
            with self.assertRaises(DomainError):
                periodic_bernoulli_integral(lambda t: 6.0 * t ** -4, quad_points=bad)
            with self.assertRaises(DomainError):
                euler_maclaurin_check(SeriesParams(1.5, 4.0, 3), quad_points=bad)

    def test_integral_one_to_infinity(self):
        # int_1^inf dt / (t+1)^2 = 1/2
        self.assertAlmostEqual(integral_one_to_infinity(SeriesParams(0.0, 2.0, 1)), 0.5, places=14)
        # int_1^inf t / (t+1)^3 = 3/8
        self.assertAlmostEqual(integral_one_to_infinity(SeriesParams(1.0, 3.0, 1)), 3 / 8, places=14)


class TestEulerMaclaurin(unittest.TestCase):

    def test_standard_constant(self):
        for lam, s, n in EM_POINTS:
            report = euler_maclaurin_check(SeriesParams(lam, s, n))
            self.assertTrue(report.passed, msg=f"({lam}, {s}, {n}) discrepancy {report.details.get('discrepancy')}")
            self.assertLessEqual(report.details["discrepancy"], 1e-8)
            self.assertIs(type(report.passed), bool)

    def test_half_constant(self):
        for lam, s, n in EM_POINTS:
            params = SeriesParams(lam, s, n)
            report = euler_maclaurin_check(params, constant=Fraction(1, 2))
            self.assertFalse(report.passed)
            discrepancy = report.details["discrepancy"]
            self.assertGreaterEqual(discrepancy, 1e-4)
            self.assertAlmostEqual(discrepancy, abs(f_derivative(params, 1.0, 1)) / 6, delta=1e-8)
            self.assertEqual(report.location, report.params)

    def test_quad_points(self):
        params = SeriesParams(1.5, 4.0, 3)
        coarse = euler_maclaurin_check(params, quad_points=12)
        fine = euler_maclaurin_check(params, quad_points=30)
        self.assertTrue(coarse.passed)
        self.assertAlmostEqual(coarse.rhs, fine.rhs, delta=1e-10)
        self.assertEqual(fine.params["quad_points"], 30)

    def test_bracket(self):
        for lam, s, n in ((1.5, 4.0, 3), (2.0, 5.0, 2), (1.25, 3.0, 10)):
            report = bernoulli_bracket_check(SeriesParams(lam, s, n))
            self.assertTrue(report.passed, msg=f"({lam}, {s}, {n}) location {report.location}")
            self.assertGreaterEqual(report.margin, 0)
            self.assertGreaterEqual(report.details["h_margin"], 0)
            self.assertIs(type(report.passed), bool)


if __name__ == "__main__":
    unittest.main()
