import unittest
import math
import random
import mpmath
import numpy as np
from src.hilbertkit.exceptions import CertificationError, DivergenceError, DomainError
from src.hilbertkit.series import (
    SeriesParams,
    CertifiedValue,
    TailMethod,
    certified_sum,
    certify_below,
    partial_sum,
    tail_integral,
    verify_beta_series_bound,
    verify_linear_series_bound,
)
from src.hilbertkit.series.summation import convexity_threshold, decreasing_threshold


def hurwitz_value(lam: int, s: float, n: int) -> float:
    """sum_{m>=1} m^lam / (m+n)^s for integer lam >= 0 through (m+n-n)^lam and Hurwitz zeta"""
    with mpmath.workdps(40):
        total = mpmath.mpf(0)
        for k in range(lam + 1):
            total += mpmath.binomial(lam, k) * (-n) ** (lam - k) * mpmath.zeta(s - k, n + 1)
        return float(total)


def euler_maclaurin_value(lam: float, s: float, n: int) -> float:
    """sum_{m>=1} m^lam / (m+n)^s for any real lam through mpmath's Euler-Maclaurin summation"""
    with mpmath.workdps(30):
        return float(mpmath.nsum(lambda m: m ** lam / (m + n) ** s, [1, mpmath.inf], method="euler-maclaurin"))


class TestSeriesParams(unittest.TestCase):

    def test_divergence(self):
        with self.assertRaises(DivergenceError):
            SeriesParams(1.0, 2.0, 1)
        with self.assertRaises(DomainError):
            SeriesParams(0.0, 0.5, 3)
        with self.assertRaises(DomainError):
            SeriesParams(0.0, 2.0, 0)

    def test_thresholds(self):
        self.assertEqual(convexity_threshold(SeriesParams(0.0, 2.0, 5)), 0.0)
        self.assertEqual(convexity_threshold(SeriesParams(-0.5, 2.0, 5)), 0.0)
        self.assertEqual(decreasing_threshold(SeriesParams(-0.5, 2.0, 5)), 0.0)
        params = SeriesParams(2.0, 4.0, 100)
        self.assertAlmostEqual(decreasing_threshold(params), 100.0, places=12)
        self.assertGreater(convexity_threshold(params), decreasing_threshold(params))


class TestCertifiedSum(unittest.TestCase):

    def test_hurwitz_enclosures(self):
        for lam, s, n in ((0, 2.0, 1), (1, 3.0, 1), (1, 3.0, 5), (2, 4.0, 3), (2, 5.0, 100), (0, 1.5, 7)):
            params = SeriesParams(float(lam), s, n)
            value = certified_sum(params)
            expected = hurwitz_value(lam, s, n)
            self.assertTrue(value.contains(expected), msg=f"{params}: {expected} not in [{value.lower}, {value.upper}]")
            self.assertEqual(value.tail_method, TailMethod.MIDPOINT_CONVEX)

    def test_zeta_difference(self):
        # s = 3, n = 1: zeta(2) - zeta(3)
        value = certified_sum(SeriesParams(1.0, 3.0, 1))
        expected = float(mpmath.zeta(2) - mpmath.zeta(3))
        self.assertTrue(value.contains(expected))
        self.assertAlmostEqual(expected, 0.442877, places=6)
        self.assertLess(value.upper, 0.5)
        self.assertLess(value.width, 1e-8)

    def test_random_enclosures(self):
        rng = random.Random(20240611)
        for _ in range(40):
            lam = rng.choice((0, 1, 2, 3))
            s = lam + 1 + rng.uniform(0.3, 4.0)
            n = rng.randint(1, 500)
            params = SeriesParams(float(lam), s, n)
            value = certified_sum(params, budget=rng.choice((64, 256, 1024)))
            self.assertTrue(value.contains(hurwitz_value(lam, s, n)), msg=str(params))

    def test_fractional_lambda_enclosures(self):
        for lam, s, n in ((0.5, 3.0, 1), (1.5, 4.2, 7), (-0.5, 1.3, 2), (2.3, 5.0, 50), (0.25, 2.0, 100)):
            params = SeriesParams(lam, s, n)
            value = certified_sum(params)
            expected = euler_maclaurin_value(lam, s, n)
            self.assertTrue(value.contains(expected), msg=f"{params}: {expected} not in [{value.lower}, {value.upper}]")

    def test_budget_tightens(self):
        slack = 4 * np.finfo(np.float64).eps
        for params in (SeriesParams(0.5, 3.0, 1), SeriesParams(2.0, 4.0, 100), SeriesParams(-0.5, 1.3, 2)):
            previous = None
            for budget in (16, 64, 256, 1024, 4096, 16384):
                value = certified_sum(params, budget=budget)
                if previous is not None:
                    self.assertGreaterEqual(value.lower, previous.lower * (1 - slack), msg=f"{params} budget {budget}")
                    self.assertLessEqual(value.upper, previous.upper * (1 + slack), msg=f"{params} budget {budget}")
                previous = value

    def test_tail_methods(self):
        self.assertEqual({m.value for m in TailMethod}, {"integral-comparison", "midpoint-convex", "none"})

    def test_integral_comparison(self):
        params = SeriesParams(1.0, 3.0, 5)
        crude = certified_sum(params, tail_method=TailMethod.INTEGRAL_COMPARISON)
        fine = certified_sum(params)
        self.assertEqual(crude.tail_method, TailMethod.INTEGRAL_COMPARISON)
        self.assertLessEqual(crude.lower, partial_sum(params, crude.terms_summed))
        self.assertLessEqual(crude.lower, fine.lower)
        self.assertGreaterEqual(crude.upper, fine.upper)
        self.assertTrue(crude.contains(hurwitz_value(1, 3.0, 5)))

    def test_negative_lambda(self):
        # lam <= -1 falls back to the integral comparison tail
        params = SeriesParams(-1.5, 1.0, 2)
        value = certified_sum(params)
        self.assertEqual(value.tail_method, TailMethod.INTEGRAL_COMPARISON)
        partial = math.fsum(m ** -1.5 / (m + 2) for m in range(1, 50_001))
        self.assertGreater(value.upper, partial)
        self.assertGreaterEqual(value.lower, 0.0)

    def test_no_tail(self):
        params = SeriesParams(0.0, 2.0, 1)
        value = certified_sum(params, budget=10, tail_method=TailMethod.NONE)
        self.assertEqual(value.lower, value.upper)
        self.assertEqual(value.terms_summed, 10)
        self.assertAlmostEqual(value.upper, math.fsum(1 / (m + 1) ** 2 for m in range(1, 11)), places=15)

    def test_tail_integral(self):
        # int_10^inf dt / (t+1)^2 = 1/11
        self.assertAlmostEqual(tail_integral(SeriesParams(0.0, 2.0, 1), 10), 1 / 11, places=15)
        with self.assertRaises(DomainError):
            tail_integral(SeriesParams(-1.5, 1.0, 1), 10)

    def test_budget(self):
        with self.assertRaises(DomainError):
            certified_sum(SeriesParams(0.0, 2.0, 1), budget=0)

    def test_enclosure_type(self):
        with self.assertRaises(CertificationError):
            CertifiedValue(2.0, 1.0, 1, TailMethod.NONE)
        value = CertifiedValue(1.0, 2.0, 1, TailMethod.NONE)
        self.assertEqual(value.midpoint, 1.5)
        self.assertEqual(value.width, 1.0)
        self.assertTrue(value.contains(1.0))
        self.assertFalse(value.contains(2.5))


class TestCertifyBelow(unittest.TestCase):

    def test_decides(self):
        params = SeriesParams(1.0, 3.0, 1)
        value = certify_below(params, 0.5)
        self.assertLessEqual(value.upper, 0.5)
        value = certify_below(params, 0.44)
        self.assertGreater(value.lower, 0.44)

    def test_escalates(self):
        params = SeriesParams(0.0, 2.0, 1)
        target = hurwitz_value(0, 2.0, 1) + 1e-9
        value = certify_below(params, target, budget=16)
        self.assertLessEqual(value.upper, target)
        self.assertGreater(value.terms_summed, 16)

    def test_strict(self):
        params = SeriesParams(0.0, 2.0, 1)
        target = hurwitz_value(0, 2.0, 1)
        with self.assertRaises(CertificationError):
            certify_below(params, target, budget=16, max_budget=16, strict=True)
        with self.assertLogs("src.hilbertkit.series.summation", level="WARNING"):
            value = certify_below(params, target, budget=16, max_budget=16)
        self.assertTrue(value.contains(target))


class TestInequalities(unittest.TestCase):

    def test_inequality_grid(self):
        for lam in (-0.5, 0.0, 0.5, 1.0, 1.5, 2.0):
            s = lam + 1.25
            while s <= 5:
                for n in (1, 2, 7, 30, 100):
                    report = verify_beta_series_bound(SeriesParams(lam, s, n))
                    self.assertTrue(report.passed, msg=f"lambda={lam} s={s} n={n} margin={report.margin}")
                    self.assertTrue(report.details["decided"])
                s += 0.25

    def test_integer_lambda_two(self):
        report = verify_beta_series_bound(SeriesParams(2.0, 4.0, 100))
        self.assertTrue(report.passed)
        self.assertGreater(report.margin, 0)
        self.assertLess(report.margin / report.rhs, 1e-6)

    def test_inequality_report(self):
        report = verify_beta_series_bound(SeriesParams(1.0, 3.0, 2))
        self.assertEqual(report.name, "beta_series_bound")
        self.assertEqual(report.params, {"lambda": 1.0, "s": 3.0, "n": 2})
        self.assertAlmostEqual(report.rhs, 1 / 4, places=14)
        self.assertIsNone(report.location)
        with self.assertRaises(DomainError):
            verify_beta_series_bound(SeriesParams(-1.0, 2.0, 1))

    def test_lambda_one(self):
        for s in (2.1, 2.5, 3.0, 4.0, 5.0, 10.0):
            for n in (1, 2, 10, 100, 1000):
                report = verify_linear_series_bound(s, n)
                self.assertTrue(report.passed, msg=f"s={s} n={n}")
        report = verify_linear_series_bound(3.0, 1)
        self.assertEqual(report.rhs, 0.5)
        self.assertLess(report.details["lower"], 0.442878)
        self.assertGreater(report.details["upper"], 0.442877)

    def test_lambda_one_domain(self):
        with self.assertRaises(DomainError):
            verify_linear_series_bound(2.0, 1)


if __name__ == "__main__":
    unittest.main()
