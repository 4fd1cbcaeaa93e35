import unittest
import math
import random
from fractions import Fraction
from src.hilbertkit.exceptions import DomainError
from src.hilbertkit.kernels import KernelParams
from src.hilbertkit.special import (
    conjugate,
    log_gamma,
    log_gamma_ratio,
    log_beta,
    beta,
    log_binomial,
    best_constant,
    to_rational,
    format_rational,
)


class TestExponents(unittest.TestCase):

    def test_conjugate(self):
        exps = conjugate(2)
        self.assertEqual((exps.p, exps.q), (2.0, 2.0))
        exps = conjugate(3)
        self.assertAlmostEqual(exps.q, 1.5, places=15)
        self.assertAlmostEqual(1 / exps.p + 1 / exps.q, 1.0, places=15)
        swapped = exps.swapped()
        self.assertEqual((swapped.p, swapped.q), (exps.q, exps.p))

    def test_conjugate_domain(self):
        for bad in (1, 0.5, -2, math.inf, math.nan):
            with self.assertRaises(DomainError):
                conjugate(bad)


class TestGamma(unittest.TestCase):

    def test_log_gamma_against_lgamma(self):
        for x in (1e-3, 0.5, 1.0, 2.0, 3.7, 9.99, 10.0, 25.5, 1e3, 1e6):
            expected = math.lgamma(x)
            self.assertLess(abs(log_gamma(x) - expected), 1e-12 * max(1.0, abs(expected)), msg=f"x={x}")

    def test_log_gamma_domain(self):
        for bad in (0, -1.5, math.inf):
            with self.assertRaises(DomainError):
                log_gamma(bad)

    def test_log_gamma_ratio_close_arguments(self):
        # Gamma(x + 1/2) / Gamma(x) ~ sqrt(x) (1 - 1/(8x)) for large x
        x = 1e8
        ratio = log_gamma_ratio(x + 0.5, x)
        self.assertAlmostEqual(ratio, 0.5 * math.log(x) + math.log1p(-1 / (8 * x)), places=12)
        self.assertAlmostEqual(log_gamma_ratio(5, 3), math.log(12), places=13)

    def test_beta(self):
        self.assertAlmostEqual(beta(2, 3), 1 / 12, places=15)
        self.assertAlmostEqual(beta(0.5, 0.5), math.pi, places=13)
        self.assertAlmostEqual(beta(1.5, 1.5), math.pi / 8, places=14)
        self.assertAlmostEqual(log_beta(3, 4), math.log(1 / 60), places=13)
        with self.assertRaises(DomainError):
            beta(0, 1)

    def test_beta_recurrence(self):
        rng = random.Random(7)
        for _ in range(200):
            x, y = rng.uniform(0.05, 30.0), rng.uniform(0.05, 30.0)
            expected = beta(x, y) * x / (x + y)
            self.assertLess(abs(beta(x + 1, y) - expected), 1e-11 * expected, msg=f"x={x} y={y}")

    def test_log_binomial(self):
        self.assertAlmostEqual(log_binomial(10, 3), math.log(120), places=12)
        self.assertEqual(log_binomial(5, 0), 0.0)
        self.assertEqual(log_binomial(5, 5), 0.0)
        self.assertAlmostEqual(log_binomial(1000, 500), math.log(math.comb(1000, 500)), places=8)
        with self.assertRaises(DomainError):
            log_binomial(3, 4)
        with self.assertRaises(DomainError):
            log_binomial(-1, 0)


class TestBestConstant(unittest.TestCase):

    def test_known_constants(self):
        two = conjugate(2)
        self.assertLess(abs(best_constant(KernelParams(0, 0), two) - math.pi), 1e-10)
        self.assertLess(abs(best_constant(KernelParams(0, 1), two) - math.pi / 2), 1e-10)
        self.assertLess(abs(best_constant(KernelParams(1, 1), two) - math.pi / 8), 1e-10)

    def test_hilbert_constant_for_p(self):
        for p in (1.5, 3.0, 4.0):
            value = best_constant(KernelParams(0, 0), conjugate(p))
            self.assertAlmostEqual(value, math.pi / math.sin(math.pi / p), places=11)

    def test_region(self):
        with self.assertRaises(DomainError):
            best_constant(KernelParams(-0.5, 0), conjugate(2))
        with self.assertRaises(DomainError):
            best_constant(KernelParams(0, -0.8), conjugate(2))


class TestRational(unittest.TestCase):

    def test_to_rational(self):
        self.assertEqual(to_rational("1/64"), Fraction(1, 64))
        self.assertEqual(to_rational(" 0.015625 "), Fraction(1, 64))
        self.assertEqual(to_rational("3"), Fraction(3))
        self.assertEqual(to_rational(0.5), Fraction(1, 2))
        self.assertEqual(to_rational(Fraction(2, 4)), Fraction(1, 2))

    def test_to_rational_errors(self):
        for bad in ("1/0", "a/b", "one", math.inf, True, None):
            with self.assertRaises(DomainError):
                to_rational(bad)

    def test_round_trip(self):
        rng = random.Random(11)
        for _ in range(500):
            value = Fraction(rng.randint(-10**12, 10**12), rng.randint(1, 10**9))
            self.assertEqual(to_rational(format_rational(value)), value)
            self.assertEqual(to_rational(float(value)), Fraction(float(value)))

    def test_format_rational(self):
        self.assertEqual(format_rational(Fraction(3, 12)), "1/4")
        self.assertEqual(format_rational(Fraction(6, 3)), "2")


if __name__ == "__main__":
    unittest.main()
