import unittest
import math
import numpy as np
from src.hilbertkit.exceptions import DomainError
from src.hilbertkit.special import conjugate, best_constant
from src.hilbertkit.kernels import KernelParams, HomogeneousKernel
from src.hilbertkit.norms import (
    TruncatedMatrix,
    power_iteration_lower_bound,
    schur_column_check,
    schur_row_check,
    schur_certify,
)
# imported as a module so the test runner does not collect the estimator itself
from src.hilbertkit.norms import estimators


PARAMETER_SETS = ((0, 0, 2), (0, 1, 2), (1, 1, 2), (2, 2, 2), (1, 0, 3))
SCHUR_SETS = PARAMETER_SETS + ((0, 1, 3), (2, 0, 1.5))


class TestTruncatedMatrix(unittest.TestCase):

    def test_entries(self):
        matrix = TruncatedMatrix(KernelParams(0, 0), 4)
        self.assertFalse(matrix.streamed)
        dense = matrix.to_dense()
        self.assertEqual(dense.shape, (4, 4))
        self.assertAlmostEqual(dense[0, 0], 1 / 2, places=15)
        self.assertAlmostEqual(dense[2, 3], 1 / 7, places=15)

    def test_streamed_products(self):
        params = KernelParams(0.5, 1)
        rng = np.random.default_rng(7)
        x = rng.random(100)
        dense = TruncatedMatrix(params, 100)
        streamed = TruncatedMatrix(params, 100, dense_limit=10, row_block=7)
        self.assertTrue(streamed.streamed)
        self.assertTrue(np.allclose(dense.matvec(x), streamed.matvec(x), rtol=1e-13, atol=0))
        self.assertTrue(np.allclose(dense.rmatvec(x), streamed.rmatvec(x), rtol=1e-13, atol=0))
        self.assertTrue(np.array_equal(dense.to_dense(), streamed.to_dense()))

    def test_block_size(self):
        for size in (10_000, 100_000, 3_000_000):
            matrix = TruncatedMatrix(KernelParams(0, 0), size)
            self.assertTrue(matrix.streamed)
            self.assertGreaterEqual(matrix.row_block, 1)
            self.assertLessEqual(matrix.row_block * size, max(estimators.BLOCK_ELEMENTS, size))
        self.assertEqual(estimators.rows_per_block(100_000), 10)
        self.assertEqual(estimators.rows_per_block(2 * estimators.BLOCK_ELEMENTS), 1)

    def test_streamed_default_block(self):
        params = KernelParams(0, 1)
        x = np.linspace(1.0, 2.0, 300)
        dense = TruncatedMatrix(params, 300)
        streamed = TruncatedMatrix(params, 300, dense_limit=10)
        self.assertTrue(np.allclose(dense.matvec(x), streamed.matvec(x), rtol=1e-13, atol=0))

    def test_size(self):
        with self.assertRaises(DomainError):
            TruncatedMatrix(KernelParams(0, 0), 0)


class TestPowerIteration(unittest.TestCase):

    def test_spectral_oracle(self):
        for alpha, beta_ in ((0, 0), (0, 1), (1, 1)):
            params = KernelParams(alpha, beta_)
            estimate = power_iteration_lower_bound(params, conjugate(2), 128, tol=1e-12)
            oracle = np.linalg.norm(TruncatedMatrix(params, 128).to_dense(), 2)
            self.assertLess(abs(estimate.value - oracle) / oracle, 1e-8, msg=f"({alpha}, {beta_})")
            self.assertTrue(estimate.converged)

    def test_below_best_constant(self):
        for alpha, beta_, p in PARAMETER_SETS:
            params, exps = KernelParams(alpha, beta_), conjugate(p)
            best = best_constant(params, exps)
            estimate = power_iteration_lower_bound(params, exps, 1024)
            self.assertLessEqual(estimate.value, best + 1e-9)
            self.assertGreater(estimate.value, 0.5 * best)
            self.assertGreaterEqual(estimate.value, estimators.test_vector_lower_bound(params, exps, 1024))

    def test_history_nondecreasing(self):
        estimate = power_iteration_lower_bound(KernelParams(1, 0), conjugate(3), 256)
        self.assertEqual(len(estimate.history), estimate.iterations)
        for previous, current in zip(estimate.history, estimate.history[1:]):
            self.assertGreaterEqual(current, previous * (1 - 1e-12))
        self.assertEqual(estimate.value, max(estimate.history))

    def test_truncation_monotone(self):
        params, exps = KernelParams(0, 1), conjugate(2)
        values = [power_iteration_lower_bound(params, exps, n, tol=1e-12).value for n in (64, 128, 256, 512, 1024)]
        for small, large in zip(values, values[1:]):
            self.assertGreaterEqual(large, small - 1e-10)
        self.assertLess(values[-1], math.pi / 2)

    def test_iteration_cap(self):
        with self.assertLogs("src.hilbertkit.norms.estimators", level="WARNING"):
            estimate = power_iteration_lower_bound(KernelParams(0, 0), conjugate(2), 64, tol=1e-300, max_iter=3)
        self.assertFalse(estimate.converged)
        self.assertEqual(estimate.iterations, 3)

    def test_arguments(self):
        with self.assertRaises(DomainError):
            power_iteration_lower_bound(KernelParams(0, 0), conjugate(2), 16, tol=0)
        with self.assertRaises(DomainError):
            power_iteration_lower_bound(KernelParams(0, 0), conjugate(2), 16, max_iter=0)


class TestTestVector(unittest.TestCase):

    def test_bounds(self):
        for alpha, beta_, p in PARAMETER_SETS:
            params, exps = KernelParams(alpha, beta_), conjugate(p)
            best = best_constant(params, exps)
            value = estimators.test_vector_lower_bound(params, exps, 10_000)
            self.assertLessEqual(value, best + 1e-9)
            self.assertGreaterEqual(value, 0.6 * best, msg=f"({alpha}, {beta_}, {p})")

    def test_truncation_monotone(self):
        params, exps = KernelParams(0, 0), conjugate(2)
        values = [estimators.test_vector_lower_bound(params, exps, n) for n in (16, 128, 1024)]
        self.assertLess(values[0], values[1])
        self.assertLess(values[1], values[2])

    def test_threads(self):
        params, exps = KernelParams(0, 1), conjugate(2)
        single = estimators.test_vector_lower_bound(params, exps, 3000)
        pooled = estimators.test_vector_lower_bound(params, exps, 3000, threads=2)
        self.assertAlmostEqual(single, pooled, places=12)

    def test_region(self):
        with self.assertRaises(DomainError):
            estimators.test_vector_lower_bound(KernelParams(-0.5, 0), conjugate(2), 10)
        with self.assertRaises(DomainError):
            estimators.test_vector_lower_bound(KernelParams(0, 0), conjugate(2), 0)


class TestSchur(unittest.TestCase):

    def test_column_checks(self):
        for alpha, beta_, p in SCHUR_SETS:
            params, exps = KernelParams(alpha, beta_), conjugate(p)
            kernel = HomogeneousKernel(params)
            best = best_constant(params, exps)
            for j in range(1, 51):
                report = schur_column_check(kernel, exps, j)
                self.assertTrue(report.passed, msg=f"({alpha}, {beta_}, {p}) column {j}")
                self.assertLessEqual(report.certified_sum_upper, best * (1 + 1e-12))
                self.assertLessEqual(report.certified_sum_lower, report.certified_sum_upper)

    def test_column_sum_value(self):
        # j = 1, alpha = beta = 0, p = 2: sum_i i^(-1/2) / (i+1)
        report = schur_column_check(HomogeneousKernel(KernelParams(0, 0)), conjugate(2), 1)
        partial = math.fsum(i ** -0.5 / (i + 1) for i in range(1, 200_001))
        self.assertLess(partial, report.certified_sum_upper)
        self.assertAlmostEqual(report.target_k, math.pi, places=12)
        self.assertGreater(report.margin, 0)

    def test_row_check(self):
        kernel = HomogeneousKernel(KernelParams(1, 0))
        report = schur_row_check(kernel, conjugate(3), 4)
        self.assertEqual(report.side, "row")
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.target_k, best_constant(KernelParams(1, 0), conjugate(3)), places=14)

    def test_certify(self):
        report = schur_certify(KernelParams(0, 1), conjugate(2), 10)
        self.assertTrue(report.passed)
        self.assertEqual(report.name, "schur_test")
        self.assertIsNone(report.location)
        self.assertIn(report.details["tightest"]["side"], ("column", "row"))

    def test_column_domain(self):
        with self.assertRaises(DomainError):
            schur_column_check(HomogeneousKernel(KernelParams(0, 0)), conjugate(2), 0)
        with self.assertRaises(DomainError):
            schur_column_check(HomogeneousKernel(KernelParams(-0.6, 0)), conjugate(2), 1)


if __name__ == "__main__":
    unittest.main()
