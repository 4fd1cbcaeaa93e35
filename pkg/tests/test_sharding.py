import unittest
import os
from src.hilbertkit.sharding import ShardedScan, resolve_workers, split_range
from src.hilbertkit.norms.estimators import _test_vector_rows


class TestSharding(unittest.TestCase):

    def test_split_range(self):
        self.assertEqual(split_range(0, 10, 3), [(0, 4), (4, 7), (7, 10)])
        self.assertEqual(split_range(1, 3, 8), [(1, 2), (2, 3)])
        self.assertEqual(split_range(5, 5, 4), [])
        shards = split_range(1, 1001, 7)
        self.assertEqual(shards[0][0], 1)
        self.assertEqual(shards[-1][1], 1001)
        for (_, hi), (lo, _) in zip(shards, shards[1:]):
            self.assertEqual(hi, lo)

    def test_resolve_workers(self):
        self.assertEqual(resolve_workers(3), 3)
        self.assertEqual(resolve_workers(0), os.cpu_count() or 1)
        with self.assertRaises(ValueError):
            resolve_workers(-1)

    def test_inline(self):
        scan = ShardedScan(lambda lo, hi, k: sum(range(lo, hi)) * k)
        self.assertEqual(list(scan.run(0, 5, 2)), [((0, 5), 20)])
        self.assertEqual(scan.collect(0, 5, 2), [20])

    def test_pool_order(self):
        args = (0.0, 1.0, 2.0, 2.0, 300)
        single = ShardedScan(_test_vector_rows).collect(0, 300, *args)
        pooled = ShardedScan(_test_vector_rows, threads=2, shards_per_worker=3).collect(0, 300, *args)
        self.assertEqual(len(pooled), 6)
        self.assertAlmostEqual(sum(pooled), single[0], delta=1e-12 * single[0])
        self.assertIn("threads=2", repr(ShardedScan(_test_vector_rows, threads=2)))


if __name__ == "__main__":
    unittest.main()
