import logging
import os
from concurrent import futures
from typing import Any, Callable, Iterator

logger = logging.getLogger(__name__)


def resolve_workers(threads: int) -> int:
    """
    Args:
        threads (int): requested worker count, 0 for one per cpu

    Raises:
        ValueError: negative thread count

    Returns:
        int: worker count, at least 1
    """
    if threads < 0:
        raise ValueError(f"threads must be >= 0, got {threads}")
    if threads == 0:
        return os.cpu_count() or 1
    return threads


def split_range(start: int, stop: int, shards: int) -> list[tuple[int, int]]:
    """Split the half-open range [start, stop) into contiguous shards of near-equal size.

    Args:
        start (int): first index
        stop (int): one past the last index
        shards (int): number of shards wanted

    Returns:
        list[tuple[int, int]]: half-open (lo, hi) pairs in ascending order, none empty
    """
    total = stop - start
    if total <= 0:
        return []
    shards = max(1, min(shards, total))
    size, extra = divmod(total, shards)
    out = []
    lo = start
    for k in range(shards):
        hi = lo + size + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


class ShardedScan:
    worker: Callable[..., Any]
    threads: int
    shards_per_worker: int

    def __init__(self, worker: Callable[..., Any], threads: int = 1, shards_per_worker: int = 4):
        """Run a range worker over contiguous shards of an index range.

        The worker is called as worker(lo, hi, *args) and must be a module-level
        function so it can be sent to a process pool.

        Args:
            worker (Callable[..., Any]): shard function
            threads (int, optional): worker processes, 0 for one per cpu, 1 runs inline. Defaults to 1.
            shards_per_worker (int, optional): shards submitted per process. Defaults to 4.
        """
        self.worker = worker
        self.threads = resolve_workers(threads)
        self.shards_per_worker = max(1, shards_per_worker)

    def __repr__(self):
        return f"{self.__class__.__name__}(worker={self.worker.__name__}, threads={self.threads})"

    def run(self, start: int, stop: int, *args) -> Iterator[tuple[tuple[int, int], Any]]:
        """scan [start, stop)

        yields:
            Iterator[tuple[tuple[int, int], Any]]: ((lo, hi), result) per shard as completed.
                Completion order is not deterministic when threads > 1; callers merge.
        """
        if self.threads == 1:
            for lo, hi in split_range(start, stop, 1):
                yield (lo, hi), self.worker(lo, hi, *args)
            return

        shards = split_range(start, stop, self.threads * self.shards_per_worker)
        logger.debug("scanning [%d, %d) in %d shards on %d processes", start, stop, len(shards), self.threads)
        flist = dict()
        with futures.ProcessPoolExecutor(max_workers=self.threads) as executor:
            for lo, hi in shards:
                flist[executor.submit(self.worker, lo, hi, *args)] = (lo, hi)
            for fr in futures.as_completed(flist):
                yield flist[fr], fr.result()

    def collect(self, start: int, stop: int, *args) -> list[Any]:
        """
        Returns:
            list[Any]: shard results ordered by shard start
        """
        results = sorted(self.run(start, stop, *args), key=lambda item: item[0][0])
        return [r for _, r in results]
