from .pool import ShardedScan, resolve_workers, split_range
