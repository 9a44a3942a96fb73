"""
Partitioned sweeps over contiguous index ranges.

Each chunk is processed by a module-level function so that it can be shipped to a
process pool; results come back in chunk order, so merging them is independent of
scheduling.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, List, Optional, Tuple

logger = logging.getLogger('cyclic_weights.workers')


def default_workers() -> int:
    """Available parallelism."""
    return os.cpu_count() or 1


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous, non-empty ranges."""
    parts = max(1, min(parts, total))
    base, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + base + (1 if i < extra else 0)
        if stop > start:
            ranges.append((start, stop))
        start = stop
    return ranges


def run_partitioned(
    fn: Callable[..., Any],
    args: Tuple[Any, ...],
    total: int,
    workers: Optional[int] = None
) -> List[Any]:
    """
    Call fn(*args, start, stop) on each chunk of [0, total).

    Args:
        fn: Picklable module-level function
        args: Leading positional arguments shared by every chunk
        total: Size of the index space
        workers: Process count (None means available parallelism, 1 runs serially)

    Returns:
        Per-chunk results in chunk order
    """
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    chunks = split_range(total, workers)
    if workers == 1 or len(chunks) <= 1:
        return [fn(*args, start, stop) for start, stop in chunks]

    logger.info(f"Dispatching {len(chunks)} chunks of {total} to {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args, start, stop) for start, stop in chunks]
        return [future.result() for future in futures]
