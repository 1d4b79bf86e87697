"""Deterministic work partitioning.

Kernels enumerate a fixed, sorted task list (slope-class pairs, point
pairs).  With ``workers`` > 1 the list is cut into contiguous chunks that
run in a process pool; partial aggregates are merged in chunk order, so
the result is bit-identical for every worker count.  If a pool cannot be
created (restricted sandboxes), chunks run sequentially with the same
merge order, which cannot change the output.
"""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def chunk_ranges(n_items: int, workers: int) -> list[tuple[int, int]]:
    """Contiguous [start, stop) ranges covering ``n_items``, one per chunk."""
    chunks = max(1, min(workers, n_items)) if n_items else 0
    if chunks == 0:
        return []
    base, extra = divmod(n_items, chunks)
    ranges = []
    start = 0
    for k in range(chunks):
        stop = start + base + (1 if k < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def run_chunks(fn: Callable[[T], R], tasks: Sequence[T], workers: int) -> list[R]:
    """Apply a picklable top-level function to each task, in task order.

    ``workers`` <= 1 runs inline; otherwise a process pool is attempted
    and silently degraded to inline execution when unavailable.
    """
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    try:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            return list(pool.map(fn, tasks))
    except (OSError, PermissionError, ValueError):
        return [fn(t) for t in tasks]
