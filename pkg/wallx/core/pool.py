"""Ordered process-pool map used by the enumeration-heavy commands.

Results always come back in input order, so output never depends on ``jobs``.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar


T = TypeVar("T")
R = TypeVar("R")

# Below this many items the pool start-up costs more than it saves.
MIN_PARALLEL_ITEMS = 64


def resolve_jobs(jobs: int | None) -> int:
    """0 means one worker per CPU; None or 1 runs in-process."""
    if jobs is None:
        return 1
    if jobs == 0:
        return os.cpu_count() or 1
    return max(1, jobs)


def ordered_map(fn: Callable[[T], R], items: Sequence[T], jobs: int | None = 1) -> list[R]:
    jobs = resolve_jobs(jobs)
    if jobs <= 1 or len(items) < MIN_PARALLEL_ITEMS:
        return [fn(item) for item in items]
    chunksize = max(1, len(items) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
