from __future__ import annotations

import multiprocessing as mp
import os
from concurrent.futures import ProcessPoolExecutor


def default_workers() -> int:
    return os.cpu_count() or 1


def split_range(start: int, count: int, chunks: int) -> list[tuple[int, int]]:
    """Cut [start, start+count) into at most ``chunks`` contiguous (start, count) pieces."""
    chunks = max(1, min(chunks, count))
    base, extra = divmod(count, chunks)
    out = []
    at = start
    for i in range(chunks):
        size = base + (1 if i < extra else 0)
        if size:
            out.append((at, size))
        at += size
    return out


def map_ordered(fn, jobs: list[tuple], workers: int | None) -> list:
    """Apply ``fn(*job)`` to every job; results come back in job order.

    The chunking is fixed by the caller, so merged results do not depend on
    how many workers ran them.
    """
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs)), mp_context=ctx) as pool:
        futures = [pool.submit(fn, *job) for job in jobs]
        return [f.result() for f in futures]
