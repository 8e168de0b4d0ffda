"""
Worker-count plumbing.  ``CASSELMAN_WORKERS`` (default 1) sets the number of
processes used by sample-parallel and pair-parallel runs; results are always
collected in input order, so output does not depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

__all__ = ["WORKERS_ENV", "worker_count", "pmap"]

WORKERS_ENV = "CASSELMAN_WORKERS"

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def pmap(fn: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """Ordered map, in a process pool when more than one worker is configured."""
    items = list(items)
    n = worker_count() if workers is None else max(1, workers)
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
