"""Worker pool helpers for embarrassingly parallel sweeps."""
from __future__ import annotations

import os
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import Any

import psutil

from neumannx.constants import WORKERS_ENV_VAR

__all__ = ["default_worker_count", "parallel_map"]


def default_worker_count() -> int:
    """Return the number of workers used for sweeps.

    The environment variable ``NEUMANNX_WORKERS`` takes precedence, otherwise the
    number of physical cores is used.

    Raises
    ------
    ValueError
        If the environment variable is not a positive integer.

    """
    value = os.environ.get(WORKERS_ENV_VAR)
    if value:
        try:
            workers = int(value)
        except ValueError:
            raise ValueError(
                f"{WORKERS_ENV_VAR} must be a positive integer, got '{value}'."
            ) from None
        if workers < 1:
            raise ValueError(f"{WORKERS_ENV_VAR} must be >= 1, got {workers}.")
        return workers
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


def parallel_map(
    func: Callable[[Any], Any], items: Iterable[Any], workers: int = None
) -> list:
    """Apply ``func`` to all items, in order, using a process pool.

    With a single worker (or a single item) everything runs in the calling process,
    which keeps results independent of the pool.
    """
    items = list(items)
    if workers is None:
        workers = default_worker_count()
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(func, items))
