"""Deterministic, optionally threaded evaluation of independent grid nodes.

The env var SPECRANGE_THREADS caps the worker count; absent or 1 means
sequential. Results are always assembled in input order, so threaded and
sequential runs produce identical output.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "SPECRANGE_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_THREADS, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def grid_map(fn, items):
    """Map fn over items, preserving order; threaded when configured."""
    items = list(items)
    workers = thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
