"""Thread-pool map capped by the ``GUINAND_THREADS`` environment variable."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    """Worker count from ``GUINAND_THREADS`` (0 or unset means ``os.cpu_count()``)."""
    raw = os.environ.get("GUINAND_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"GUINAND_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("GUINAND_THREADS must be nonnegative")
    return n or (os.cpu_count() or 1)


def pmap(func, items):
    """``list(map(func, items))``, run on a thread pool when it pays off."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
