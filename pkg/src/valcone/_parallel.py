"""Order-preserving parallel map capped by ``VALCONE_THREADS``."""

import os
from concurrent.futures import ThreadPoolExecutor


def max_workers():
    raw = os.environ.get("VALCONE_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def pmap(fn, items):
    """``list(map(fn, items))``, run on a thread pool when allowed."""
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
