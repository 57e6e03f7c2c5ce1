"""Optional thread fan-out, capped by the CATLAB_THREADS variable.

Work items are pure and independent; results are always collected in
input order, so the output is identical for any thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("CATLAB_THREADS", "1")
    try:
        count = int(raw)
    except ValueError:
        raise ValueError(f"CATLAB_THREADS={raw!r} is not an integer") from None
    return max(count, 1)


def ordered_map(fn, items):
    """map() preserving input order, threaded when CATLAB_THREADS > 1."""
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
