"""Worker-count plumbing shared by the enumeration-heavy operations.

Chunks are always reduced in submission order, so results are identical
for every worker count (including 1).
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_THREADS = "PALEY_THREADS"


def resolve_threads(threads: int | None = None) -> int:
    """Explicit argument wins; PALEY_THREADS is the fallback; default 1."""
    if threads is None:
        env = os.environ.get(ENV_THREADS)
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    return threads


def map_chunks(fn: Callable[[T], R], chunks: Sequence[T], threads: int) -> list[R]:
    """Apply fn to every chunk, preserving chunk order in the result list."""
    if threads <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


def map_stream(fn: Callable[[T], R], items: Iterable[T], threads: int) -> Iterator[R]:
    """Lazy ordered map with at most 2*threads chunks in flight.

    Results come back in input order whatever the completion order, so
    downstream reductions see the same sequence for any worker count.
    """
    if threads <= 1:
        for item in items:
            yield fn(item)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending: deque = deque()
        for item in items:
            pending.append(pool.submit(fn, item))
            if len(pending) >= 2 * threads:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous half-open ranges."""
    parts = max(1, min(parts, total)) if total else 1
    step, rem = divmod(total, parts)
    out = []
    start = 0
    for i in range(parts):
        width = step + (1 if i < rem else 0)
        if width == 0:
            continue
        out.append((start, start + width))
        start += width
    return out
