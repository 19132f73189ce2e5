"""Chunked evaluation of point batches on a thread pool."""

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor, as_completed

from .errors import ValidationError

DEFAULT_CHUNK_SIZE = 65536


def chunk_bounds(total: int, chunk_size: int = DEFAULT_CHUNK_SIZE) -> list[tuple[int, int]]:
    """Split ``range(total)`` into consecutive half-open (start, stop) slices."""
    if chunk_size < 1:
        raise ValidationError(f"chunk_size must be at least 1, got {chunk_size}")
    return [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def run_chunked(
    work: Callable[[int, int], None],
    total: int,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> None:
    """Call ``work(start, stop)`` for every chunk of ``range(total)``.

    ``work`` must only write to its own slice of shared output arrays. numpy
    releases the GIL inside its ufuncs, so threads give real speedups on
    large chunks. The first exception raised by any chunk is re-raised.
    """
    if threads < 1:
        raise ValidationError(f"threads must be at least 1, got {threads}")
    bounds = chunk_bounds(total, chunk_size)
    if threads == 1 or len(bounds) <= 1:
        for start, stop in bounds:
            work(start, stop)
        return

    with ThreadPoolExecutor(max_workers=min(threads, len(bounds))) as executor:
        futures = [executor.submit(work, start, stop) for start, stop in bounds]
        for future in as_completed(futures):
            future.result()
