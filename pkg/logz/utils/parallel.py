"""Ordered parallel map over independent work items."""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Tuple, TypeVar

from logz.core.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply func to every item and return results in input order.

    Each item must carry its own random stream, so the result does not
    depend on the number of threads. numpy releases the GIL inside the
    vectorized kernels, which is where the chain blocks spend their time.

    Args:
        func: Work function
        items: Work items
        threads: Worker count (defaults to settings.THREADS)

    Returns:
        list: One result per item, in order
    """
    items = list(items)
    if threads is None:
        threads = get_settings().THREADS
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    workers = min(threads, len(items))
    logger.debug(f"Dispatching {len(items)} work items to {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def split_blocks(total: int, block_size: int) -> List[Tuple[int, int, int]]:
    """
    Split total chains into (block index, start, size) work items.

    Example:
        >>> split_blocks(5, 2)
        [(0, 0, 2), (1, 2, 2), (2, 4, 1)]
    """
    blocks = []
    start = 0
    index = 0
    while start < total:
        size = min(block_size, total - start)
        blocks.append((index, start, size))
        start += size
        index += 1
    return blocks
