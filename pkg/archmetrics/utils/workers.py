import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from archmetrics import settings

log = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
    func: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None
) -> List[R]:
    """
    Apply `func` to every item on a thread pool.

    Results come back in the order of `items` no matter which thread finished
    first, so callers can reduce them deterministically. With one worker (or
    one item) everything runs inline.
    """
    workers = settings.WORKERS if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    def run(item: T) -> R:
        try:
            return func(item)
        except Exception:
            log.exception(f"Worker failed on {item!r}")
            raise

    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(run, items))
