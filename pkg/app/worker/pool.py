# app/worker/pool.py
"""
Process pool for independent subgame jobs.
"""
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@contextmanager
def worker_pool(workers: int) -> Iterator[Optional[Executor]]:
    """
    Yield a process pool when `workers > 1`, None otherwise. The pool is
    shut down on exit.
    """
    if workers <= 1:
        yield None
        return
    logger.info(f"Starting worker pool with {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        yield executor


def run_tasks(
    fn: Callable[[T], R],
    items: Iterable[T],
    workers: int = 1,
    executor: Optional[Executor] = None,
) -> List[R]:
    """
    Apply `fn` to every item, in a pool when one is given or `workers > 1`.
    Results come back in input order, so outputs never depend on the worker
    count.
    """
    items = list(items)
    if executor is not None:
        return list(executor.map(fn, items))
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with worker_pool(workers) as pool:
        return list(pool.map(fn, items))
