"""
A process pool shared by the parallel stages. Work is split into independent
items whose results are merged in submission order, so the outcome never depends
on the number of workers.
"""
import logging
import os
from asyncio import get_event_loop
from concurrent.futures import Executor, ProcessPoolExecutor
from functools import partial
from typing import Any, Callable, Iterable, List, Optional, TypeVar

from peierls.utils.settings import Settings

T = TypeVar("T")


def available_parallelism() -> int:
    """ Number of cores this process may run on """
    if hasattr(os, "sched_getaffinity"):
        return len(os.sched_getaffinity(0))

    return os.cpu_count() or 1


class WorkerPool:
    """
    Keeps track of the process pool. With a single worker everything runs inline
    in the calling process.
    """

    def __init__(self, threads: Optional[int] = None):
        threads = Settings.threads if threads is None else threads
        self.num_workers = threads if threads > 0 else available_parallelism()
        self.executor: Optional[Executor] = None

    def __enter__(self) -> "WorkerPool":
        self.acquire()
        return self

    def __exit__(self, *exc):
        self.release()

    def acquire(self):
        """ Create the process pool """
        if self.num_workers > 1 and self.executor is None:
            logging.info("Creating process pool with %d workers", self.num_workers)
            self.executor = ProcessPoolExecutor(self.num_workers)

    def release(self):
        """ Shut down the process pool """
        if self.executor is not None:
            logging.info("Shutting down executor")
            self.executor.shutdown()
            self.executor = None

    def map(self, fn: Callable[..., T], items: Iterable[Any]) -> List[T]:
        """ Apply fn to every item, results in item order """
        items = list(items)
        if self.executor is None or len(items) < 2:
            return [fn(item) for item in items]

        return list(self.executor.map(fn, items))

    async def run(self, fn: Callable[..., T], *args: Any, **kwargs: Any) -> T:
        """ Run a whole stage off the event loop """
        return await get_event_loop().run_in_executor(
            self.executor, partial(fn, *args, **kwargs)
        )

    def chunks(self, total: int) -> List[range]:
        """ Split range(total) into about four contiguous chunks per worker """
        count = max(1, min(total, 4 * self.num_workers))
        bounds = [total * i // count for i in range(count + 1)]
        return [range(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]


Workers = WorkerPool()
